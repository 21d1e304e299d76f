// Copyright 2026 The authq Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "authq/reduction.h"

#include <gtest/gtest.h>

#include <numbers>

#include "authq/errors.h"
#include "authq/keying.h"
#include "oracle.h"

using namespace authq;

namespace {

// |0><0| (x) I + |1><1| (x) U.
oracle::M controlled_block(const GateSequence &x) {
    return oracle::block_dispatch({oracle::M::Identity(Eigen::Index{1} << x.num_qubits(), Eigen::Index{1} << x.num_qubits()),
                                   oracle::matrix_of(x)},
                                  oracle::M::Identity(1, 1));
}

ShuffleConfig light_shuffle(std::uint64_t seed) {
    ShuffleConfig cfg;
    cfg.steps = 60;
    cfg.seed = seed;
    return cfg;
}

GateSequence random_single(std::mt19937_64 &rng) {
    auto s = oracle::random_sequence(1, 6, rng);
    return s;
}

GateSequence t_gate() { return GateSequence(1, {Gate::rz(0, std::numbers::pi / 4), Gate::gphase(std::numbers::pi / 8)}); }

}  // namespace

TEST(Controlize, examples) {
    auto cx = to_matrix(controlize(GateSequence(1, {Gate::x(0)})));
    EXPECT_LT((cx - oracle::cnot4()).cwiseAbs().maxCoeff(), 1e-12);

    auto empty = controlize(GateSequence(2));
    EXPECT_EQ(empty.num_qubits(), 3u);
    EXPECT_TRUE(empty.empty());

    auto p = to_matrix(controlize(GateSequence(1, {Gate::gphase(std::numbers::pi / 4)})));
    oracle::M expected = oracle::M::Identity(4, 4);
    expected(2, 2) = expected(3, 3) = std::exp(Complex(0, std::numbers::pi / 4));
    EXPECT_LT((p - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Controlize, block_structure_on_random_sequences) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 40; t++) {
        auto x = oracle::random_sequence(1 + t % 4, 12, rng);
        auto z = controlize(x);
        ASSERT_LE(z.size(), 64 * x.size());
        ASSERT_LT((oracle::matrix_of(z) - controlled_block(x)).cwiseAbs().maxCoeff(), 1e-9) << "trial " << t;
    }
}

TEST(ModifiedInstance, examples) {
    ShuffleConfig cfg = light_shuffle(1);
    auto i0 = build_modified_instance(GateSequence(1), GateSequence(1), GateSequence(1), cfg);
    EXPECT_TRUE(exact_nonidentity_check(i0.built).is_identity);
    EXPECT_TRUE(exact_nonidentity_check(i0.shuffled).is_identity);

    auto i1 = build_modified_instance(GateSequence(1, {Gate::x(0)}), GateSequence(1), GateSequence(1), cfg);
    EXPECT_LT(oracle::phase_distance(oracle::matrix_of(i1.built), oracle::cnot4()), 1e-12);

    GateSequence h(1, {Gate::h(0)});
    auto ih = build_modified_instance(h, h, h, cfg);
    auto hi = oracle::kron(oracle::single(GateKind::H, 0), oracle::M::Identity(2, 2));
    EXPECT_LT((oracle::matrix_of(ih.built) - hi * controlled_block(h) * hi).cwiseAbs().maxCoeff(), 1e-12);
    EXPECT_LT(oracle::phase_distance(oracle::matrix_of(ih.shuffled), oracle::matrix_of(ih.built)), 1e-8);

    EXPECT_THROW(build_modified_instance(h, GateSequence(2), h, cfg), WidthError);
}

TEST(ModifiedInstance, random_sandwich_matches_oracle) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; t++) {
        auto x = oracle::random_sequence(2, 8, rng);
        auto vl = random_single(rng);
        auto vr = random_single(rng);
        auto inst = build_modified_instance(x, vl, vr, light_shuffle(static_cast<std::uint64_t>(t)));
        auto l = oracle::kron(oracle::matrix_of(vl), oracle::M::Identity(4, 4));
        auto r = oracle::kron(oracle::matrix_of(vr), oracle::M::Identity(4, 4));
        ASSERT_LT((oracle::matrix_of(inst.built) - l * controlled_block(x) * r).cwiseAbs().maxCoeff(), 1e-9);
        ASSERT_LT(oracle::phase_distance(oracle::matrix_of(inst.shuffled), oracle::matrix_of(inst.built)), 1e-8);
    }
}

TEST(InstanceKeys, definitions) {
    GateSequence h(1, {Gate::h(0)});
    EXPECT_NEAR(fidelity(instance_key(h, 0), apply(h, StateVector::basis(1, 0))), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(instance_plus_key(h), StateVector::basis(1, 0)), 1.0, 1e-15);
    EXPECT_THROW(instance_key(h, 2), ArgumentError);
}

TEST(NonIdentityCheck, examples) {
    GateSequence t8(1);
    for (int i = 0; i < 8; i++) {
        t8.append(t_gate().gates());
    }
    auto v = exact_nonidentity_check(t8);
    EXPECT_TRUE(v.is_identity);
    EXPECT_NEAR(*v.theta, 0.0, 1e-9);

    // Eight bare RZ(pi/4) make RZ(2 pi) = -I.
    GateSequence rz8(1);
    for (int i = 0; i < 8; i++) {
        rz8.push_back(Gate::rz(0, std::numbers::pi / 4));
    }
    v = exact_nonidentity_check(rz8);
    EXPECT_TRUE(v.is_identity);
    EXPECT_NEAR(*v.theta, std::numbers::pi, 1e-9);

    v = exact_nonidentity_check(GateSequence(1, {Gate::h(0)}));
    EXPECT_FALSE(v.is_identity);
    EXPECT_FALSE(v.theta.has_value());
    EXPECT_NEAR(v.residual, 1.0, 1e-12);

    v = exact_nonidentity_check(GateSequence(2, {Gate::cnot(0, 1), Gate::cnot(0, 1), Gate::gphase(1.234)}));
    EXPECT_TRUE(v.is_identity);
    EXPECT_NEAR(*v.theta, 1.234, 1e-12);

    EXPECT_FALSE(exact_nonidentity_check(GateSequence(2, {Gate::cnot(0, 1)})).is_identity);
    EXPECT_THROW(exact_nonidentity_check(GateSequence(kMaxMatrixQubits + 1)), BudgetError);
}

TEST(NonIdentityCheck, negative_phase_lands_in_range) {
    auto v = exact_nonidentity_check(GateSequence(1, {Gate::gphase(-0.5)}));
    ASSERT_TRUE(v.is_identity);
    EXPECT_NEAR(*v.theta, 2 * std::numbers::pi - 0.5, 1e-12);
}

TEST(ForgedKey, honest_program_validates_itself) {
    std::mt19937_64 rng(3);
    auto x = oracle::random_sequence(1, 6, rng);
    auto vl = random_single(rng);
    auto vr = random_single(rng);
    auto inst = build_modified_instance(x, vl, vr, light_shuffle(3));
    std::vector<StateVector> keys{instance_key(vr, 0), instance_key(vr, 1)};
    std::vector<GateSequence> programs{GateSequence(1), x};
    auto c = check_forged_key(inst.shuffled, keys, programs);
    EXPECT_TRUE(c.valid) << c.reason;
    EXPECT_TRUE(c.orthonormal);
}

TEST(ForgedKey, non_orthogonal_keys_rejected) {
    GateSequence f(2, {Gate::cnot(0, 1)});
    Vector a(2), b(2);
    a << 1, 0;
    b << 0.5, std::sqrt(0.75);
    std::vector<StateVector> keys{StateVector(1, a), StateVector(1, b)};
    std::vector<GateSequence> programs{GateSequence(1), GateSequence(1, {Gate::x(0)})};
    auto c = check_forged_key(f, keys, programs);
    EXPECT_FALSE(c.valid);
    EXPECT_FALSE(c.orthonormal);
    EXPECT_NEAR(c.worst_overlap_error, 0.5, 1e-12);
}

TEST(ForgedKey, swapped_programs_rejected) {
    GateSequence f(2, {Gate::cnot(0, 1)});
    std::vector<StateVector> keys{StateVector::basis(1, 0), StateVector::basis(1, 1)};
    std::vector<GateSequence> right{GateSequence(1), GateSequence(1, {Gate::x(0)})};
    std::vector<GateSequence> swapped{GateSequence(1, {Gate::x(0)}), GateSequence(1)};
    EXPECT_TRUE(validate_forged_key(f, keys, right));
    auto c = check_forged_key(f, keys, swapped);
    EXPECT_FALSE(c.valid);
    EXPECT_LT(c.worst_fidelity, 1 - 1e-9);
}

TEST(ForgedKey, entangling_key_rejected_and_wider_keys_accepted) {
    // A two-qubit forged key: the extra qubit rides along untouched.
    GateSequence f(3, {Gate::cnot(0, 2)});
    std::vector<StateVector> keys{StateVector::basis(2, 0), StateVector::basis(2, 2)};
    std::vector<GateSequence> programs{GateSequence(1), GateSequence(1, {Gate::x(0)})};
    EXPECT_TRUE(validate_forged_key(f, keys, programs));
    std::vector<StateVector> superposed{instance_key(GateSequence(1, {Gate::h(0)}), 0),
                                        instance_key(GateSequence(1, {Gate::h(0)}), 1)};
    auto c = check_forged_key(GateSequence(2, {Gate::cnot(0, 1)}), superposed, programs);
    EXPECT_FALSE(c.valid);
    EXPECT_THROW(check_forged_key(GateSequence(4), keys, programs), WidthError);
}

TEST(Attacker, unitary_and_records_keys) {
    std::mt19937_64 rng(4);
    auto vr = random_single(rng);
    auto inst = build_modified_instance(GateSequence(1, {Gate::x(0)}), random_single(rng), vr, light_shuffle(4));
    auto w = plant_whitebox_attacker(inst);
    EXPECT_EQ(w.width(), 1 + kDefaultAncillaQubits);
    EXPECT_LT(unitarity_residual(to_matrix(w.unitary)), 1e-9);

    auto forged = extracted_forged_keys(inst, w);
    ASSERT_EQ(forged.size(), 2u);
    EXPECT_GE(fidelity(forged[0], instance_key(vr, 0)), 1 - 1e-9);
    EXPECT_GE(fidelity(forged[1], instance_key(vr, 1)), 1 - 1e-9);
    std::vector<GateSequence> programs{GateSequence(1), inst.base};
    EXPECT_TRUE(validate_forged_key(inst.shuffled, forged, programs));
    EXPECT_NEAR(ancilla_overlap(inst, w), 0.0, 1e-9);
    EXPECT_THROW(keyed_attacker(vr, 1), WidthError);
}

TEST(Attacker, channel_is_trace_preserving) {
    std::mt19937_64 rng(5);
    auto w = keyed_attacker(random_single(rng));
    Rng srng(6);
    for (int t = 0; t < 20; t++) {
        auto a = StateVector::random(1, srng);
        auto b = StateVector::random(1, srng);
        std::uniform_real_distribution<double> u(0, 1);
        double p = u(srng);
        DensityMatrix rho(1, p * DensityMatrix::pure(a).matrix() + (1 - p) * DensityMatrix::pure(b).matrix());
        auto out = apply_channel(w, rho);
        EXPECT_NEAR(std::abs(out.trace() - Complex(1.0)), 0, 1e-9);
        out.validate();
    }
}

TEST(Distinguish, planted_attacker_pattern_on_nonidentity) {
    std::mt19937_64 rng(7);
    for (int t = 0; t < 20; t++) {
        auto x = oracle::random_sequence(1, 5, rng);
        auto vl = random_single(rng);
        auto vr = random_single(rng);
        auto inst = build_modified_instance(x, vl, vr, light_shuffle(static_cast<std::uint64_t>(t)));
        auto w = plant_whitebox_attacker(inst);
        auto r = distinguish(inst, w);
        EXPECT_NEAR(r.p_basis, 1.0, 1e-9);
        EXPECT_NEAR(r.p_plus, 0.5, 1e-9);
        EXPECT_EQ(r.verdict, InstanceClass::g1);
        // <phi_i|Gamma(phi_j)|phi_i> = delta_ij.
        for (int i = 0; i < 2; i++) {
            for (int j = 0; j < 2; j++) {
                auto out = apply_channel(w, DensityMatrix::pure(instance_key(vr, j)));
                EXPECT_NEAR(fidelity(out, instance_key(vr, i)), i == j ? 1.0 : 0.0, 1e-9);
            }
        }
    }
}

TEST(Distinguish, identity_instance_rekeying_swaps_pattern) {
    GateSequence h(1, {Gate::h(0)});
    auto inst = build_modified_instance(GateSequence(1), h, h, light_shuffle(8));
    auto keyed_h = distinguish(inst, keyed_attacker(h));
    // phi_0 = |+>, phi_+ = |0>.
    EXPECT_NEAR(keyed_h.p_basis, 1.0, 1e-9);
    EXPECT_NEAR(keyed_h.p_plus, 0.5, 1e-9);
    auto keyed_i = distinguish(inst, keyed_attacker(GateSequence(1)));
    EXPECT_NEAR(keyed_i.p_basis, 0.5, 1e-9);
    EXPECT_NEAR(keyed_i.p_plus, 1.0, 1e-9);
    EXPECT_NE(keyed_h.verdict, keyed_i.verdict);
}

TEST(StolenKeys, mixed_keys_give_identical_statistics) {
    std::mt19937_64 rng(9);
    auto inst = build_modified_instance(GateSequence(1, {Gate::h(0)}), random_single(rng), random_single(rng),
                                        light_shuffle(9));
    auto w = plant_whitebox_attacker(inst);
    for (std::size_t stolen = 0; stolen <= 3; stolen++) {
        for (std::uint64_t seed = 0; seed < 3; seed++) {
            auto honest = distinguish_with_stolen_keys(inst, w, stolen, StolenKeyModel::honest_mixture, seed);
            auto mixed = distinguish_with_stolen_keys(inst, w, stolen, StolenKeyModel::maximally_mixed, seed);
            EXPECT_NEAR(honest.p_basis, mixed.p_basis, 1e-9);
            EXPECT_NEAR(honest.p_plus, mixed.p_plus, 1e-9);
        }
    }
    auto none = distinguish_with_stolen_keys(inst, w, 0, StolenKeyModel::honest_mixture, 0);
    auto plain = distinguish(inst, w);
    EXPECT_NEAR(none.p_basis, plain.p_basis, 1e-12);
    EXPECT_NEAR(none.p_plus, plain.p_plus, 1e-12);
    EXPECT_THROW(distinguish_with_stolen_keys(inst, w, 7, StolenKeyModel::maximally_mixed, 0), BudgetError);
}
