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

#include "authq/keying.h"

#include <gtest/gtest.h>

#include <numbers>

#include "authq/errors.h"
#include "authq/pga.h"
#include "oracle.h"

using namespace authq;

namespace {

struct Instance {
    ProgramSpec spec;
    KeySecrets secrets;
    GateSequence xgp{1};
};

Instance make_instance(std::size_t k, std::size_t m, std::size_t n, std::uint64_t seed) {
    Instance inst;
    std::mt19937_64 rng(seed);
    inst.spec.k = k;
    inst.spec.m = m;
    inst.spec.n = n;
    inst.spec.seed = seed;
    for (std::size_t i = 0; i < (std::size_t{1} << k); i++) {
        inst.spec.programs.push_back(oracle::random_sequence(n, 12, rng));
    }
    sample_dummy_scramblers(inst.spec, 6);
    inst.secrets = make_key_secrets(m, seed + 1000);
    inst.xgp = encode(build_pga(inst.spec), inst.secrets);
    return inst;
}

}  // namespace

TEST(SampleRandomSequence, empty_and_deterministic) {
    Rng rng(1);
    const std::size_t q[] = {0, 1};
    EXPECT_TRUE(sample_random_sequence(q, 2, 0, rng).empty());
    Rng a(42), b(42);
    EXPECT_EQ(sample_random_sequence(q, 2, 30, a), sample_random_sequence(q, 2, 30, b));
    EXPECT_THROW(sample_random_sequence({}, 2, 3, rng), ArgumentError);
}

TEST(SampleRandomSequence, restricted_to_qubits_and_unitary) {
    Rng rng(3);
    const std::size_t q[] = {1, 3};
    for (int t = 0; t < 1000; t++) {
        auto s = sample_random_sequence(q, 4, 30, rng);
        for (const auto &g : s.gates()) {
            for (auto x : g.targets()) {
                ASSERT_TRUE(x == 1 || x == 3);
            }
            if (kind_has_angle(g.kind)) {
                ASSERT_GE(g.angle, 0.0);
                ASSERT_LT(g.angle, 2 * std::numbers::pi);
            }
        }
    }
    const std::size_t two[] = {0, 1};
    for (int t = 0; t < 1000; t++) {
        ASSERT_LT(unitarity_residual(to_matrix(sample_random_sequence(two, 2, 30, rng))), 1e-9);
    }
}

TEST(Encode, empty_secrets_leave_program_unchanged) {
    KeySecrets s{GateSequence(1), GateSequence(1), 0};
    GateSequence g(2, {Gate::cnot(0, 1)});
    EXPECT_EQ(encode(g, s), g);
}

TEST(Encode, hadamard_toy) {
    KeySecrets s{GateSequence(1, {Gate::h(0)}), GateSequence(1, {Gate::h(0)}), 0};
    auto m = to_matrix(encode(GateSequence(2, {Gate::cnot(0, 1)}), s));
    auto hi = oracle::kron(oracle::single(GateKind::H, 0), oracle::M::Identity(2, 2));
    EXPECT_LT((m - hi * oracle::cnot4() * hi).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(Encode, width_mismatch) {
    KeySecrets s{GateSequence(2), GateSequence(3), 0};
    EXPECT_THROW(encode(GateSequence(4), s), WidthError);
    auto ok = make_key_secrets(2, 1);
    EXPECT_THROW(encode(GateSequence(2), ok), WidthError);
}

TEST(IssueKey, examples) {
    KeySecrets empty{GateSequence(2), GateSequence(2), 0};
    EXPECT_NEAR(fidelity(issue_key(0, empty, 2, 1).state, StateVector::basis(2, 0)), 1.0, 1e-15);
    EXPECT_NEAR(fidelity(issue_key(1, empty, 2, 1).state, StateVector::basis(2, 2)), 1.0, 1e-15);

    KeySecrets h{GateSequence(1), GateSequence(1, {Gate::h(0)}), 0};
    auto key = issue_key(0, h, 1, 1);
    EXPECT_NEAR(std::abs(key.state.amplitudes()[0] - 1 / std::numbers::sqrt2), 0, 1e-15);
    EXPECT_NEAR(std::abs(key.state.amplitudes()[1] - 1 / std::numbers::sqrt2), 0, 1e-15);
    EXPECT_EQ(key.issued_index, 0u);
    EXPECT_FALSE(key.user_copy().issued_index.has_value());

    EXPECT_THROW(issue_key(2, h, 1, 1), ArgumentError);
    EXPECT_THROW(issue_key(0, h, 2, 1), WidthError);
}

TEST(IssueKey, orthonormal) {
    auto secrets = make_key_secrets(3, 8);
    for (std::uint64_t i = 0; i < 4; i++) {
        for (std::uint64_t j = 0; j < 4; j++) {
            auto ip = inner(issue_key(i, secrets, 3, 2).state, issue_key(j, secrets, 3, 2).state);
            EXPECT_NEAR(std::abs(ip), i == j ? 1.0 : 0.0, 1e-9);
        }
    }
}

TEST(Run, identity_family_returns_input) {
    ProgramSpec spec;
    spec.k = 1;
    spec.m = 2;
    spec.n = 2;
    spec.programs.assign(2, GateSequence(2));
    sample_dummy_scramblers(spec, 4);
    auto secrets = make_key_secrets(2, 3);
    auto xgp = encode(build_pga(spec), secrets);
    Rng rng(1);
    auto phi = StateVector::random(2, rng);
    auto r = run(xgp, issue_key(1, secrets, 2, 1).state, phi);
    ASSERT_FALSE(r.entangled());
    EXPECT_GE(fidelity(*r.output, phi), 1 - 1e-9);
}

TEST(Run, honest_key_applies_program) {
    auto inst = make_instance(1, 3, 2, 77);
    Rng rng(5);
    for (std::uint64_t i = 0; i < 2; i++) {
        auto key = issue_key(i, inst.secrets, 3, 1);
        for (int t = 0; t < 50; t++) {
            auto phi = StateVector::random(2, rng);
            auto r = run(inst.xgp, key.state, phi);
            ASSERT_FALSE(r.entangled());
            Vector expected = oracle::matrix_of(inst.spec.programs[i]) * phi.amplitudes();
            ASSERT_GE(std::norm(expected.dot(r.output->amplitudes())), 1 - 1e-9);
            // Joint output is reproduced exactly by the factors.
            ASSERT_LT((tensor(*r.used_key, *r.output).amplitudes() - r.joint.amplitudes()).norm(), 1e-9);
        }
    }
}

TEST(Run, used_key_independent_of_input) {
    auto inst = make_instance(1, 3, 2, 78);
    Rng rng(6);
    auto key = issue_key(1, inst.secrets, 3, 1);
    auto first = run(inst.xgp, key.state, StateVector::random(2, rng));
    auto second = run(inst.xgp, key.state, StateVector::random(2, rng));
    EXPECT_GE(fidelity(*first.used_key, *second.used_key), 1 - 1e-9);
}

TEST(Run, random_wrong_key_entangles) {
    auto inst = make_instance(1, 3, 2, 79);
    Rng rng(7);
    int entangled = 0;
    for (int t = 0; t < 20; t++) {
        auto r = run(inst.xgp, StateVector::random(3, rng), StateVector::random(2, rng));
        EXPECT_LE(r.purity, 1 + 1e-12);
        entangled += r.entangled();
    }
    EXPECT_GE(entangled, 18);
}

TEST(Run, width_mismatch) {
    auto inst = make_instance(1, 2, 1, 1);
    EXPECT_THROW(run(inst.xgp, StateVector::basis(2, 0), StateVector::basis(2, 0)), WidthError);
}

TEST(Recycle, round_trip_restores_key_and_input) {
    auto inst = make_instance(1, 3, 2, 80);
    Rng rng(8);
    for (std::uint64_t i = 0; i < 2; i++) {
        auto key = issue_key(i, inst.secrets, 3, 1);
        auto phi = StateVector::random(2, rng);
        auto r = run(inst.xgp, key.state, phi);
        auto back = recycle(inst.xgp, *r.used_key, *r.output);
        ASSERT_FALSE(back.entangled());
        EXPECT_GE(fidelity(*back.used_key, key.state), 1 - 1e-9);
        EXPECT_GE(fidelity(*back.output, phi), 1 - 1e-9);
        EXPECT_LT((back.joint.amplitudes() - tensor(key.state, phi).amplitudes()).norm(), 1e-9);
    }
}

TEST(Recycle, applies_inverse_program) {
    auto inst = make_instance(1, 3, 2, 81);
    Rng rng(9);
    for (std::uint64_t i = 0; i < 2; i++) {
        auto key = issue_key(i, inst.secrets, 3, 1);
        auto used = *run(inst.xgp, key.state, StateVector::basis(2, 0)).used_key;
        auto psi = StateVector::random(2, rng);
        auto r = recycle(inst.xgp, used, psi);
        ASSERT_FALSE(r.entangled());
        Vector expected = oracle::matrix_of(inst.spec.programs[i]).adjoint() * psi.amplitudes();
        EXPECT_GE(std::norm(expected.dot(r.output->amplitudes())), 1 - 1e-9);
        EXPECT_GE(fidelity(*r.used_key, key.state), 1 - 1e-9);
    }
}
