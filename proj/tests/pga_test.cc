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

#include "authq/pga.h"

#include <gtest/gtest.h>

#include <numbers>

#include "authq/decompose.h"
#include "authq/errors.h"
#include "authq/keying.h"
#include "authq/simulator.h"
#include "oracle.h"

using namespace authq;

namespace {

Mat2 random_unitary(std::mt19937_64 &rng) {
    auto m = oracle::matrix_of(oracle::random_sequence(1, 8, rng));
    return m;
}

ProgramSpec random_spec(std::size_t k, std::size_t m, std::size_t n, std::uint64_t seed, std::size_t length = 10) {
    std::mt19937_64 rng(seed);
    ProgramSpec spec;
    spec.k = k;
    spec.m = m;
    spec.n = n;
    spec.seed = seed;
    for (std::size_t i = 0; i < (std::size_t{1} << k); i++) {
        spec.programs.push_back(oracle::random_sequence(n, length, rng));
    }
    sample_dummy_scramblers(spec, 6);
    return spec;
}

}  // namespace

TEST(Zyz, reconstructs_random_unitaries) {
    std::mt19937_64 rng(1);
    for (int t = 0; t < 200; t++) {
        Mat2 u = random_unitary(rng);
        auto a = zyz_decompose(u);
        Matrix r = std::exp(Complex(0, a.phase)) * oracle::single(GateKind::RZ, a.beta) *
                   oracle::single(GateKind::RY, a.gamma) * oracle::single(GateKind::RZ, a.delta);
        ASSERT_LT((r - Matrix(u)).cwiseAbs().maxCoeff(), 1e-10);
    }
    // Diagonal and anti-diagonal edge cases.
    for (auto u : {Mat2(Mat2::Identity()), Mat2(oracle::single(GateKind::X, 0)), Mat2(oracle::single(GateKind::RZ, 1.3))}) {
        std::vector<Gate> gates;
        append_single_qubit(gates, u, 0);
        EXPECT_LT((oracle::matrix_of(GateSequence(1, gates)) - Matrix(u)).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(UnitarySqrt, squares_back) {
    std::mt19937_64 rng(2);
    for (int t = 0; t < 100; t++) {
        Mat2 u = random_unitary(rng);
        Mat2 v = unitary_sqrt(u);
        ASSERT_LT((v * v - u).cwiseAbs().maxCoeff(), 1e-10);
        ASSERT_LT((v.adjoint() * v - Mat2::Identity()).cwiseAbs().maxCoeff(), 1e-10);
    }
}

TEST(Toffoli, exact_matrix) {
    std::vector<Gate> gates;
    append_toffoli(gates, 0, 1, 2);
    auto m = oracle::matrix_of(GateSequence(3, gates));
    auto expected = oracle::controlled(3, {0, 1}, 2, oracle::single(GateKind::X, 0));
    EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-12);
    // Controls below the target too.
    gates.clear();
    append_toffoli(gates, 2, 0, 1);
    m = oracle::matrix_of(GateSequence(3, gates));
    expected = oracle::controlled(3, {2, 0}, 1, oracle::single(GateKind::X, 0));
    EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(MultiControlled, exact_against_oracle) {
    std::mt19937_64 rng(3);
    for (std::size_t nc = 0; nc <= 4; nc++) {
        for (int t = 0; t < 5; t++) {
            std::size_t n = nc + 1;
            std::vector<std::size_t> order(n);
            for (std::size_t q = 0; q < n; q++) {
                order[q] = q;
            }
            std::shuffle(order.begin(), order.end(), rng);
            std::vector<std::size_t> controls(order.begin(), order.begin() + static_cast<long>(nc));
            std::size_t target = order.back();
            Mat2 u = t == 0 ? Mat2(oracle::single(GateKind::X, 0)) : random_unitary(rng);
            std::vector<Gate> gates;
            append_multi_controlled(gates, controls, target, u);
            auto m = oracle::matrix_of(GateSequence(n, gates));
            auto expected = oracle::controlled(n, controls, target, u);
            ASSERT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-9) << "controls=" << nc << " trial=" << t;
        }
    }
}

TEST(Controlled, global_phase_becomes_relative) {
    for (std::size_t nc : {1u, 2u, 3u}) {
        std::vector<std::size_t> controls;
        for (std::size_t q = 0; q < nc; q++) {
            controls.push_back(q);
        }
        std::vector<Gate> gates;
        append_controlled(gates, controls, Gate::gphase(0.7));
        auto m = oracle::matrix_of(GateSequence(nc, gates));
        Matrix expected = Matrix::Identity(m.rows(), m.cols());
        expected(m.rows() - 1, m.cols() - 1) = std::exp(Complex(0, 0.7));
        EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(ControlledOnValue, k1_value1_x_is_cnot) {
    auto s = controlled_on_value(GateSequence(1, {Gate::x(0)}), 1, 1);
    EXPECT_LT((oracle::matrix_of(s) - oracle::cnot4()).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(ControlledOnValue, k2_value0_fires_only_on_00) {
    auto s = controlled_on_value(GateSequence(1, {Gate::x(0)}), 2, 0);
    auto m = oracle::matrix_of(s);
    for (std::uint64_t col = 0; col < 8; col++) {
        std::uint64_t expected = (col >> 1) == 0 ? col ^ 1 : col;
        for (std::uint64_t row = 0; row < 8; row++) {
            EXPECT_NEAR(std::abs(m(row, col)), row == expected ? 1.0 : 0.0, 1e-12) << row << "," << col;
        }
    }
}

TEST(ControlledOnValue, empty_is_identity_and_range_checked) {
    auto s = controlled_on_value(GateSequence(2), 2, 3);
    EXPECT_TRUE(s.empty());
    EXPECT_THROW(controlled_on_value(GateSequence(1, {Gate::x(0)}), 2, 4), ArgumentError);
}

TEST(ControlledOnValue, random_sequences_every_value) {
    std::mt19937_64 rng(4);
    for (std::size_t k = 1; k <= 3; k++) {
        auto seq = oracle::random_sequence(2, 8, rng);
        for (std::uint64_t v = 0; v < (std::uint64_t{1} << k); v++) {
            auto m = oracle::matrix_of(controlled_on_value(seq, k, v));
            std::vector<oracle::M> blocks(std::size_t{1} << k, oracle::M::Identity(4, 4));
            blocks[v] = oracle::matrix_of(seq);
            auto expected = oracle::block_dispatch(blocks, oracle::M::Identity(1, 1));
            ASSERT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-9) << "k=" << k << " value=" << v;
        }
    }
}

TEST(BuildPga, k1_m1_identity_and_x_is_cnot) {
    ProgramSpec spec;
    spec.k = 1;
    spec.m = 1;
    spec.n = 1;
    spec.programs = {GateSequence(1), GateSequence(1, {Gate::x(0)})};
    auto m = to_matrix(build_pga(spec));
    EXPECT_TRUE(equal_up_to_phase(m, oracle::cnot4(), 1e-12).equal);
}

TEST(BuildPga, identity_family_is_identity) {
    ProgramSpec spec;
    spec.k = 2;
    spec.m = 2;
    spec.n = 2;
    spec.programs.assign(4, GateSequence(2));
    auto m = to_matrix(build_pga(spec));
    EXPECT_TRUE(equal_up_to_phase(m, Matrix::Identity(m.rows(), m.cols())).equal);
}

TEST(BuildPga, matches_block_oracle) {
    for (std::uint64_t seed : {10u, 11u, 12u}) {
        auto spec = random_spec(1 + seed % 2, 3, 2, seed);
        std::vector<oracle::M> blocks;
        for (const auto &p : spec.programs) {
            blocks.push_back(oracle::matrix_of(p));
        }
        oracle::M dummy = oracle::matrix_of(spec.m2) * oracle::matrix_of(spec.m1);
        auto expected = oracle::block_dispatch(blocks, dummy);
        auto m = to_matrix(build_pga(spec));
        EXPECT_LT((m - expected).cwiseAbs().maxCoeff(), 1e-9) << "seed " << seed;
    }
}

TEST(BuildPga, contract_on_random_product_inputs) {
    auto spec = random_spec(1, 3, 2, 21);
    auto g = build_pga(spec);
    Rng rng(99);
    std::uniform_int_distribution<std::uint64_t> index(0, 1);
    for (int t = 0; t < 50; t++) {
        auto i = index(rng);
        auto d = StateVector::random(spec.dummy_qubits(), rng);
        auto phi = StateVector::random(spec.n, rng);
        auto in = tensor(tensor(StateVector::basis(spec.k, i), d), phi);
        auto expected = tensor(tensor(StateVector::basis(spec.k, i), apply(spec.m2, apply(spec.m1, d))),
                               apply(spec.programs[i], phi));
        ASSERT_GE(fidelity(apply(g, in), expected), 1 - 1e-9);
    }
}

TEST(BuildPga, preserves_index_register) {
    auto spec = random_spec(2, 3, 2, 5);
    auto g = build_pga(spec);
    Rng rng(7);
    for (std::uint64_t i = 0; i < 4; i++) {
        auto in = tensor(tensor(StateVector::basis(2, i), StateVector::random(1, rng)), StateVector::random(2, rng));
        auto out = apply(g, in);
        const std::size_t keep[] = {0, 1};
        auto rho = partial_trace(out, keep);
        EXPECT_NEAR(rho.matrix()(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)).real(), 1.0, 1e-9);
    }
}

TEST(BuildPga, budget_and_width_errors) {
    auto spec = random_spec(2, 2, 2, 1, 20);
    spec.gate_budget = 30;
    EXPECT_THROW(build_pga(spec), BudgetError);
    spec.gate_budget = kDefaultGateBudget;
    spec.programs.pop_back();
    EXPECT_THROW(build_pga(spec), ArgumentError);
    auto bad = random_spec(1, 2, 2, 1);
    bad.programs[0] = GateSequence(3);
    EXPECT_THROW(build_pga(bad), WidthError);
    bad = random_spec(2, 1, 1, 1);
    EXPECT_THROW(bad.validate(), WidthError);
}

TEST(Lint, flags_wide_index_and_no_dummies) {
    ProgramSpec spec;
    spec.k = 6;
    spec.m = 6;
    spec.n = 1;
    auto warnings = lint(spec);
    EXPECT_EQ(warnings.size(), 2u);
    spec.k = 1;
    spec.m = 2;
    EXPECT_TRUE(lint(spec).empty());
}
