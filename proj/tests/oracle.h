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

#ifndef AUTHQ_TESTS_ORACLE_H
#define AUTHQ_TESTS_ORACLE_H

// Test-only reference implementations. These build every gate as an explicit
// Kronecker product (or permutation matrix) and multiply dense matrices, so
// they share nothing with the row-update kernels in the simulator.

#include <complex>
#include <numbers>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "authq/sequence.h"

namespace authq::oracle {

using C = std::complex<double>;
using M = Eigen::MatrixXcd;

inline M kron(const M &a, const M &b) {
    M out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index r = 0; r < a.rows(); r++) {
        for (Eigen::Index c = 0; c < a.cols(); c++) {
            out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
        }
    }
    return out;
}

inline M single(GateKind kind, double theta) {
    M m(2, 2);
    const C i(0, 1);
    switch (kind) {
        case GateKind::H:
            m << 1, 1, 1, -1;
            return m / std::sqrt(2.0);
        case GateKind::X:
            m << 0, 1, 1, 0;
            return m;
        case GateKind::RZ:
            m << std::exp(-i * theta / 2.0), 0, 0, std::exp(i * theta / 2.0);
            return m;
        case GateKind::RY:
            m << std::cos(theta / 2), -std::sin(theta / 2), std::sin(theta / 2), std::cos(theta / 2);
            return m;
        default:
            return M::Identity(2, 2);
    }
}

/// Full 2^n x 2^n matrix of one gate; qubit 0 is the leftmost Kronecker factor.
inline M embed_gate(const Gate &g, std::size_t n) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    if (g.kind == GateKind::GPHASE) {
        return std::exp(C(0, g.angle)) * M::Identity(dim, dim);
    }
    if (g.kind == GateKind::CNOT) {
        M p = M::Zero(dim, dim);
        for (Eigen::Index col = 0; col < dim; col++) {
            bool c = (col >> (n - 1 - g.qubits[0])) & 1;
            Eigen::Index row = c ? col ^ (Eigen::Index{1} << (n - 1 - g.qubits[1])) : col;
            p(row, col) = 1;
        }
        return p;
    }
    M out = M::Identity(1, 1);
    for (std::size_t q = 0; q < n; q++) {
        out = kron(out, q == g.qubits[0] ? single(g.kind, g.angle) : M::Identity(2, 2));
    }
    return out;
}

inline M matrix_of(const GateSequence &s) {
    const Eigen::Index dim = Eigen::Index{1} << s.num_qubits();
    M u = M::Identity(dim, dim);
    for (const auto &g : s.gates()) {
        u = embed_gate(g, s.num_qubits()) * u;
    }
    return u;
}

inline M cnot4() {
    M m = M::Zero(4, 4);
    m(0, 0) = m(1, 1) = m(2, 3) = m(3, 2) = 1;
    return m;
}

/// u on `target` when every control bit is 1, built column by column.
inline M controlled(std::size_t n, const std::vector<std::size_t> &controls, std::size_t target, const M &u) {
    const Eigen::Index dim = Eigen::Index{1} << n;
    auto bit = [&](Eigen::Index x, std::size_t q) { return (x >> (n - 1 - q)) & 1; };
    M out = M::Zero(dim, dim);
    for (Eigen::Index col = 0; col < dim; col++) {
        bool fire = true;
        for (auto c : controls) {
            fire = fire && bit(col, c);
        }
        if (!fire) {
            out(col, col) = 1;
            continue;
        }
        Eigen::Index mask = Eigen::Index{1} << (n - 1 - target);
        Eigen::Index b = bit(col, target);
        out(col & ~mask, col) = u(0, b);
        out(col | mask, col) = u(1, b);
    }
    return out;
}

/// sum_i |i><i| (x) D (x) U_i, with the dummy block D given as a matrix.
inline M block_dispatch(const std::vector<M> &programs, const M &dummy) {
    const Eigen::Index p = static_cast<Eigen::Index>(programs.size());
    M out;
    for (Eigen::Index i = 0; i < p; i++) {
        M proj = M::Zero(p, p);
        proj(i, i) = 1;
        M term = kron(kron(proj, dummy), programs[static_cast<std::size_t>(i)]);
        out = i == 0 ? term : M(out + term);
    }
    return out;
}

/// Random sequence over all gate kinds with continuous angles.
inline GateSequence random_sequence(std::size_t n, std::size_t length, std::mt19937_64 &rng,
                                    bool grid_angles = false) {
    std::uniform_int_distribution<int> kind(0, n >= 2 ? 5 : 4);
    std::uniform_int_distribution<std::size_t> qubit(0, n - 1);
    std::uniform_real_distribution<double> angle(-2 * std::numbers::pi, 2 * std::numbers::pi);
    std::uniform_int_distribution<int> grid(0, 15);
    static constexpr GateKind kinds[] = {GateKind::H, GateKind::X, GateKind::RZ, GateKind::RY, GateKind::GPHASE,
                                         GateKind::CNOT};
    GateSequence s(n);
    for (std::size_t i = 0; i < length; i++) {
        Gate g{kinds[kind(rng)], {qubit(rng), 0}, 0.0};
        if (g.kind == GateKind::CNOT) {
            do {
                g.qubits[1] = qubit(rng);
            } while (g.qubits[1] == g.qubits[0]);
        }
        if (kind_has_angle(g.kind)) {
            g.angle = grid_angles ? grid(rng) * std::numbers::pi / 4 : angle(rng);
        }
        if (g.kind == GateKind::GPHASE) {
            g.qubits[0] = 0;
        }
        s.push_back(g);
    }
    return s;
}

/// Max-entry distance after removing the best global phase.
inline double phase_distance(const M &a, const M &b) {
    C t = (a.adjoint() * b).trace();
    C phase = std::abs(t) > 0 ? t / std::abs(t) : C(1);
    return (a * phase - b).cwiseAbs().maxCoeff();
}

}  // namespace authq::oracle

#endif
