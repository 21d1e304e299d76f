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

#ifndef AUTHQ_GATE_H
#define AUTHQ_GATE_H

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string_view>

namespace authq {

/// Elementary gate alphabet.
///
/// Matrix conventions (qubit 0 is the most significant bit of a basis index):
///   H            = [[1, 1], [1, -1]] / sqrt(2)
///   X            = [[0, 1], [1, 0]]
///   RZ(theta)    = diag(exp(-i theta/2), exp(i theta/2))
///   RY(theta)    = [[cos(theta/2), -sin(theta/2)], [sin(theta/2), cos(theta/2)]]
///   CNOT c t     flips t when c is |1>
///   GPHASE(theta) = exp(i theta) on the whole register (no targets)
///
/// X is kept as a first-class kind even though it can be spelled with the
/// others; controlled-X is the base case of every multiplexer network.
enum class GateKind : unsigned char { H, X, RZ, RY, CNOT, GPHASE };

std::string_view kind_name(GateKind kind);
std::optional<GateKind> kind_from_name(std::string_view name);

/// Number of qubit operands (0, 1 or 2).
std::size_t kind_arity(GateKind kind);
bool kind_has_angle(GateKind kind);

/// Angle period of the gate matrix including sign: 4*pi for RZ/RY, 2*pi for GPHASE.
double kind_angle_period(GateKind kind);

struct Gate {
    GateKind kind = GateKind::H;
    std::array<std::size_t, 2> qubits{0, 0};
    double angle = 0.0;

    static Gate h(std::size_t q) { return {GateKind::H, {q, 0}, 0.0}; }
    static Gate x(std::size_t q) { return {GateKind::X, {q, 0}, 0.0}; }
    static Gate rz(std::size_t q, double theta) { return {GateKind::RZ, {q, 0}, theta}; }
    static Gate ry(std::size_t q, double theta) { return {GateKind::RY, {q, 0}, theta}; }
    static Gate cnot(std::size_t control, std::size_t target) { return {GateKind::CNOT, {control, target}, 0.0}; }
    static Gate gphase(double theta) { return {GateKind::GPHASE, {0, 0}, theta}; }

    std::size_t arity() const { return kind_arity(kind); }
    std::span<const std::size_t> targets() const { return {qubits.data(), arity()}; }
    bool touches(std::size_t q) const;
    bool disjoint_from(const Gate &other) const;

    /// Exact inverse (H, X, CNOT self-inverse; angles negated).
    Gate inverse() const;

    /// Structural equality; angles compared exactly.
    bool operator==(const Gate &other) const;
};

/// Reduce an angle into [0, period) for the gate kind. Identity for angle-free kinds.
double normalize_angle(GateKind kind, double theta);

/// True when two gates implement the same matrix, comparing angles modulo
/// their period within `tol`.
bool same_gate(const Gate &a, const Gate &b, double tol = 1e-12);

/// True when `b` undoes `a` exactly (b == a^-1 up to angle periodicity).
bool is_inverse_pair(const Gate &a, const Gate &b, double tol = 1e-12);

}  // namespace authq

#endif
