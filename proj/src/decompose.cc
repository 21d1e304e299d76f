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

#include "authq/decompose.h"

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "authq/errors.h"

namespace authq {

namespace {

constexpr double kSkip = 1e-14;

bool negligible(GateKind kind, double theta) {
    double r = normalize_angle(kind, theta);
    return r < kSkip || kind_angle_period(kind) - r < kSkip;
}

void push_rotation(std::vector<Gate> &out, GateKind kind, std::size_t q, double theta) {
    if (negligible(kind, theta)) {
        return;
    }
    out.push_back({kind, {q, 0}, theta});
}

void push_phase(std::vector<Gate> &out, double theta) {
    if (negligible(GateKind::GPHASE, theta)) {
        return;
    }
    out.push_back(Gate::gphase(theta));
}

// diag(1, exp(i theta)) on q.
void push_phase_gate(std::vector<Gate> &out, std::size_t q, double theta) {
    push_rotation(out, GateKind::RZ, q, theta);
    push_phase(out, theta / 2);
}

void append_single_controlled(std::vector<Gate> &out, std::size_t control, std::size_t target, const Mat2 &u) {
    auto z = zyz_decompose(u);
    // C, then CNOT, then B, then CNOT, then A; A.B.C = I and A.X.B.X.C = exp(-i phase) u.
    push_rotation(out, GateKind::RZ, target, (z.delta - z.beta) / 2);
    out.push_back(Gate::cnot(control, target));
    push_rotation(out, GateKind::RZ, target, -(z.delta + z.beta) / 2);
    push_rotation(out, GateKind::RY, target, -z.gamma / 2);
    out.push_back(Gate::cnot(control, target));
    push_rotation(out, GateKind::RY, target, z.gamma / 2);
    push_rotation(out, GateKind::RZ, target, z.beta);
    push_phase_gate(out, control, z.phase);
}

Mat2 x_matrix() {
    Mat2 m;
    m << 0, 1, 1, 0;
    return m;
}

}  // namespace

ZyzAngles zyz_decompose(const Mat2 &u) {
    Complex det = u.determinant();
    ZyzAngles z;
    z.phase = std::arg(det) / 2;
    Mat2 v = u * std::exp(Complex(0, -z.phase));
    // v = [[a, -conj(b)], [b, conj(a)]] with
    // a = exp(-i(beta+delta)/2) cos(gamma/2), b = exp(i(beta-delta)/2) sin(gamma/2).
    Complex a = v(0, 0);
    Complex b = v(1, 0);
    z.gamma = 2 * std::atan2(std::abs(b), std::abs(a));
    double sum = std::abs(a) > 1e-12 ? -2 * std::arg(a) : 0.0;
    double diff = std::abs(b) > 1e-12 ? 2 * std::arg(b) : 0.0;
    z.beta = (sum + diff) / 2;
    z.delta = (sum - diff) / 2;
    return z;
}

Mat2 unitary_sqrt(const Mat2 &u) {
    Eigen::ComplexSchur<Mat2> schur(u);
    Mat2 t = schur.matrixT();
    Mat2 q = schur.matrixU();
    Mat2 d = Mat2::Zero();
    d(0, 0) = std::sqrt(t(0, 0));
    d(1, 1) = std::sqrt(t(1, 1));
    return q * d * q.adjoint();
}

void append_single_qubit(std::vector<Gate> &out, const Mat2 &u, std::size_t q) {
    auto z = zyz_decompose(u);
    push_rotation(out, GateKind::RZ, q, z.delta);
    push_rotation(out, GateKind::RY, q, z.gamma);
    push_rotation(out, GateKind::RZ, q, z.beta);
    push_phase(out, z.phase);
}

void append_toffoli(std::vector<Gate> &out, std::size_t a, std::size_t b, std::size_t t) {
    constexpr double kT = std::numbers::pi / 4;
    out.push_back(Gate::h(t));
    out.push_back(Gate::cnot(b, t));
    out.push_back(Gate::rz(t, -kT));
    out.push_back(Gate::cnot(a, t));
    out.push_back(Gate::rz(t, kT));
    out.push_back(Gate::cnot(b, t));
    out.push_back(Gate::rz(t, -kT));
    out.push_back(Gate::cnot(a, t));
    out.push_back(Gate::rz(b, kT));
    out.push_back(Gate::rz(t, kT));
    out.push_back(Gate::h(t));
    out.push_back(Gate::cnot(a, b));
    out.push_back(Gate::rz(a, kT));
    out.push_back(Gate::rz(b, -kT));
    out.push_back(Gate::cnot(a, b));
    // Four T and three T^dagger written as RZ lose exp(i pi/8) net.
    out.push_back(Gate::gphase(kT / 2));
}

void append_multi_controlled(std::vector<Gate> &out, std::span<const std::size_t> controls, std::size_t target,
                             const Mat2 &u) {
    for (auto c : controls) {
        if (c == target) {
            throw WidthError("controlled gate: control coincides with target " + std::to_string(target));
        }
    }
    const bool is_x = (u - x_matrix()).cwiseAbs().maxCoeff() < 1e-15;
    if (controls.empty()) {
        if (is_x) {
            out.push_back(Gate::x(target));
        } else {
            append_single_qubit(out, u, target);
        }
        return;
    }
    if (controls.size() == 1) {
        if (is_x) {
            out.push_back(Gate::cnot(controls[0], target));
        } else {
            append_single_controlled(out, controls[0], target, u);
        }
        return;
    }
    if (controls.size() == 2 && is_x) {
        append_toffoli(out, controls[0], controls[1], target);
        return;
    }
    // C^k(U) = C(V)[last] . C^{k-1}(X)[rest -> last] . C(V^dagger)[last] . C^{k-1}(X) . C^{k-1}(V)[rest],
    // with V^2 = U.
    const std::size_t last = controls.back();
    auto rest = controls.first(controls.size() - 1);
    Mat2 v = unitary_sqrt(u);
    append_single_controlled(out, last, target, v);
    append_multi_controlled(out, rest, last, x_matrix());
    append_single_controlled(out, last, target, v.adjoint());
    append_multi_controlled(out, rest, last, x_matrix());
    append_multi_controlled(out, rest, target, v);
}

void append_controlled(std::vector<Gate> &out, std::span<const std::size_t> controls, const Gate &g) {
    if (controls.empty()) {
        out.push_back(g);
        return;
    }
    switch (g.kind) {
        case GateKind::GPHASE: {
            if (controls.size() == 1) {
                push_phase_gate(out, controls[0], g.angle);
                return;
            }
            Mat2 p = Mat2::Identity();
            p(1, 1) = std::exp(Complex(0, g.angle));
            append_multi_controlled(out, controls.first(controls.size() - 1), controls.back(), p);
            return;
        }
        case GateKind::CNOT: {
            std::vector<std::size_t> all(controls.begin(), controls.end());
            all.push_back(g.qubits[0]);
            append_multi_controlled(out, all, g.qubits[1], x_matrix());
            return;
        }
        case GateKind::H:
            if (controls.size() == 1) {
                // H = RY(-pi/4) X RY(pi/4) exactly.
                push_rotation(out, GateKind::RY, g.qubits[0], std::numbers::pi / 4);
                out.push_back(Gate::cnot(controls[0], g.qubits[0]));
                push_rotation(out, GateKind::RY, g.qubits[0], -std::numbers::pi / 4);
                return;
            }
            append_multi_controlled(out, controls, g.qubits[0], gate_matrix(g));
            return;
        case GateKind::RZ:
        case GateKind::RY:
            if (controls.size() == 1) {
                // X.R(a).X = R(-a) for both axes.
                push_rotation(out, g.kind, g.qubits[0], g.angle / 2);
                out.push_back(Gate::cnot(controls[0], g.qubits[0]));
                push_rotation(out, g.kind, g.qubits[0], -g.angle / 2);
                out.push_back(Gate::cnot(controls[0], g.qubits[0]));
                return;
            }
            [[fallthrough]];
        default:
            append_multi_controlled(out, controls, g.qubits[0], gate_matrix(g));
    }
}

}  // namespace authq
