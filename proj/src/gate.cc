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

#include "authq/gate.h"

#include <cmath>
#include <numbers>

namespace authq {

namespace {

constexpr std::array<std::string_view, 6> kNames{"H", "X", "RZ", "RY", "CNOT", "GPHASE"};

}  // namespace

std::string_view kind_name(GateKind kind) { return kNames[static_cast<std::size_t>(kind)]; }

std::optional<GateKind> kind_from_name(std::string_view name) {
    for (std::size_t i = 0; i < kNames.size(); i++) {
        if (kNames[i] == name) {
            return static_cast<GateKind>(i);
        }
    }
    return std::nullopt;
}

std::size_t kind_arity(GateKind kind) {
    switch (kind) {
        case GateKind::CNOT:
            return 2;
        case GateKind::GPHASE:
            return 0;
        default:
            return 1;
    }
}

bool kind_has_angle(GateKind kind) {
    return kind == GateKind::RZ || kind == GateKind::RY || kind == GateKind::GPHASE;
}

double kind_angle_period(GateKind kind) {
    switch (kind) {
        case GateKind::RZ:
        case GateKind::RY:
            return 4 * std::numbers::pi;
        case GateKind::GPHASE:
            return 2 * std::numbers::pi;
        default:
            return 0.0;
    }
}

bool Gate::touches(std::size_t q) const {
    for (auto t : targets()) {
        if (t == q) {
            return true;
        }
    }
    return false;
}

bool Gate::disjoint_from(const Gate &other) const {
    for (auto t : targets()) {
        if (other.touches(t)) {
            return false;
        }
    }
    return true;
}

Gate Gate::inverse() const {
    Gate g = *this;
    if (kind_has_angle(kind)) {
        g.angle = -angle;
    }
    return g;
}

bool Gate::operator==(const Gate &other) const {
    if (kind != other.kind) {
        return false;
    }
    for (std::size_t i = 0; i < arity(); i++) {
        if (qubits[i] != other.qubits[i]) {
            return false;
        }
    }
    return !kind_has_angle(kind) || angle == other.angle;
}

double normalize_angle(GateKind kind, double theta) {
    double period = kind_angle_period(kind);
    if (period == 0.0) {
        return 0.0;
    }
    double r = std::fmod(theta, period);
    if (r < 0) {
        r += period;
    }
    if (r >= period) {
        r = 0.0;
    }
    return r;
}

namespace {

bool angle_is_zero_mod_period(GateKind kind, double theta, double tol) {
    double r = normalize_angle(kind, theta);
    return r <= tol || kind_angle_period(kind) - r <= tol;
}

bool same_operands(const Gate &a, const Gate &b) {
    if (a.kind != b.kind) {
        return false;
    }
    for (std::size_t i = 0; i < a.arity(); i++) {
        if (a.qubits[i] != b.qubits[i]) {
            return false;
        }
    }
    return true;
}

}  // namespace

bool same_gate(const Gate &a, const Gate &b, double tol) {
    if (!same_operands(a, b)) {
        return false;
    }
    return !kind_has_angle(a.kind) || angle_is_zero_mod_period(a.kind, a.angle - b.angle, tol);
}

bool is_inverse_pair(const Gate &a, const Gate &b, double tol) {
    if (!same_operands(a, b)) {
        return false;
    }
    return !kind_has_angle(a.kind) || angle_is_zero_mod_period(a.kind, a.angle + b.angle, tol);
}

}  // namespace authq
