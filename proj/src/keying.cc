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

#include <array>
#include <numbers>

#include "authq/errors.h"

namespace authq {

GateSequence sample_random_sequence(std::span<const std::size_t> qubits, std::size_t num_qubits,
                                    std::size_t length, Rng &rng) {
    GateSequence out(num_qubits);
    if (length == 0) {
        return out;
    }
    if (qubits.empty()) {
        throw ArgumentError("sample_random_sequence: empty qubit set with nonzero length");
    }
    static constexpr std::array<GateKind, 5> kAll{GateKind::H, GateKind::RZ, GateKind::RY, GateKind::GPHASE,
                                                  GateKind::CNOT};
    const std::size_t kinds = qubits.size() >= 2 ? 5 : 4;
    std::uniform_int_distribution<std::size_t> pick_kind(0, kinds - 1);
    std::uniform_int_distribution<std::size_t> pick_qubit(0, qubits.size() - 1);
    std::uniform_real_distribution<double> pick_angle(0.0, 2 * std::numbers::pi);
    for (std::size_t i = 0; i < length; i++) {
        Gate g{kAll[pick_kind(rng)], {0, 0}, 0.0};
        if (g.kind == GateKind::CNOT) {
            std::size_t c = pick_qubit(rng);
            std::size_t t = pick_qubit(rng);
            while (t == c) {
                t = pick_qubit(rng);
            }
            g.qubits = {qubits[c], qubits[t]};
        } else if (g.kind != GateKind::GPHASE) {
            g.qubits[0] = qubits[pick_qubit(rng)];
        }
        if (kind_has_angle(g.kind)) {
            g.angle = pick_angle(rng);
        }
        out.push_back(g);
    }
    return out;
}

KeySecrets make_key_secrets(std::size_t m, std::uint64_t seed, std::size_t length) {
    if (m == 0) {
        throw WidthError("key secrets need at least one key qubit");
    }
    if (length == 0) {
        length = 8 * m;
    }
    std::vector<std::size_t> qubits(m);
    for (std::size_t q = 0; q < m; q++) {
        qubits[q] = q;
    }
    Rng left_rng(derive_seed(seed, "L"));
    Rng right_rng(derive_seed(seed, "R"));
    KeySecrets s;
    s.left = sample_random_sequence(qubits, m, length, left_rng);
    s.right = sample_random_sequence(qubits, m, length, right_rng);
    s.seed = seed;
    return s;
}

GateSequence encode(const GateSequence &xg, const KeySecrets &secrets) {
    const std::size_t m = secrets.m();
    if (secrets.left.num_qubits() != m) {
        throw WidthError("encode: L and R act on different key widths");
    }
    if (m >= xg.num_qubits()) {
        throw WidthError("encode: key register of " + std::to_string(m) + " qubits leaves no input register in a " +
                         std::to_string(xg.num_qubits()) + "-qubit array");
    }
    const std::size_t total = xg.num_qubits();
    GateSequence out = embed_at(secrets.right, total, 0);
    out.append(xg.gates());
    out.append(embed_at(secrets.left, total, 0).gates());
    return out;
}

KeyState issue_key(std::uint64_t index, const KeySecrets &secrets, std::size_t m, std::size_t k) {
    if (secrets.m() != m) {
        throw WidthError("issue_key: secrets act on " + std::to_string(secrets.m()) + " qubits, m = " +
                         std::to_string(m));
    }
    if (k > m || k == 0) {
        throw WidthError("issue_key: need 1 <= k <= m");
    }
    if (index >= (std::uint64_t{1} << k)) {
        throw ArgumentError("issue_key: index " + std::to_string(index) + " out of range for k = " +
                            std::to_string(k));
    }
    auto basis = StateVector::basis(m, index << (m - k));
    return {apply(adjoint(secrets.right), basis), index, {}};
}

RunResult run(const GateSequence &xgp, const StateVector &key, const StateVector &input, double tol) {
    const std::size_t m = key.num_qubits();
    if (m + input.num_qubits() != xgp.num_qubits()) {
        throw WidthError("run: key (" + std::to_string(m) + ") + input (" + std::to_string(input.num_qubits()) +
                         ") qubits do not match the " + std::to_string(xgp.num_qubits()) + "-qubit program");
    }
    RunResult r{apply(xgp, tensor(key, input)), 0.0, std::nullopt, std::nullopt};
    auto split = split_product(r.joint, m);
    r.purity = split.purity;
    if (split.purity >= 1 - tol) {
        // Put the joint phase on the output factor so key (x) output reproduces joint.
        Complex overlap = inner(tensor(split.left, split.right), r.joint);
        Vector out = split.right.amplitudes() * (overlap / std::abs(overlap));
        r.used_key = split.left;
        r.output = StateVector::normalized(input.num_qubits(), std::move(out));
    }
    return r;
}

RunResult recycle(const GateSequence &xgp, const StateVector &used_key, const StateVector &psi, double tol) {
    return run(adjoint(xgp), used_key, psi, tol);
}

}  // namespace authq
