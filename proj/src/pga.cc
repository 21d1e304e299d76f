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

#include <cmath>

#include "authq/decompose.h"
#include "authq/errors.h"
#include "authq/keying.h"

namespace authq {

void ProgramSpec::validate() const {
    if (k < 1) {
        throw ArgumentError("program spec: k must be at least 1");
    }
    if (k > 16) {
        throw ArgumentError("program spec: k = " + std::to_string(k) + " is beyond desk scale");
    }
    if (m < k) {
        throw WidthError("program spec: key width m = " + std::to_string(m) + " is smaller than k = " +
                         std::to_string(k));
    }
    if (n < 1) {
        throw WidthError("program spec: input width n must be at least 1");
    }
    if (programs.size() != (std::size_t{1} << k)) {
        throw ArgumentError("program spec: expected " + std::to_string(std::size_t{1} << k) + " programs, got " +
                            std::to_string(programs.size()));
    }
    for (std::size_t i = 0; i < programs.size(); i++) {
        if (programs[i].num_qubits() != n) {
            throw WidthError("program spec: program " + std::to_string(i) + " acts on " +
                             std::to_string(programs[i].num_qubits()) + " qubits, expected n = " + std::to_string(n));
        }
    }
    if (m > k) {
        if (m1.num_qubits() != m - k || m2.num_qubits() != m - k) {
            throw WidthError("program spec: dummy scramblers must act on m - k = " + std::to_string(m - k) +
                             " qubits");
        }
    } else if (!m1.empty() || !m2.empty()) {
        throw WidthError("program spec: m == k leaves no dummy qubits, but scramblers are non-empty");
    }
}

std::vector<std::string> lint(const ProgramSpec &spec) {
    std::vector<std::string> out;
    // Index width should stay O(log n) to keep the dispatch network polynomial.
    double allowed = 2 * std::log2(static_cast<double>(spec.n) + 1) + 1;
    if (static_cast<double>(spec.k) > allowed) {
        out.push_back("k = " + std::to_string(spec.k) + " is large relative to log2(n) for n = " +
                      std::to_string(spec.n) + "; dispatch cost grows as 2^k");
    }
    if (spec.m == spec.k) {
        out.push_back("m == k: no dummy qubits pad the key space");
    }
    return out;
}

void sample_dummy_scramblers(ProgramSpec &spec, std::size_t length) {
    if (spec.m <= spec.k) {
        spec.m1 = GateSequence(1);
        spec.m2 = GateSequence(1);
        return;
    }
    std::size_t d = spec.m - spec.k;
    std::vector<std::size_t> qubits(d);
    for (std::size_t q = 0; q < d; q++) {
        qubits[q] = q;
    }
    Rng rng1(derive_seed(spec.seed, "m1"));
    Rng rng2(derive_seed(spec.seed, "m2"));
    spec.m1 = sample_random_sequence(qubits, d, length, rng1);
    spec.m2 = sample_random_sequence(qubits, d, length, rng2);
}

void append_controlled_on_value(std::vector<Gate> &out, const GateSequence &seq,
                                std::span<const std::size_t> controls, std::uint64_t value,
                                std::span<const std::size_t> target_map) {
    const std::size_t k = controls.size();
    if (k < 64 && value >= (std::uint64_t{1} << k)) {
        throw ArgumentError("controlled_on_value: value " + std::to_string(value) + " out of range for " +
                            std::to_string(k) + " control qubits");
    }
    if (target_map.size() != seq.num_qubits()) {
        throw WidthError("controlled_on_value: target map does not cover the sequence");
    }
    if (seq.empty()) {
        return;
    }
    // Control j reads bit (k - 1 - j) of value: control 0 is the most significant.
    std::vector<std::size_t> flips;
    for (std::size_t j = 0; j < k; j++) {
        if (!((value >> (k - 1 - j)) & 1)) {
            flips.push_back(controls[j]);
        }
    }
    for (auto q : flips) {
        out.push_back(Gate::x(q));
    }
    for (Gate g : seq.gates()) {
        for (std::size_t i = 0; i < g.arity(); i++) {
            g.qubits[i] = target_map[g.qubits[i]];
        }
        append_controlled(out, controls, g);
    }
    for (auto q : flips) {
        out.push_back(Gate::x(q));
    }
}

GateSequence controlled_on_value(const GateSequence &seq, std::size_t k, std::uint64_t value) {
    std::vector<std::size_t> controls(k);
    for (std::size_t j = 0; j < k; j++) {
        controls[j] = j;
    }
    std::vector<std::size_t> targets(seq.num_qubits());
    for (std::size_t q = 0; q < targets.size(); q++) {
        targets[q] = k + q;
    }
    std::vector<Gate> out;
    append_controlled_on_value(out, seq, controls, value, targets);
    return GateSequence(k + seq.num_qubits(), std::move(out));
}

GateSequence build_pga(const ProgramSpec &spec) {
    spec.validate();
    const std::size_t total = spec.total_qubits();
    std::vector<Gate> out;
    auto check_budget = [&](const char *stage) {
        if (out.size() > spec.gate_budget) {
            throw BudgetError(std::string("build_pga: ") + stage + " pushed the array to " +
                              std::to_string(out.size()) + " gates, budget is " + std::to_string(spec.gate_budget));
        }
    };

    std::vector<std::size_t> dummy_map(spec.dummy_qubits());
    for (std::size_t q = 0; q < dummy_map.size(); q++) {
        dummy_map[q] = spec.k + q;
    }
    if (spec.m > spec.k) {
        auto scrambler = embed(spec.m1, total, dummy_map);
        out.insert(out.end(), scrambler.gates().begin(), scrambler.gates().end());
    }

    std::vector<std::size_t> controls(spec.k);
    for (std::size_t j = 0; j < spec.k; j++) {
        controls[j] = j;
    }
    std::vector<std::size_t> input_map(spec.n);
    for (std::size_t q = 0; q < spec.n; q++) {
        input_map[q] = spec.m + q;
    }
    for (std::size_t i = 0; i < spec.programs.size(); i++) {
        append_controlled_on_value(out, spec.programs[i], controls, i, input_map);
        check_budget("program dispatch");
    }

    if (spec.m > spec.k) {
        auto scrambler = embed(spec.m2, total, dummy_map);
        out.insert(out.end(), scrambler.gates().begin(), scrambler.gates().end());
    }
    check_budget("dummy scrambling");
    return GateSequence(total, std::move(out));
}

}  // namespace authq
