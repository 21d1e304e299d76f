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

#ifndef AUTHQ_PGA_H
#define AUTHQ_PGA_H

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "authq/sequence.h"

namespace authq {

inline constexpr std::size_t kDefaultGateBudget = 100000;

/// The programmer's secret bundle for one programmable gate array.
///
/// Register layout of the built array (m + n qubits):
///   [0, k)       index qubits selecting the program
///   [k, m)       dummy qubits, scrambled by m1 then m2
///   [m, m + n)   input register
struct ProgramSpec {
    std::vector<GateSequence> programs;  // 2^k sequences on n qubits
    std::size_t k = 1;
    std::size_t m = 1;
    std::size_t n = 1;
    GateSequence m1{1};  // on m - k dummy qubits; ignored when m == k
    GateSequence m2{1};
    std::uint64_t seed = 0;
    std::size_t gate_budget = kDefaultGateBudget;

    std::size_t dummy_qubits() const { return m - k; }
    std::size_t total_qubits() const { return m + n; }

    /// Throws WidthError / ArgumentError on inconsistent widths or counts.
    void validate() const;
};

/// Non-fatal advisories, e.g. k much larger than log2(n).
std::vector<std::string> lint(const ProgramSpec &spec);

/// Random dummy scramblers for a spec whose m1/m2 are not supplied.
void sample_dummy_scramblers(ProgramSpec &spec, std::size_t length);

/// x(G): G(|i>|d>|phi>) = |i> (M2 M1 |d>) U_i|phi>.
/// Throws BudgetError once the emitted sequence exceeds spec.gate_budget.
GateSequence build_pga(const ProgramSpec &spec);

/// `seq` applied exactly when the k-qubit control register holds |value>.
/// The result acts on k + seq.num_qubits() qubits, control register first.
GateSequence controlled_on_value(const GateSequence &seq, std::size_t k, std::uint64_t value);

/// General form: controls and the target placement given explicitly inside a
/// register of `num_qubits`. Zero-bits of `value` are X-conjugated.
void append_controlled_on_value(std::vector<Gate> &out, const GateSequence &seq,
                                std::span<const std::size_t> controls, std::uint64_t value,
                                std::span<const std::size_t> target_map);

}  // namespace authq

#endif
