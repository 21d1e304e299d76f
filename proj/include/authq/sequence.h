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

#ifndef AUTHQ_SEQUENCE_H
#define AUTHQ_SEQUENCE_H

#include <array>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "authq/gate.h"

namespace authq {

/// An ordered list of elementary gates on `num_qubits` indexed qubits.
///
/// Gates execute in list order, so the matrix of [g0, g1, g2] is G2*G1*G0.
/// The empty sequence is the identity. Every target index is checked
/// against the width on construction and on append.
class GateSequence {
   public:
    explicit GateSequence(std::size_t num_qubits = 1);
    GateSequence(std::size_t num_qubits, std::vector<Gate> gates);

    std::size_t num_qubits() const { return num_qubits_; }
    const std::vector<Gate> &gates() const { return gates_; }
    std::size_t size() const { return gates_.size(); }
    bool empty() const { return gates_.empty(); }
    const Gate &operator[](std::size_t i) const { return gates_[i]; }

    void push_back(const Gate &g);
    void append(std::span<const Gate> gates);

    bool operator==(const GateSequence &other) const = default;

   private:
    std::size_t num_qubits_;
    std::vector<Gate> gates_;
};

/// Throws WidthError if `g` addresses a qubit >= num_qubits or CNOT operands coincide.
void validate_gate(const Gate &g, std::size_t num_qubits);

/// Sequence implementing U^dagger: reversed, each gate inverted.
GateSequence adjoint(const GateSequence &seq);

/// `a` then `b`; matrix semantics B*A.
GateSequence concat(const GateSequence &a, const GateSequence &b);

/// Re-index `seq` into a register of `num_qubits`, sending qubit q to qubit_map[q].
GateSequence embed(const GateSequence &seq, std::size_t num_qubits, std::span<const std::size_t> qubit_map);

/// Embed onto a contiguous block starting at `offset`.
GateSequence embed_at(const GateSequence &seq, std::size_t num_qubits, std::size_t offset);

/// Line-oriented text: `qubits N` header then one `KIND [angle] targets...` per line.
/// Angles carry 17 significant digits so parse(serialize(s)) == s exactly.
std::string serialize(const GateSequence &seq);

/// Parses the text format. `#` starts a comment. Angles accept decimal
/// literals or simple pi expressions such as `pi/4`, `-3*pi/2`.
/// Throws ParseError naming the offending line.
GateSequence parse(std::string_view text);

/// Canonical text used for hashing: angles reduced into their period and
/// rounded to 1e-12 so that arithmetically equal angles reached along
/// different floating-point paths collide.
std::string canonical_text(const GateSequence &seq);

struct SequenceDigest {
    std::array<std::uint8_t, 32> bytes{};

    std::string hex() const;
    auto operator<=>(const SequenceDigest &) const = default;
};

/// SHA-256 of canonical_text(seq).
SequenceDigest digest(const GateSequence &seq);

}  // namespace authq

template <>
struct std::hash<authq::SequenceDigest> {
    std::size_t operator()(const authq::SequenceDigest &d) const noexcept {
        std::size_t h = 0;
        for (std::size_t i = 0; i < sizeof(std::size_t); i++) {
            h = (h << 8) | d.bytes[i];
        }
        return h;
    }
};

#endif
