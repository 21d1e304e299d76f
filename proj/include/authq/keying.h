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

#ifndef AUTHQ_KEYING_H
#define AUTHQ_KEYING_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>

#include "authq/rng.h"
#include "authq/sequence.h"
#include "authq/simulator.h"

namespace authq {

/// Random gate sequence over the given qubits of an `num_qubits`-wide
/// register. Gate kinds are drawn uniformly from {H, RZ, RY, CNOT, GPHASE}
/// (CNOT only when at least two qubits are available); angles are uniform
/// in [0, 2 pi).
GateSequence sample_random_sequence(std::span<const std::size_t> qubits, std::size_t num_qubits,
                                    std::size_t length, Rng &rng);

/// Secret key-register scramblers L and R, both on the m key qubits.
struct KeySecrets {
    GateSequence left{1};
    GateSequence right{1};
    std::uint64_t seed = 0;

    std::size_t m() const { return right.num_qubits(); }
};

/// Default scrambler length: 8 gates per key qubit.
KeySecrets make_key_secrets(std::size_t m, std::uint64_t seed, std::size_t length = 0);

/// x(G') = x(R) x(G) x(L), i.e. matrix (L (x) I) G (R (x) I).
GateSequence encode(const GateSequence &xg, const KeySecrets &secrets);

/// An authorization key. The index is held only by the programmer; user copies drop it.
struct KeyState {
    StateVector state;
    std::optional<std::uint64_t> issued_index;
    std::string program_id;

    KeyState user_copy() const { return {state, std::nullopt, program_id}; }
};

/// |phi_i> = R^dagger |i, 0...0>, the index occupying the top k of m key qubits.
KeyState issue_key(std::uint64_t index, const KeySecrets &secrets, std::size_t m, std::size_t k);

/// Outcome of running a keyed program on key (x) input.
struct RunResult {
    StateVector joint;
    /// Purity of the reduced state on either side of the key/input cut.
    double purity = 0;
    /// Present only when the joint output is a product across the cut.
    std::optional<StateVector> used_key;
    std::optional<StateVector> output;

    bool entangled() const { return !output.has_value(); }
};

/// Applies x(G') to key (x) input. Product outputs (purity >= 1 - tol) are
/// split into their factors; anything else is reported as entangled.
RunResult run(const GateSequence &xgp, const StateVector &key, const StateVector &input, double tol = kDefaultTol);

/// Applies the adjoint program to used_key (x) psi, regenerating the original key.
RunResult recycle(const GateSequence &xgp, const StateVector &used_key, const StateVector &psi,
                  double tol = kDefaultTol);

}  // namespace authq

#endif
