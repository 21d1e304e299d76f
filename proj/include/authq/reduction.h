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

#ifndef AUTHQ_REDUCTION_H
#define AUTHQ_REDUCTION_H

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "authq/sequence.h"
#include "authq/shuffler.h"
#include "authq/simulator.h"

namespace authq {

/// z(C_U) on n + 1 qubits: qubit 0 is the control, the original qubits
/// shift up by one. Matrix |0><0| (x) I + |1><1| (x) U. Each gate expands
/// into a constant number of elementary gates; GPHASE(theta) becomes a
/// diag(1, exp(i theta)) phase on the control.
GateSequence controlize(const GateSequence &x);

/// One instance of the modified non-identity problem:
/// C'_U = (V_L (x) I) C_U (V_R (x) I), then shuffled.
struct ModifiedInstance {
    GateSequence base{1};
    GateSequence v_left{1};
    GateSequence v_right{1};
    GateSequence built{2};
    GateSequence shuffled{2};

    std::size_t input_qubits() const { return base.num_qubits(); }
};

/// v_left and v_right must be single-qubit sequences.
ModifiedInstance build_modified_instance(const GateSequence &x, const GateSequence &v_left,
                                         const GateSequence &v_right, const ShuffleConfig &cfg);

/// Single-qubit key |phi_i> = V_R^dagger |i>.
StateVector instance_key(const GateSequence &v_right, int i);
/// |phi_+> = V_R^dagger (|0> + |1>) / sqrt(2).
StateVector instance_plus_key(const GateSequence &v_right);

struct IdentityVerdict {
    bool is_identity = false;
    /// In [0, 2 pi) when is_identity.
    std::optional<double> theta;
    /// 1 - |tr(U)| / 2^n.
    double residual = 0;
};

/// Brute-force exact non-identity check via the dense matrix (n <= 10).
IdentityVerdict exact_nonidentity_check(const GateSequence &x, double tol = kDefaultTol);

struct ForgeryCheck {
    bool valid = false;
    bool orthonormal = false;
    double worst_overlap_error = 0;
    double worst_fidelity = 1;
    std::string reason;
};

/// Checks the forged-key contract: keys pairwise orthonormal, and for each i
/// F(psi_i (x) phi) factors as psi' (x) U_i phi over a battery of inputs
/// spanning basis states and their relative phases.
ForgeryCheck check_forged_key(const GateSequence &f, std::span<const StateVector> forged_keys,
                              std::span<const GateSequence> programs, double tol = kDefaultTol);

bool validate_forged_key(const GateSequence &f, std::span<const StateVector> forged_keys,
                         std::span<const GateSequence> programs, double tol = kDefaultTol);

/// Unitary W on key (qubit 0) plus ancillae initialized to |0...0>.
/// Ancilla 0 receives the forged key, ancilla 1 the outcome label.
struct AttackerChannel {
    GateSequence unitary{3};
    std::size_t ancilla_qubits = 2;

    std::size_t width() const { return 1 + ancilla_qubits; }
};

inline constexpr std::size_t kDefaultAncillaQubits = 3;

/// White-box attacker keyed to a guess of V_R: it rotates the key into the
/// computational basis, copies the index into the forged-key and label
/// ancillae, and rotates back.
AttackerChannel keyed_attacker(const GateSequence &v_right_guess, std::size_t ancilla_qubits = kDefaultAncillaQubits);

/// keyed_attacker with the instance's own V_R.
AttackerChannel plant_whitebox_attacker(const ModifiedInstance &inst,
                                        std::size_t ancilla_qubits = kDefaultAncillaQubits);

/// Gamma(rho) = tr_ancilla[W (rho (x) |0><0|) W^dagger].
DensityMatrix apply_channel(const AttackerChannel &attacker, const DensityMatrix &key);

/// Forged keys recorded by the attacker for inputs |phi_0>, |phi_1>.
std::vector<StateVector> extracted_forged_keys(const ModifiedInstance &inst, const AttackerChannel &attacker);

/// |<A_0|A_1>| where W(|phi_i> (x) |0>) = |phi_i> (x) |A_i>; zero for a working forger.
double ancilla_overlap(const ModifiedInstance &inst, const AttackerChannel &attacker);

enum class InstanceClass { g0, g1 };

struct DistinguishResult {
    InstanceClass verdict = InstanceClass::g0;
    double p_basis = 0;
    double p_plus = 0;
};

/// p_basis = <phi_0|Gamma(phi_0)|phi_0>, p_plus = <phi_+|Gamma(phi_+)|phi_+>.
/// Verdict g1 when (p_basis, p_plus) is within `threshold` of (1, 1/2).
DistinguishResult distinguish(const ModifiedInstance &inst, const AttackerChannel &attacker, double threshold = 0.1);

enum class StolenKeyModel {
    /// Uniform mixture of product keys V_R^dagger^(x)N |i_N>.
    honest_mixture,
    /// I / 2^N.
    maximally_mixed,
};

/// Distinguisher statistics when the attacker also holds N stolen keys and
/// processes them together with the key and ancillae by a random sequence
/// derived from `processing_seed`.
DistinguishResult distinguish_with_stolen_keys(const ModifiedInstance &inst, const AttackerChannel &attacker,
                                               std::size_t stolen, StolenKeyModel model,
                                               std::uint64_t processing_seed, double threshold = 0.1);

}  // namespace authq

#endif
