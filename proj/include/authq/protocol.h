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

#ifndef AUTHQ_PROTOCOL_H
#define AUTHQ_PROTOCOL_H

#include <cstddef>
#include <cstdint>
#include <map>
#include <mutex>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "authq/keying.h"
#include "authq/pga.h"
#include "authq/shuffler.h"

namespace authq {

/// Keyed-hash (HMAC-SHA256) stand-in for the trusted authenticator.
class Authenticator {
   public:
    /// Throws ArgumentError on an empty key.
    explicit Authenticator(std::string key);

    /// Lowercase hex MAC of `bytes`.
    std::string sign(std::string_view bytes) const;
    bool verify(std::string_view bytes, std::string_view signature_hex) const;

   private:
    std::string key_;
};

/// The authenticated, publicly announced artifact: the shuffled x'(G') plus
/// widths and non-secret metadata. Never carries L, R, M1, M2 or key amplitudes.
struct PublicProgram {
    std::string program_id;
    GateSequence sequence{2};
    std::size_t m = 1;
    std::size_t n = 1;
    std::size_t k = 1;
    std::map<std::string, std::string> metadata;
    std::string signature;
    /// Raw signed bytes as read from a file; empty for freshly built programs.
    std::string source_payload;

    /// Exact bytes covered by the signature: the serialized file minus its signature line.
    std::string signed_payload() const;
};

/// Header lines, `signature <hex>`, then the gate-sequence text block.
std::string serialize(const PublicProgram &pub);

/// Parses a public program file. The signed payload is reconstructed from
/// the raw bytes so that any byte-level change breaks verification.
PublicProgram parse_public_program(std::string_view text);

struct PublishResult {
    PublicProgram pub;
    KeySecrets secrets;
};

/// Builds G, encodes G' with fresh L, R (seeded from spec.seed), shuffles and signs.
PublishResult programmer_publish(const ProgramSpec &spec, const ShuffleConfig &shuffle_cfg,
                                 const Authenticator &authenticator, const std::string &program_id);

/// One key per (program, user). Mutations are serialized internally.
class KeyLedger {
   public:
    /// Records the issuance; throws ArgumentError on a second issuance to the same user.
    void record(const std::string &program_id, const std::string &user_id);
    bool issued(const std::string &program_id, const std::string &user_id) const;
    std::vector<std::string> users(const std::string &program_id) const;

   private:
    mutable std::mutex mu_;
    std::map<std::string, std::map<std::string, bool>> issued_;
};

/// Ledger-checked issue_key; the returned key carries the program id.
KeyState programmer_issue_key(KeyLedger &ledger, const PublicProgram &pub, const KeySecrets &secrets,
                              const std::string &user_id, std::uint64_t index);

/// Verifies the signature (AuthenticityError otherwise), then runs the program.
RunResult user_execute(const PublicProgram &pub, const KeyState &key, const StateVector &input,
                       const Authenticator &authenticator, double tol = kDefaultTol);

/// Reduced output state on the input register when the key is the uniform
/// mixture of `key_ensemble`.
DensityMatrix user_execute_mixed(const PublicProgram &pub, std::span<const StateVector> key_ensemble,
                                 const StateVector &input, const Authenticator &authenticator);

/// Scoring oracle for attack reports; never handed to the attacks themselves.
struct AttackTarget {
    std::vector<GateSequence> programs;
    std::uint64_t index = 0;
    StateVector key = StateVector::basis(1, 0);
};

struct AttackBudget {
    std::size_t guess_trials = 10000;
    std::size_t max_exhaustive_qubits = 4;
    std::size_t max_candidates = 1 << 16;
    std::size_t probe_inputs = 3;
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
};

struct ReplayOutcome {
    std::size_t stolen_position = 0;
    std::optional<std::uint64_t> stolen_index;
    bool entangled = false;
    double fidelity_to_target = 0;
    /// |<phi|U_i^dagger U_j|phi>|^2 when the stolen index is known.
    std::optional<double> predicted;
};

struct AttackReport {
    std::size_t m = 0;
    // Random-key guessing: uniform computational-basis guesses, each accepted
    // with the Born probability of projecting onto the authorized key.
    std::size_t guess_trials = 0;
    std::size_t guess_successes = 0;
    double guess_rate = 0;
    double guess_expected = 0;
    // Exhaustive search over the 2^m computational-basis keys.
    std::size_t candidates_tested = 0;
    std::vector<std::pair<std::uint64_t, std::size_t>> working_keys;  // (candidate, program index)
    double exhaustive_seconds = 0;
    std::vector<ReplayOutcome> replays;
    bool partial = false;
    std::string partial_reason;
};

/// Runs the baseline black-box attacks within `budget`.
AttackReport eavesdropper_report(const PublicProgram &pub, std::span<const KeyState> stolen,
                                 const AttackTarget &target, const AttackBudget &budget);

/// `key value` lines.
std::string to_text(const AttackReport &report);

}  // namespace authq

#endif
