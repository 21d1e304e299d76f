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

#include "authq/protocol.h"

#include <openssl/crypto.h>
#include <openssl/evp.h>
#include <openssl/hmac.h>

#include <chrono>
#include <cmath>
#include <sstream>

#include "authq/errors.h"

namespace authq {

namespace {

std::string to_hex(const unsigned char *data, std::size_t len) {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (std::size_t i = 0; i < len; i++) {
        out.push_back(kHex[data[i] >> 4]);
        out.push_back(kHex[data[i] & 0xf]);
    }
    return out;
}

// Keyed, so small seeds cannot be recovered by enumeration.
std::string seed_digest(const Authenticator &auth, std::uint64_t seed) {
    return auth.sign("authq-seed:" + std::to_string(seed)).substr(0, 16);
}

bool valid_token(std::string_view s) {
    if (s.empty()) {
        return false;
    }
    for (char c : s) {
        if (std::isspace(static_cast<unsigned char>(c)) || c == '#') {
            return false;
        }
    }
    return true;
}

constexpr std::string_view kPublicHeader = "# authq public program";

}  // namespace

Authenticator::Authenticator(std::string key) : key_(std::move(key)) {
    if (key_.empty()) {
        throw ArgumentError("authenticator key is missing");
    }
}

std::string Authenticator::sign(std::string_view bytes) const {
    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    HMAC(EVP_sha256(), key_.data(), static_cast<int>(key_.size()), reinterpret_cast<const unsigned char *>(bytes.data()),
         bytes.size(), md, &len);
    return to_hex(md, len);
}

bool Authenticator::verify(std::string_view bytes, std::string_view signature_hex) const {
    std::string expected = sign(bytes);
    if (expected.size() != signature_hex.size()) {
        return false;
    }
    return CRYPTO_memcmp(expected.data(), signature_hex.data(), expected.size()) == 0;
}

namespace {

std::string header_text(const PublicProgram &pub) {
    std::ostringstream out;
    out << kPublicHeader << '\n'
        << "program_id " << pub.program_id << '\n'
        << "m " << pub.m << '\n'
        << "n " << pub.n << '\n'
        << "k " << pub.k << '\n';
    for (const auto &[key, value] : pub.metadata) {
        out << "meta " << key << ' ' << value << '\n';
    }
    return out.str();
}

}  // namespace

std::string PublicProgram::signed_payload() const {
    if (!source_payload.empty()) {
        return source_payload;
    }
    return header_text(*this) + serialize(sequence);
}

std::string serialize(const PublicProgram &pub) {
    return header_text(pub) + "signature " + pub.signature + "\n" + serialize(pub.sequence);
}

PublicProgram parse_public_program(std::string_view text) {
    PublicProgram pub;
    std::string payload;
    std::string body;
    bool in_body = false;
    bool have_sig = false;
    bool have[3] = {false, false, false};
    std::size_t line_no = 0;
    std::size_t pos = 0;
    std::size_t body_first_line = 0;
    while (pos < text.size()) {
        auto nl = text.find('\n', pos);
        std::size_t end = nl == std::string_view::npos ? text.size() : nl + 1;
        std::string_view raw = text.substr(pos, end - pos);
        pos = end;
        line_no++;
        if (in_body) {
            payload += raw;
            body += raw;
            continue;
        }
        std::string_view line = raw;
        while (!line.empty() && (line.back() == '\n' || line.back() == '\r')) {
            line.remove_suffix(1);
        }
        std::istringstream in{std::string(line)};
        std::string key;
        in >> key;
        if (key == "signature") {
            if (have_sig || !(in >> pub.signature)) {
                throw ParseError(line_no, "malformed or duplicate signature line");
            }
            have_sig = true;
            continue;
        }
        payload += raw;
        if (key.empty() || key[0] == '#') {
            continue;
        }
        if (key == "program_id") {
            if (!(in >> pub.program_id)) {
                throw ParseError(line_no, "missing program id");
            }
        } else if (key == "m" || key == "n" || key == "k") {
            std::size_t v = 0;
            if (!(in >> v)) {
                throw ParseError(line_no, "malformed width '" + key + "'");
            }
            (key == "m" ? pub.m : key == "n" ? pub.n : pub.k) = v;
            have[key == "m" ? 0 : key == "n" ? 1 : 2] = true;
        } else if (key == "meta") {
            std::string mk, mv;
            if (!(in >> mk >> mv)) {
                throw ParseError(line_no, "malformed meta line");
            }
            pub.metadata[mk] = mv;
        } else if (key == "qubits") {
            in_body = true;
            body_first_line = line_no;
            body += raw;
        } else {
            throw ParseError(line_no, "unknown public program field '" + key + "'");
        }
    }
    if (!have_sig) {
        throw ParseError(line_no, "public program has no signature line");
    }
    if (!in_body) {
        throw ParseError(line_no, "public program has no gate sequence block");
    }
    if (pub.program_id.empty() || !have[0] || !have[1] || !have[2]) {
        throw ParseError(line_no, "public program header is incomplete");
    }
    try {
        pub.sequence = parse(body);
    } catch (const ParseError &e) {
        throw ParseError(body_first_line + e.line() - 1, std::string("in gate sequence block: ") + e.what());
    }
    if (pub.sequence.num_qubits() != pub.m + pub.n) {
        throw WidthError("public program declares m + n = " + std::to_string(pub.m + pub.n) + " but the sequence has " +
                         std::to_string(pub.sequence.num_qubits()) + " qubits");
    }
    pub.source_payload = std::move(payload);
    return pub;
}

PublishResult programmer_publish(const ProgramSpec &spec, const ShuffleConfig &shuffle_cfg,
                                 const Authenticator &authenticator, const std::string &program_id) {
    if (!valid_token(program_id)) {
        throw ArgumentError("program id must be a non-empty token without whitespace");
    }
    GateSequence xg = build_pga(spec);
    KeySecrets secrets = make_key_secrets(spec.m, derive_seed(spec.seed, "keys"));
    GateSequence xgp = encode(xg, secrets);
    PublishResult r{{}, std::move(secrets)};
    r.pub.program_id = program_id;
    r.pub.sequence = shuffle(xgp, shuffle_cfg);
    r.pub.m = spec.m;
    r.pub.n = spec.n;
    r.pub.k = spec.k;
    r.pub.metadata["gates"] = std::to_string(r.pub.sequence.size());
    r.pub.metadata["shuffle_steps"] = std::to_string(shuffle_cfg.steps);
    r.pub.metadata["shuffle_q"] = std::to_string(shuffle_cfg.resolve_target_length(xgp.size()));
    r.pub.metadata["seed_digest"] = seed_digest(authenticator, spec.seed);
    r.pub.metadata["shuffle_seed_digest"] = seed_digest(authenticator, shuffle_cfg.seed);
    r.pub.signature = authenticator.sign(r.pub.signed_payload());
    return r;
}

void KeyLedger::record(const std::string &program_id, const std::string &user_id) {
    std::lock_guard lock(mu_);
    auto &users = issued_[program_id];
    if (users[user_id]) {
        throw ArgumentError("user '" + user_id + "' already holds a key for program '" + program_id + "'");
    }
    users[user_id] = true;
}

bool KeyLedger::issued(const std::string &program_id, const std::string &user_id) const {
    std::lock_guard lock(mu_);
    auto it = issued_.find(program_id);
    if (it == issued_.end()) {
        return false;
    }
    auto u = it->second.find(user_id);
    return u != it->second.end() && u->second;
}

std::vector<std::string> KeyLedger::users(const std::string &program_id) const {
    std::lock_guard lock(mu_);
    std::vector<std::string> out;
    if (auto it = issued_.find(program_id); it != issued_.end()) {
        for (const auto &[user, flag] : it->second) {
            if (flag) {
                out.push_back(user);
            }
        }
    }
    return out;
}

KeyState programmer_issue_key(KeyLedger &ledger, const PublicProgram &pub, const KeySecrets &secrets,
                              const std::string &user_id, std::uint64_t index) {
    // Validate before recording so a bad index does not burn the user's slot.
    KeyState key = issue_key(index, secrets, pub.m, pub.k);
    ledger.record(pub.program_id, user_id);
    key.program_id = pub.program_id;
    return key;
}

namespace {

void require_authentic(const PublicProgram &pub, const Authenticator &authenticator) {
    if (!authenticator.verify(pub.signed_payload(), pub.signature)) {
        throw AuthenticityError("public program '" + pub.program_id + "' failed signature verification");
    }
}

}  // namespace

RunResult user_execute(const PublicProgram &pub, const KeyState &key, const StateVector &input,
                       const Authenticator &authenticator, double tol) {
    require_authentic(pub, authenticator);
    if (!key.program_id.empty() && key.program_id != pub.program_id) {
        throw ArgumentError("key belongs to program '" + key.program_id + "', not '" + pub.program_id + "'");
    }
    if (key.state.num_qubits() != pub.m || input.num_qubits() != pub.n) {
        throw WidthError("user_execute: key/input widths do not match m = " + std::to_string(pub.m) +
                         ", n = " + std::to_string(pub.n));
    }
    return run(pub.sequence, key.state, input, tol);
}

DensityMatrix user_execute_mixed(const PublicProgram &pub, std::span<const StateVector> key_ensemble,
                                 const StateVector &input, const Authenticator &authenticator) {
    require_authentic(pub, authenticator);
    if (key_ensemble.empty()) {
        throw ArgumentError("user_execute_mixed: empty key ensemble");
    }
    std::vector<std::size_t> input_qubits(pub.n);
    for (std::size_t q = 0; q < pub.n; q++) {
        input_qubits[q] = pub.m + q;
    }
    const auto dim = static_cast<Eigen::Index>(std::size_t{1} << pub.n);
    Matrix acc = Matrix::Zero(dim, dim);
    for (const auto &key : key_ensemble) {
        if (key.num_qubits() != pub.m) {
            throw WidthError("user_execute_mixed: key width does not match m");
        }
        StateVector joint = apply(pub.sequence, tensor(key, input));
        acc += partial_trace(joint, input_qubits).matrix();
    }
    return DensityMatrix(pub.n, acc / static_cast<double>(key_ensemble.size()));
}

AttackReport eavesdropper_report(const PublicProgram &pub, std::span<const KeyState> stolen,
                                 const AttackTarget &target, const AttackBudget &budget) {
    for (const auto &k : stolen) {
        if (k.program_id != pub.program_id) {
            throw ArgumentError("stolen key belongs to program '" + k.program_id + "', not '" + pub.program_id + "'");
        }
        if (k.state.num_qubits() != pub.m) {
            throw WidthError("stolen key width does not match m");
        }
    }
    if (target.key.num_qubits() != pub.m) {
        throw WidthError("target key width does not match m");
    }
    if (target.index >= target.programs.size()) {
        throw ArgumentError("target index outside the program family");
    }
    const std::size_t m = pub.m;
    const std::size_t n = pub.n;
    AttackReport rep;
    rep.m = m;
    Rng rng(budget.seed);

    std::vector<StateVector> probes;
    Rng probe_rng(derive_seed(budget.seed, "probes"));
    for (std::size_t p = 0; p < std::max<std::size_t>(budget.probe_inputs, 1); p++) {
        probes.push_back(StateVector::random(n, probe_rng));
    }
    std::vector<std::vector<StateVector>> expected(target.programs.size());
    for (std::size_t j = 0; j < target.programs.size(); j++) {
        for (const auto &phi : probes) {
            expected[j].push_back(apply(target.programs[j], phi));
        }
    }

    // (a) random basis guesses, accepted with probability |<phi_i|b>|^2.
    const std::uint64_t dim = std::uint64_t{1} << m;
    std::uniform_int_distribution<std::uint64_t> pick(0, dim - 1);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (std::size_t t = 0; t < budget.guess_trials; t++) {
        auto b = pick(rng);
        double p = std::norm(target.key.amplitudes()[static_cast<Eigen::Index>(b)]);
        if (coin(rng) < p) {
            rep.guess_successes++;
        }
    }
    rep.guess_trials = budget.guess_trials;
    rep.guess_rate = budget.guess_trials ? static_cast<double>(rep.guess_successes) / budget.guess_trials : 0.0;
    rep.guess_expected = 1.0 / static_cast<double>(dim);

    // (b) exhaustive search over computational-basis keys.
    std::uint64_t limit = std::min<std::uint64_t>(dim, budget.max_candidates);
    if (m > budget.max_exhaustive_qubits) {
        limit = std::min<std::uint64_t>(limit, std::uint64_t{1} << budget.max_exhaustive_qubits);
    }
    if (limit < dim) {
        rep.partial = true;
        rep.partial_reason = "exhaustive search stopped after " + std::to_string(limit) + " of " +
                             std::to_string(dim) + " candidates";
    }
    auto start = std::chrono::steady_clock::now();
    for (std::uint64_t b = 0; b < limit; b++) {
        StateVector candidate = StateVector::basis(m, b);
        rep.candidates_tested++;
        std::vector<bool> alive(target.programs.size(), true);
        for (std::size_t p = 0; p < probes.size(); p++) {
            auto r = run(pub.sequence, candidate, probes[p], budget.tol);
            for (std::size_t j = 0; j < alive.size(); j++) {
                alive[j] = alive[j] && !r.entangled() && fidelity(*r.output, expected[j][p]) >= 1 - budget.tol;
            }
        }
        for (std::size_t j = 0; j < alive.size(); j++) {
            if (alive[j]) {
                rep.working_keys.emplace_back(b, j);
                break;
            }
        }
    }
    rep.exhaustive_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    // (c) stolen-key replay against the target program.
    std::vector<std::size_t> input_qubits(n);
    for (std::size_t q = 0; q < n; q++) {
        input_qubits[q] = m + q;
    }
    const StateVector &phi = probes[0];
    const StateVector &want = expected[target.index][0];
    for (std::size_t s = 0; s < stolen.size(); s++) {
        ReplayOutcome o;
        o.stolen_position = s;
        o.stolen_index = stolen[s].issued_index;
        auto r = run(pub.sequence, stolen[s].state, phi, budget.tol);
        o.entangled = r.entangled();
        o.fidelity_to_target = fidelity(partial_trace(r.joint, input_qubits), want);
        if (o.stolen_index && *o.stolen_index < target.programs.size()) {
            o.predicted = fidelity(want, expected[*o.stolen_index][0]);
        }
        rep.replays.push_back(o);
    }
    return rep;
}

std::string to_text(const AttackReport &r) {
    std::ostringstream out;
    out.precision(17);
    out << "m " << r.m << '\n'
        << "guess_trials " << r.guess_trials << '\n'
        << "guess_successes " << r.guess_successes << '\n'
        << "guess_rate " << r.guess_rate << '\n'
        << "guess_expected " << r.guess_expected << '\n'
        << "candidates_tested " << r.candidates_tested << '\n'
        << "working_keys " << r.working_keys.size() << '\n';
    for (const auto &[cand, prog] : r.working_keys) {
        out << "working_key " << cand << " program " << prog << '\n';
    }
    out << "exhaustive_seconds " << r.exhaustive_seconds << '\n';
    for (const auto &o : r.replays) {
        out << "replay " << o.stolen_position << " fidelity_to_target " << o.fidelity_to_target << " entangled "
            << (o.entangled ? 1 : 0);
        if (o.predicted) {
            out << " predicted " << *o.predicted;
        }
        out << '\n';
    }
    out << "partial " << (r.partial ? 1 : 0) << '\n';
    if (r.partial) {
        out << "partial_reason " << r.partial_reason << '\n';
    }
    return out.str();
}

}  // namespace authq
