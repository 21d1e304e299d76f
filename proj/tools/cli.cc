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

#include "cli.h"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>

#include "authq/decompose.h"
#include "authq/errors.h"
#include "authq/io.h"
#include "authq/keying.h"
#include "authq/pga.h"
#include "authq/protocol.h"
#include "authq/reduction.h"
#include "authq/shuffler.h"
#include "authq/simulator.h"

namespace authq::cli {

namespace {

namespace fs = std::filesystem;

struct Options {
    std::uint64_t seed = 0;
    double tol = kDefaultTol;
    std::size_t samples = 0;
    std::optional<std::size_t> q;
    std::optional<std::size_t> steps;
    std::size_t m = 0;
    std::size_t n = 0;
    std::size_t k = 0;
    bool allow_secret = false;
    std::string output;
    std::string secrets_out;
    std::string used_key_out;
    std::string key_out;
    std::string auth_key;
    std::string program_id;
    std::string ledger;
    std::string user;
    std::uint64_t index = 0;
    std::size_t max_exhaustive = 4;
    std::vector<std::string> inputs;
};

std::string fmt_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    std::string s = buf;
    if (s.find_first_of(".eEn") == std::string::npos) {
        s += ".0";
    }
    return s;
}

// Holds the invocation state and writes results with the secret-handling rules.
class Session {
   public:
    Session(const Options &opt, std::ostream &out) : opt_(opt), out_(out) {}

    std::string read_input(std::size_t i) const { return read_file(opt_.inputs.at(i)); }

    void emit(const std::string &text, const std::string &path) const {
        const bool secret = is_secret_text(text);
        if (path.empty() || path == "-") {
            if (secret && !opt_.allow_secret) {
                throw ArgumentError("refusing to print secret material to standard output; use -o FILE or --allow-secret");
            }
            out_ << text;
            return;
        }
        for (const auto &in : opt_.inputs) {
            std::error_code ec;
            if (fs::exists(path) && fs::equivalent(in, path, ec)) {
                throw ArgumentError("output '" + path + "' would overwrite input '" + in + "'");
            }
        }
        if (fs::exists(path) && !opt_.allow_secret && is_secret_text(read_file(path))) {
            throw ArgumentError("refusing to overwrite SECRET-marked file '" + path + "' without --allow-secret");
        }
        write_file(path, text);
    }

    // Writes `text` only when a path was requested.
    void emit_optional(const std::string &text, const std::string &path) const {
        if (!path.empty()) {
            emit(text, path);
        }
    }

    void line(const std::string &s) const { out_ << s << '\n'; }

    const Options &opt() const { return opt_; }

   private:
    const Options &opt_;
    std::ostream &out_;
};

std::string secret_wrap(const std::string &label, const std::string &text) {
    return std::string(kSecretMarker) + " " + label + "\n" + text;
}

// Secret-marked inputs keep their marker through sequence transforms.
std::string inherit_marker(const std::string &source, const std::string &label, const std::string &text) {
    return is_secret_text(source) ? secret_wrap(label, text) : text;
}

Authenticator make_authenticator(const Options &opt) {
    if (opt.auth_key.empty()) {
        throw ArgumentError("no authenticator key: pass --auth-key or set AUTHQ_AUTH_KEY");
    }
    return Authenticator(opt.auth_key);
}

ShuffleConfig shuffle_config(const Options &opt) {
    ShuffleConfig cfg;
    cfg.seed = opt.seed;
    if (opt.steps) {
        cfg.steps = *opt.steps;
    }
    cfg.target_length = opt.q;
    return cfg;
}

// Ledger file: one `program user` line per issued key.
void ledger_record(const std::string &path, const std::string &program, const std::string &user) {
    KeyLedger ledger;
    if (fs::exists(path)) {
        std::istringstream in(read_file(path));
        std::string p, u;
        while (in >> p >> u) {
            ledger.record(p, u);
        }
    }
    ledger.record(program, user);
    std::ofstream out(path, std::ios::app);
    out << program << ' ' << user << '\n';
}

void cmd_build_pga(const Session &s) {
    auto spec = load_manifest(s.opt().inputs.at(0));
    for (const auto &w : lint(spec)) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    s.emit(secret_wrap("authq programmable gate array x(G)", serialize(build_pga(spec))), s.opt().output);
}

void cmd_encode(const Session &s) {
    const auto &opt = s.opt();
    auto xg = parse(s.read_input(0));
    if (opt.m == 0) {
        throw ArgumentError("encode needs --m (key-register width)");
    }
    if (opt.secrets_out.empty()) {
        throw ArgumentError("encode needs --secrets-out FILE for L and R");
    }
    auto secrets = make_key_secrets(opt.m, opt.seed);
    auto xgp = encode(xg, secrets);
    s.emit(serialize_secrets(secrets), opt.secrets_out);
    s.emit(secret_wrap("authq encoded array x(G'), unshuffled", serialize(xgp)), opt.output);
}

void cmd_issue_key(const Session &s) {
    const auto &opt = s.opt();
    auto secrets = parse_secrets(s.read_input(0));
    if (opt.k == 0) {
        throw ArgumentError("issue-key needs --k (index-register width)");
    }
    auto key = issue_key(opt.index, secrets, secrets.m(), opt.k);
    key.program_id = opt.program_id;
    if (!opt.ledger.empty()) {
        if (opt.user.empty() || opt.program_id.empty()) {
            throw ArgumentError("--ledger needs --user and --program-id");
        }
        ledger_record(opt.ledger, opt.program_id, opt.user);
    }
    s.emit(serialize_key(key.user_copy()), opt.output);
}

void cmd_shuffle(const Session &s) {
    auto text = s.read_input(0);
    auto out = shuffle(parse(text), shuffle_config(s.opt()));
    s.emit(inherit_marker(text, "authq shuffled sequence", serialize(out)), s.opt().output);
}

void cmd_publish(const Session &s) {
    const auto &opt = s.opt();
    if (opt.secrets_out.empty()) {
        throw ArgumentError("publish needs --secrets-out FILE for L and R");
    }
    auto spec = load_manifest(opt.inputs.at(0));
    for (const auto &w : lint(spec)) {
        std::fprintf(stderr, "warning: %s\n", w.c_str());
    }
    auto auth = make_authenticator(opt);
    auto r = programmer_publish(spec, shuffle_config(opt), auth, opt.program_id.empty() ? "program" : opt.program_id);
    s.emit(serialize_secrets(r.secrets), opt.secrets_out);
    s.emit(serialize(r.pub), opt.output);
}

void report_run(const Session &s, const RunResult &r, const std::string &program_id, const std::string &key_label,
                const std::string &key_path) {
    const auto &opt = s.opt();
    if (r.entangled()) {
        // Not an error: this is what a wrong key looks like.
        s.line("status entangled");
        s.line("purity " + fmt_double(r.purity));
        return;
    }
    if (!key_path.empty()) {
        KeyState k{*r.used_key, std::nullopt, program_id};
        auto text = serialize_key(k);
        s.emit(text.replace(text.find("authorization key"), 17, key_label), key_path);
    }
    if (opt.output.empty()) {
        s.line("status product");
        s.line("purity " + fmt_double(r.purity));
    }
    s.emit(serialize_state(*r.output), opt.output);
}

void cmd_run(const Session &s) {
    const auto &opt = s.opt();
    auto auth = make_authenticator(opt);
    auto pub = parse_public_program(s.read_input(0));
    auto key = parse_key(s.read_input(1));
    auto input = parse_state(s.read_input(2));
    report_run(s, user_execute(pub, key, input, auth, opt.tol), pub.program_id, "used authorization key", opt.used_key_out);
}

void cmd_recycle(const Session &s) {
    const auto &opt = s.opt();
    auto auth = make_authenticator(opt);
    auto pub = parse_public_program(s.read_input(0));
    auto used = parse_key(s.read_input(1));
    auto psi = parse_state(s.read_input(2));
    // Authenticity is checked exactly as for run.
    user_execute(pub, used, StateVector::basis(pub.n, 0), auth, opt.tol);
    report_run(s, recycle(pub.sequence, used.state, psi, opt.tol), pub.program_id, "recycled authorization key", opt.key_out);
}

void cmd_check_identity(const Session &s) {
    auto v = exact_nonidentity_check(parse(s.read_input(0)), s.opt().tol);
    if (v.is_identity) {
        s.line("identity theta=" + fmt_double(std::abs(*v.theta) < s.opt().tol ? 0.0 : *v.theta));
    } else {
        s.line("non-identity residual=" + fmt_double(v.residual));
    }
}

void cmd_controlize(const Session &s) {
    auto text = s.read_input(0);
    s.emit(inherit_marker(text, "authq controlled sequence", serialize(controlize(parse(text)))), s.opt().output);
}

void cmd_overlap(const Session &s) {
    const auto &opt = s.opt();
    auto a = parse(s.read_input(0));
    auto b = parse(s.read_input(1));
    auto r = estimate_overlap(a, b, opt.samples ? opt.samples : 10000, shuffle_config(opt));
    s.emit(to_text(r), opt.output);
}

GateSequence random_single_qubit(Rng &rng) {
    const std::size_t q[] = {0};
    return sample_random_sequence(q, 1, 6, rng);
}

void cmd_reduction_demo(const Session &s) {
    const auto &opt = s.opt();
    const std::size_t trials = opt.samples ? opt.samples : 20;
    const std::size_t n = opt.n ? opt.n : 1;
    double worst_basis = 0, worst_plus = 0, worst_anc = 0;
    std::size_t g1 = 0;
    std::ostringstream out;
    for (std::size_t t = 0; t < trials; t++) {
        Rng rng(derive_seed(opt.seed, t));
        std::vector<std::size_t> qubits(n);
        for (std::size_t i = 0; i < n; i++) {
            qubits[i] = i;
        }
        GateSequence x = sample_random_sequence(qubits, n, 4 * n + 2, rng);
        if (exact_nonidentity_check(x).is_identity) {
            x.push_back(Gate::h(0));
        }
        auto vl = random_single_qubit(rng);
        auto vr = random_single_qubit(rng);
        ShuffleConfig cfg = shuffle_config(opt);
        cfg.seed = derive_seed(derive_seed(opt.seed, t), "shuffle");
        auto inst = build_modified_instance(x, vl, vr, cfg);
        auto w = plant_whitebox_attacker(inst);
        auto r = distinguish(inst, w);
        worst_basis = std::max(worst_basis, std::abs(r.p_basis - 1.0));
        worst_plus = std::max(worst_plus, std::abs(r.p_plus - 0.5));
        worst_anc = std::max(worst_anc, ancilla_overlap(inst, w));
        g1 += r.verdict == InstanceClass::g1;
    }
    out << "trials " << trials << '\n'
        << "verdict_g1 " << g1 << '\n'
        << "max_abs_p_basis_minus_1 " << fmt_double(worst_basis) << '\n'
        << "max_abs_p_plus_minus_half " << fmt_double(worst_plus) << '\n'
        << "max_ancilla_overlap " << fmt_double(worst_anc) << '\n';

    GateSequence h(1, {Gate::h(0)});
    ShuffleConfig cfg = shuffle_config(opt);
    cfg.seed = derive_seed(opt.seed, "identity");
    auto inst = build_modified_instance(GateSequence(1), h, h, cfg);
    auto keyed_h = distinguish(inst, keyed_attacker(h));
    auto keyed_i = distinguish(inst, keyed_attacker(GateSequence(1)));
    out << "identity_keyed_H p_basis " << fmt_double(keyed_h.p_basis) << " p_plus " << fmt_double(keyed_h.p_plus)
        << '\n'
        << "identity_keyed_I p_basis " << fmt_double(keyed_i.p_basis) << " p_plus " << fmt_double(keyed_i.p_plus)
        << '\n';
    s.emit(out.str(), opt.output);
}

void cmd_attack_demo(const Session &s) {
    const auto &opt = s.opt();
    const std::size_t k = opt.k ? opt.k : 1;
    const std::size_t m = opt.m ? opt.m : 3;
    const std::size_t n = opt.n ? opt.n : 1;
    ProgramSpec spec;
    spec.k = k;
    spec.m = m;
    spec.n = n;
    spec.seed = opt.seed;
    Rng rng(derive_seed(opt.seed, "programs"));
    std::vector<std::size_t> qubits(n);
    for (std::size_t i = 0; i < n; i++) {
        qubits[i] = i;
    }
    for (std::size_t i = 0; i < (std::size_t{1} << k); i++) {
        spec.programs.push_back(sample_random_sequence(qubits, n, 6 * n, rng));
    }
    sample_dummy_scramblers(spec, 4 * (m - k));
    // The demo plays every role, so a throwaway authenticator key is fine.
    Authenticator auth(opt.auth_key.empty() ? "attack-demo" : opt.auth_key);
    ShuffleConfig cfg = shuffle_config(opt);
    cfg.seed = derive_seed(opt.seed, "shuffle");
    auto r = programmer_publish(spec, cfg, auth, "attack-demo");
    std::vector<KeyState> stolen;
    for (std::uint64_t j = 1; j < spec.programs.size(); j++) {
        auto key = issue_key(j, r.secrets, m, k);
        key.program_id = r.pub.program_id;
        stolen.push_back(key);
    }
    AttackTarget target{spec.programs, 0, issue_key(0, r.secrets, m, k).state};
    AttackBudget budget;
    budget.guess_trials = opt.samples ? opt.samples : 10000;
    budget.max_exhaustive_qubits = opt.max_exhaustive;
    budget.seed = derive_seed(opt.seed, "attack");
    budget.tol = opt.tol;
    s.emit(to_text(eavesdropper_report(r.pub, stolen, target, budget)), opt.output);
}

struct Command {
    const char *name;
    const char *help;
    std::function<void(const Session &)> run;
    std::vector<std::string> positionals;
};

const std::vector<Command> &commands() {
    static const std::vector<Command> cmds = {
        {"build-pga", "Build x(G) from a program manifest (SECRET output)", cmd_build_pga, {"manifest"}},
        {"encode", "Encode x(G) with fresh L, R (SECRET outputs)", cmd_encode, {"sequence"}},
        {"issue-key", "Issue an authorization key from a secrets file", cmd_issue_key, {"secrets"}},
        {"shuffle", "Randomly rewrite a sequence into an equivalent one", cmd_shuffle, {"sequence"}},
        {"publish", "Build, encode, shuffle and sign a public program", cmd_publish, {"manifest"}},
        {"run", "Run a public program on key (x) input", cmd_run, {"program", "key", "input"}},
        {"recycle", "Run the inverse program to regenerate a used key", cmd_recycle, {"program", "used_key", "input"}},
        {"check-identity", "Decide whether a sequence is exp(i theta) I", cmd_check_identity, {"sequence"}},
        {"controlize", "Add a control qubit in front of a sequence", cmd_controlize, {"sequence"}},
        {"overlap", "Estimate the shuffle-distribution overlap ratio", cmd_overlap, {"a", "b"}},
        {"reduction-demo", "Exercise the distinguisher with a planted attacker", cmd_reduction_demo, {}},
        {"attack-demo", "Run baseline eavesdropper attacks on a fresh instance", cmd_attack_demo, {}},
    };
    return cmds;
}

std::string usage() {
    std::ostringstream u;
    u << "usage: authq <subcommand> [options]\n\nsubcommands:\n";
    for (const auto &c : commands()) {
        char buf[128];
        std::snprintf(buf, sizeof(buf), "  %-16s %s\n", c.name, c.help);
        u << buf;
    }
    u << "\nrun 'authq <subcommand> --help' for options\n";
    return u.str();
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
    if (args.empty()) {
        err << usage();
        return kUsageExit;
    }
    if (args[0] == "--help" || args[0] == "-h" || args[0] == "help") {
        out << usage();
        return 0;
    }
    const auto &cmds = commands();
    auto it = std::find_if(cmds.begin(), cmds.end(), [&](const Command &c) { return args[0] == c.name; });
    if (it == cmds.end()) {
        err << "authq: unknown subcommand '" << args[0] << "'\n" << usage();
        return kUsageExit;
    }

    Options opt;
    CLI::App app{it->help, std::string("authq ") + it->name};
    app.add_option("--seed", opt.seed, "Root seed");
    app.add_option("--tol", opt.tol, "Numerical tolerance");
    app.add_option("--samples", opt.samples, "Sample or trial count");
    app.add_option("--q", opt.q, "Maximum shuffled length");
    app.add_option("--steps", opt.steps, "Rewrite steps per shuffle");
    app.add_option("--m", opt.m, "Key-register width");
    app.add_option("--n", opt.n, "Input-register width");
    app.add_option("--k", opt.k, "Index-register width");
    app.add_flag("--allow-secret", opt.allow_secret, "Permit secret output on stdout or over SECRET files");
    app.add_option("-o,--output", opt.output, "Output file (default: standard output)");
    app.add_option("--secrets-out", opt.secrets_out, "File for L/R secrets");
    app.add_option("--used-key-out", opt.used_key_out, "File for the used key (run)");
    app.add_option("--key-out", opt.key_out, "File for the recycled key (recycle)");
    app.add_option("--auth-key", opt.auth_key, "Authenticator key")->envname("AUTHQ_AUTH_KEY");
    app.add_option("--program-id", opt.program_id, "Program identifier");
    app.add_option("--index", opt.index, "Program index for issue-key");
    app.add_option("--ledger", opt.ledger, "Issuance ledger file (issue-key)");
    app.add_option("--user", opt.user, "User id for the ledger");
    app.add_option("--max-exhaustive", opt.max_exhaustive, "Largest m searched exhaustively (attack-demo)");
    opt.inputs.resize(it->positionals.size());
    for (std::size_t i = 0; i < it->positionals.size(); i++) {
        app.add_option(it->positionals[i], opt.inputs[i], it->positionals[i] + " file")->required();
    }

    std::vector<std::string> rest(args.rbegin(), args.rend() - 1);
    try {
        app.parse(rest);
    } catch (const CLI::CallForHelp &) {
        out << app.help();
        return 0;
    } catch (const CLI::ParseError &e) {
        err << "authq " << it->name << ": " << e.what() << '\n';
        return kUsageExit;
    }

    try {
        Session session(opt, out);
        it->run(session);
    } catch (const Error &e) {
        err << "authq " << it->name << ": " << e.what() << '\n';
        return static_cast<int>(e.category());
    } catch (const std::exception &e) {
        err << "authq " << it->name << ": " << e.what() << '\n';
        return 1;
    }
    return 0;
}

}  // namespace authq::cli
