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

#include "authq/io.h"

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>

#include "authq/errors.h"

namespace authq {

bool is_secret_text(std::string_view text) { return text.substr(0, kSecretMarker.size()) == kSecretMarker; }

std::string read_file(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw ArgumentError("cannot open '" + path.string() + "' for reading");
    }
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::filesystem::path &path, std::string_view text) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw ArgumentError("cannot open '" + path.string() + "' for writing");
    }
    out.write(text.data(), static_cast<std::streamsize>(text.size()));
}

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

struct LineReader {
    std::istringstream in;
    std::size_t line_no = 0;

    explicit LineReader(std::string_view text) : in{std::string(text)} {}

    // Next non-blank, non-comment line.
    bool next(std::string &line) {
        while (std::getline(in, line)) {
            line_no++;
            auto hash = line.find('#');
            std::string trimmed = hash == std::string::npos ? line : line.substr(0, hash);
            if (trimmed.find_first_not_of(" \t\r") != std::string::npos) {
                line = trimmed;
                return true;
            }
        }
        return false;
    }
};

std::string amplitude_lines(const StateVector &psi) {
    std::string out;
    for (const auto &a : psi.amplitudes()) {
        out += fmt(a.real()) + ' ' + fmt(a.imag()) + '\n';
    }
    return out;
}

StateVector read_amplitudes(LineReader &r, std::size_t n) {
    const std::size_t dim = std::size_t{1} << n;
    Vector v(static_cast<Eigen::Index>(dim));
    std::string line;
    for (std::size_t i = 0; i < dim; i++) {
        if (!r.next(line)) {
            throw ParseError(r.line_no, "expected " + std::to_string(dim) + " amplitude lines, got " + std::to_string(i));
        }
        std::istringstream ls(line);
        double re = 0, im = 0;
        if (!(ls >> re >> im)) {
            throw ParseError(r.line_no, "malformed amplitude line");
        }
        v[static_cast<Eigen::Index>(i)] = Complex(re, im);
    }
    if (std::abs(v.squaredNorm() - 1.0) > 1e-8) {
        throw ParseError(r.line_no, "amplitudes are not normalized");
    }
    return StateVector(n, std::move(v));
}

std::size_t read_field(LineReader &r, const std::string &name) {
    std::string line;
    if (!r.next(line)) {
        throw ParseError(r.line_no, "missing '" + name + "' line");
    }
    std::istringstream ls(line);
    std::string key;
    std::size_t v = 0;
    if (!(ls >> key >> v) || key != name) {
        throw ParseError(r.line_no, "expected '" + name + " <value>'");
    }
    return v;
}

}  // namespace

std::string serialize_state(const StateVector &psi) {
    return "# authq state\nqubits " + std::to_string(psi.num_qubits()) + "\n" + amplitude_lines(psi);
}

StateVector parse_state(std::string_view text) {
    LineReader r(text);
    std::size_t n = read_field(r, "qubits");
    if (n == 0 || n > kMaxStateQubits) {
        throw ParseError(r.line_no, "state width out of range");
    }
    return read_amplitudes(r, n);
}

std::string serialize_key(const KeyState &key) {
    return std::string(kSecretMarker) + " authq authorization key\nprogram " +
           (key.program_id.empty() ? std::string("-") : key.program_id) + "\nqubits " +
           std::to_string(key.state.num_qubits()) + "\n" + amplitude_lines(key.state);
}

KeyState parse_key(std::string_view text) {
    if (!is_secret_text(text)) {
        throw ParseError(1, "key file lacks the SECRET marker");
    }
    LineReader r(text);
    std::string line;
    if (!r.next(line)) {
        throw ParseError(r.line_no, "empty key file");
    }
    std::istringstream ls(line);
    std::string key, id;
    if (!(ls >> key >> id) || key != "program") {
        throw ParseError(r.line_no, "expected 'program <id>'");
    }
    std::size_t n = read_field(r, "qubits");
    if (n == 0 || n > kMaxStateQubits) {
        throw ParseError(r.line_no, "key width out of range");
    }
    return {read_amplitudes(r, n), std::nullopt, id == "-" ? std::string() : id};
}

std::string serialize_secrets(const KeySecrets &secrets) {
    return std::string(kSecretMarker) + " authq key secrets\nseed " + std::to_string(secrets.seed) + "\n[left]\n" +
           serialize(secrets.left) + "[right]\n" + serialize(secrets.right);
}

namespace {

// Splits `[name]` sections; text before the first section goes under "".
std::map<std::string, std::string> sections(std::string_view text) {
    std::map<std::string, std::string> out;
    std::string current;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (line.size() >= 2 && line.front() == '[' && line.back() == ']') {
            current = line.substr(1, line.size() - 2);
            out[current];
            continue;
        }
        out[current] += line + '\n';
    }
    return out;
}

}  // namespace

KeySecrets parse_secrets(std::string_view text) {
    if (!is_secret_text(text)) {
        throw ParseError(1, "secrets file lacks the SECRET marker");
    }
    auto s = sections(text);
    if (!s.contains("left") || !s.contains("right")) {
        throw ParseError(1, "secrets file needs [left] and [right] sections");
    }
    KeySecrets out;
    LineReader head(s[""]);
    out.seed = read_field(head, "seed");
    out.left = parse(s["left"]);
    out.right = parse(s["right"]);
    if (out.left.num_qubits() != out.right.num_qubits()) {
        throw WidthError("secrets: L and R act on different widths");
    }
    return out;
}

ProgramSpec load_manifest(const std::filesystem::path &path) {
    const auto dir = path.parent_path();
    LineReader r(read_file(path));
    ProgramSpec spec;
    std::map<std::size_t, std::filesystem::path> programs;
    std::optional<std::filesystem::path> m1, m2;
    std::size_t scrambler_length = 0;
    bool have_k = false, have_m = false, have_n = false;
    std::string line;
    while (r.next(line)) {
        std::istringstream ls(line);
        std::string key;
        ls >> key;
        if (key == "program") {
            std::size_t i = 0;
            std::string file;
            if (!(ls >> i >> file)) {
                throw ParseError(r.line_no, "expected 'program <index> <file>'");
            }
            programs[i] = dir / file;
        } else if (key == "m1" || key == "m2") {
            std::string file;
            if (!(ls >> file)) {
                throw ParseError(r.line_no, "expected '" + key + " <file>'");
            }
            (key == "m1" ? m1 : m2) = dir / file;
        } else {
            std::uint64_t v = 0;
            if (!(ls >> v)) {
                throw ParseError(r.line_no, "malformed value for '" + key + "'");
            }
            if (key == "k") {
                spec.k = v;
                have_k = true;
            } else if (key == "m") {
                spec.m = v;
                have_m = true;
            } else if (key == "n") {
                spec.n = v;
                have_n = true;
            } else if (key == "seed") {
                spec.seed = v;
            } else if (key == "budget") {
                spec.gate_budget = v;
            } else if (key == "scrambler_length") {
                scrambler_length = v;
            } else {
                throw ParseError(r.line_no, "unknown manifest field '" + key + "'");
            }
        }
    }
    if (!have_k || !have_m || !have_n) {
        throw ParseError(r.line_no, "manifest must declare k, m and n");
    }
    for (std::size_t i = 0; i < programs.size(); i++) {
        auto it = programs.find(i);
        if (it == programs.end()) {
            throw ParseError(r.line_no, "manifest is missing program " + std::to_string(i));
        }
        spec.programs.push_back(parse(read_file(it->second)));
    }
    if (spec.m > spec.k) {
        sample_dummy_scramblers(spec, scrambler_length ? scrambler_length : 4 * (spec.m - spec.k));
        if (m1) {
            spec.m1 = parse(read_file(*m1));
        }
        if (m2) {
            spec.m2 = parse(read_file(*m2));
        }
    }
    spec.validate();
    return spec;
}

std::string serialize_instance(const ModifiedInstance &inst, std::uint64_t seed) {
    return std::string(kSecretMarker) + " authq reduction instance\nseed " + std::to_string(seed) + "\n[base]\n" +
           serialize(inst.base) + "[v_left]\n" + serialize(inst.v_left) + "[v_right]\n" + serialize(inst.v_right) +
           "[shuffled]\n" + serialize(inst.shuffled);
}

}  // namespace authq
