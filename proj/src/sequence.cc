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

#include "authq/sequence.h"

#include <openssl/sha.h>

#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

#include "authq/errors.h"

namespace authq {

GateSequence::GateSequence(std::size_t num_qubits) : num_qubits_(num_qubits) {
    if (num_qubits == 0) {
        throw WidthError("gate sequence needs at least one qubit");
    }
}

GateSequence::GateSequence(std::size_t num_qubits, std::vector<Gate> gates) : GateSequence(num_qubits) {
    for (const auto &g : gates) {
        validate_gate(g, num_qubits_);
    }
    gates_ = std::move(gates);
}

void GateSequence::push_back(const Gate &g) {
    validate_gate(g, num_qubits_);
    gates_.push_back(g);
}

void GateSequence::append(std::span<const Gate> gates) {
    for (const auto &g : gates) {
        validate_gate(g, num_qubits_);
    }
    gates_.insert(gates_.end(), gates.begin(), gates.end());
}

void validate_gate(const Gate &g, std::size_t num_qubits) {
    for (auto q : g.targets()) {
        if (q >= num_qubits) {
            throw WidthError(std::string(kind_name(g.kind)) + " target " + std::to_string(q) + " out of range for " +
                             std::to_string(num_qubits) + " qubits");
        }
    }
    if (g.kind == GateKind::CNOT && g.qubits[0] == g.qubits[1]) {
        throw WidthError("CNOT control and target coincide on qubit " + std::to_string(g.qubits[0]));
    }
    if (kind_has_angle(g.kind) && !std::isfinite(g.angle)) {
        throw ArgumentError(std::string(kind_name(g.kind)) + " angle is not finite");
    }
}

GateSequence adjoint(const GateSequence &seq) {
    std::vector<Gate> out;
    out.reserve(seq.size());
    for (auto it = seq.gates().rbegin(); it != seq.gates().rend(); ++it) {
        out.push_back(it->inverse());
    }
    return GateSequence(seq.num_qubits(), std::move(out));
}

GateSequence concat(const GateSequence &a, const GateSequence &b) {
    if (a.num_qubits() != b.num_qubits()) {
        throw WidthError("concat: qubit counts differ (" + std::to_string(a.num_qubits()) + " vs " +
                         std::to_string(b.num_qubits()) + ")");
    }
    GateSequence out = a;
    out.append(b.gates());
    return out;
}

GateSequence embed(const GateSequence &seq, std::size_t num_qubits, std::span<const std::size_t> qubit_map) {
    if (qubit_map.size() != seq.num_qubits()) {
        throw WidthError("embed: qubit map has " + std::to_string(qubit_map.size()) + " entries for " +
                         std::to_string(seq.num_qubits()) + " qubits");
    }
    GateSequence out(num_qubits);
    for (Gate g : seq.gates()) {
        for (std::size_t i = 0; i < g.arity(); i++) {
            g.qubits[i] = qubit_map[g.qubits[i]];
        }
        out.push_back(g);
    }
    return out;
}

GateSequence embed_at(const GateSequence &seq, std::size_t num_qubits, std::size_t offset) {
    std::vector<std::size_t> map(seq.num_qubits());
    for (std::size_t q = 0; q < map.size(); q++) {
        map[q] = q + offset;
    }
    return embed(seq, num_qubits, map);
}

namespace {

std::string format_angle(double theta) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", theta);
    return buf;
}

std::string format_canonical_angle(GateKind kind, double theta) {
    double period = kind_angle_period(kind);
    double r = normalize_angle(kind, theta);
    r = std::round(r * 1e12) / 1e12;
    if (r >= std::round(period * 1e12) / 1e12) {
        r = 0.0;
    }
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12f", r);
    return buf;
}

void write_gate(std::ostringstream &out, const Gate &g, bool canonical) {
    out << kind_name(g.kind);
    if (kind_has_angle(g.kind)) {
        out << ' ' << (canonical ? format_canonical_angle(g.kind, g.angle) : format_angle(g.angle));
    }
    for (auto q : g.targets()) {
        out << ' ' << q;
    }
    out << '\n';
}

std::string write_sequence(const GateSequence &seq, bool canonical) {
    std::ostringstream out;
    out << "qubits " << seq.num_qubits() << '\n';
    for (const auto &g : seq.gates()) {
        write_gate(out, g, canonical);
    }
    return out.str();
}

std::vector<std::string_view> split_ws(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) {
            i++;
        }
        std::size_t j = i;
        while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j]))) {
            j++;
        }
        if (j > i) {
            out.push_back(line.substr(i, j - i));
        }
        i = j;
    }
    return out;
}

bool parse_double(std::string_view s, double &out) {
    if (s.empty()) {
        return false;
    }
    std::string tmp(s);
    char *end = nullptr;
    out = std::strtod(tmp.c_str(), &end);
    return end == tmp.c_str() + tmp.size();
}

// Accepts a decimal literal or [-][N*]pi[/D].
bool parse_angle(std::string_view s, double &out) {
    if (parse_double(s, out)) {
        return true;
    }
    double sign = 1.0;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        sign = s[0] == '-' ? -1.0 : 1.0;
        s.remove_prefix(1);
    }
    double numer = 1.0;
    auto star = s.find('*');
    if (star != std::string_view::npos) {
        if (!parse_double(s.substr(0, star), numer)) {
            return false;
        }
        s.remove_prefix(star + 1);
    }
    if (s.substr(0, 2) != "pi") {
        return false;
    }
    s.remove_prefix(2);
    double denom = 1.0;
    if (!s.empty()) {
        if (s[0] != '/' || !parse_double(s.substr(1), denom) || denom == 0.0) {
            return false;
        }
    }
    out = sign * numer * std::numbers::pi / denom;
    return std::isfinite(out);
}

bool parse_index(std::string_view s, std::size_t &out) {
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
    return ec == std::errc() && ptr == s.data() + s.size();
}

std::string upper(std::string_view s) {
    std::string out(s);
    for (auto &c : out) {
        c = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    }
    return out;
}

}  // namespace

std::string serialize(const GateSequence &seq) { return write_sequence(seq, false); }

std::string canonical_text(const GateSequence &seq) { return write_sequence(seq, true); }

GateSequence parse(std::string_view text) {
    std::size_t line_no = 0;
    std::size_t num_qubits = 0;
    std::vector<Gate> gates;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        auto nl = text.find('\n', pos);
        std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
        pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
        line_no++;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        auto tokens = split_ws(line);
        if (tokens.empty()) {
            continue;
        }
        if (num_qubits == 0) {
            if (tokens.size() != 2 || upper(tokens[0]) != "QUBITS" || !parse_index(tokens[1], num_qubits) ||
                num_qubits == 0) {
                throw ParseError(line_no, "expected header 'qubits N' with N >= 1");
            }
            continue;
        }
        auto kind = kind_from_name(upper(tokens[0]));
        if (!kind) {
            throw ParseError(line_no, "unknown gate kind '" + std::string(tokens[0]) + "'");
        }
        Gate g{*kind, {0, 0}, 0.0};
        std::size_t next = 1;
        if (kind_has_angle(*kind)) {
            if (tokens.size() < 2 + kind_arity(*kind) || !parse_angle(tokens[1], g.angle)) {
                throw ParseError(line_no, "missing or malformed angle for " + std::string(kind_name(*kind)));
            }
            next = 2;
        }
        if (tokens.size() - next != kind_arity(*kind)) {
            throw ParseError(line_no, std::string(kind_name(*kind)) + " takes " + std::to_string(kind_arity(*kind)) +
                                          " target(s), got " + std::to_string(tokens.size() - next));
        }
        for (std::size_t i = 0; i < kind_arity(*kind); i++) {
            if (!parse_index(tokens[next + i], g.qubits[i])) {
                throw ParseError(line_no, "malformed target '" + std::string(tokens[next + i]) + "'");
            }
            if (g.qubits[i] >= num_qubits) {
                throw ParseError(line_no, "target " + std::to_string(g.qubits[i]) + " out of range for " +
                                              std::to_string(num_qubits) + " qubits");
            }
        }
        if (*kind == GateKind::CNOT && g.qubits[0] == g.qubits[1]) {
            throw ParseError(line_no, "CNOT control and target coincide");
        }
        gates.push_back(g);
    }
    if (num_qubits == 0) {
        throw ParseError(line_no, "missing 'qubits N' header");
    }
    return GateSequence(num_qubits, std::move(gates));
}

std::string SequenceDigest::hex() const {
    static constexpr char kHex[] = "0123456789abcdef";
    std::string out;
    out.reserve(bytes.size() * 2);
    for (auto b : bytes) {
        out.push_back(kHex[b >> 4]);
        out.push_back(kHex[b & 0xf]);
    }
    return out;
}

SequenceDigest digest(const GateSequence &seq) {
    auto text = canonical_text(seq);
    SequenceDigest d;
    SHA256(reinterpret_cast<const unsigned char *>(text.data()), text.size(), d.bytes.data());
    return d;
}

}  // namespace authq
