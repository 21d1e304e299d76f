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

#include "authq/shuffler.h"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "authq/errors.h"
#include "authq/simulator.h"

namespace authq {

void apply_rewrite(std::vector<Gate> &gates, const Rewrite &rw) {
    auto first = gates.begin() + static_cast<std::ptrdiff_t>(rw.position);
    first = gates.erase(first, first + static_cast<std::ptrdiff_t>(rw.erase));
    gates.insert(first, rw.replacement.begin(), rw.replacement.end());
}

namespace {

constexpr double kAngleTol = 1e-12;

bool is_rotation(GateKind k) { return k == GateKind::RZ || k == GateKind::RY || k == GateKind::GPHASE; }

bool zero_mod_period(GateKind kind, double theta) {
    double r = normalize_angle(kind, theta);
    return r < kAngleTol || kind_angle_period(kind) - r < kAngleTol;
}

// A nonzero multiple of the grid strictly inside the kind's period.
double sample_grid_angle(GateKind kind, RuleContext &ctx) {
    auto steps = static_cast<long>(std::llround(kind_angle_period(kind) / ctx.angle_grid));
    if (steps < 2) {
        return ctx.angle_grid;
    }
    std::uniform_int_distribution<long> pick(1, steps - 1);
    return static_cast<double>(pick(*ctx.rng)) * ctx.angle_grid;
}

Gate sample_gate(RuleContext &ctx) {
    static constexpr std::array<GateKind, 6> kKinds{GateKind::H,  GateKind::X,      GateKind::RZ,
                                                    GateKind::RY, GateKind::GPHASE, GateKind::CNOT};
    const std::size_t kinds = ctx.num_qubits >= 2 ? kKinds.size() : kKinds.size() - 1;
    std::uniform_int_distribution<std::size_t> pick_kind(0, kinds - 1);
    std::uniform_int_distribution<std::size_t> pick_qubit(0, ctx.num_qubits - 1);
    Gate g{kKinds[pick_kind(*ctx.rng)], {0, 0}, 0.0};
    if (g.kind == GateKind::CNOT) {
        std::size_t c = pick_qubit(*ctx.rng);
        std::size_t t = pick_qubit(*ctx.rng);
        while (t == c) {
            t = pick_qubit(*ctx.rng);
        }
        g.qubits = {c, t};
    } else if (g.kind != GateKind::GPHASE) {
        g.qubits[0] = pick_qubit(*ctx.rng);
    }
    if (kind_has_angle(g.kind)) {
        g.angle = sample_grid_angle(g.kind, ctx);
    }
    return g;
}

class InsertInversePair final : public RewriteRule {
   public:
    std::string_view name() const override { return "insert-inverse-pair"; }
    std::optional<Rewrite> match(std::span<const Gate> gates, std::size_t pos, RuleContext &ctx) const override {
        if (pos > gates.size() || ctx.room < 2) {
            return std::nullopt;
        }
        Gate g = sample_gate(ctx);
        Gate inv = g.inverse();
        if (kind_has_angle(inv.kind)) {
            inv.angle = normalize_angle(inv.kind, inv.angle);
        }
        return Rewrite{std::string(name()), pos, 0, {g, inv}};
    }
};

class DeleteInversePair final : public RewriteRule {
   public:
    std::string_view name() const override { return "delete-inverse-pair"; }
    std::optional<Rewrite> match(std::span<const Gate> gates, std::size_t pos, RuleContext &) const override {
        if (pos + 1 >= gates.size() || !is_inverse_pair(gates[pos], gates[pos + 1], kAngleTol)) {
            return std::nullopt;
        }
        return Rewrite{std::string(name()), pos, 2, {}};
    }
};

class SwapDisjoint final : public RewriteRule {
   public:
    std::string_view name() const override { return "swap-disjoint"; }
    std::optional<Rewrite> match(std::span<const Gate> gates, std::size_t pos, RuleContext &) const override {
        if (pos + 1 >= gates.size()) {
            return std::nullopt;
        }
        const Gate &a = gates[pos];
        const Gate &b = gates[pos + 1];
        if (!a.disjoint_from(b) || same_gate(a, b, 0.0)) {
            return std::nullopt;
        }
        return Rewrite{std::string(name()), pos, 2, {b, a}};
    }
};

class MergeRotations final : public RewriteRule {
   public:
    std::string_view name() const override { return "merge-rotations"; }
    std::optional<Rewrite> match(std::span<const Gate> gates, std::size_t pos, RuleContext &) const override {
        if (pos + 1 >= gates.size()) {
            return std::nullopt;
        }
        const Gate &a = gates[pos];
        const Gate &b = gates[pos + 1];
        if (a.kind != b.kind || !is_rotation(a.kind)) {
            return std::nullopt;
        }
        if (a.kind != GateKind::GPHASE && a.qubits[0] != b.qubits[0]) {
            return std::nullopt;
        }
        Gate merged = a;
        merged.angle = normalize_angle(a.kind, a.angle + b.angle);
        if (zero_mod_period(a.kind, merged.angle)) {
            return Rewrite{std::string(name()), pos, 2, {}};
        }
        return Rewrite{std::string(name()), pos, 2, {merged}};
    }
};

class SplitRotation final : public RewriteRule {
   public:
    std::string_view name() const override { return "split-rotation"; }
    std::optional<Rewrite> match(std::span<const Gate> gates, std::size_t pos, RuleContext &ctx) const override {
        if (pos >= gates.size() || ctx.room < 1 || !is_rotation(gates[pos].kind)) {
            return std::nullopt;
        }
        const Gate &g = gates[pos];
        Gate first = g;
        first.angle = sample_grid_angle(g.kind, ctx);
        Gate second = g;
        second.angle = normalize_angle(g.kind, g.angle - first.angle);
        return Rewrite{std::string(name()), pos, 1, {first, second}};
    }
};

class DropTrivialRotation final : public RewriteRule {
   public:
    std::string_view name() const override { return "drop-trivial-rotation"; }
    std::optional<Rewrite> match(std::span<const Gate> gates, std::size_t pos, RuleContext &) const override {
        if (pos >= gates.size() || !is_rotation(gates[pos].kind)) {
            return std::nullopt;
        }
        const Gate &g = gates[pos];
        if (zero_mod_period(g.kind, g.angle)) {
            return Rewrite{std::string(name()), pos, 1, {}};
        }
        // RZ(2 pi) = RY(2 pi) = -I.
        if (g.kind != GateKind::GPHASE && zero_mod_period(g.kind, g.angle - 2 * std::numbers::pi)) {
            return Rewrite{std::string(name()), pos, 1, {Gate::gphase(std::numbers::pi)}};
        }
        return std::nullopt;
    }
};

// Swaps a single-qubit gate of `kind` past a CNOT whose operand `slot`
// (0 = control, 1 = target) it sits on.
class CommuteThroughCnot final : public RewriteRule {
   public:
    CommuteThroughCnot(std::string name, GateKind kind, std::size_t slot)
        : name_(std::move(name)), kind_(kind), slot_(slot) {}
    std::string_view name() const override { return name_; }
    std::optional<Rewrite> match(std::span<const Gate> gates, std::size_t pos, RuleContext &) const override {
        if (pos + 1 >= gates.size()) {
            return std::nullopt;
        }
        const Gate &a = gates[pos];
        const Gate &b = gates[pos + 1];
        bool forward = a.kind == kind_ && b.kind == GateKind::CNOT && b.qubits[slot_] == a.qubits[0];
        bool backward = b.kind == kind_ && a.kind == GateKind::CNOT && a.qubits[slot_] == b.qubits[0];
        if (!forward && !backward) {
            return std::nullopt;
        }
        return Rewrite{name_, pos, 2, {b, a}};
    }

   private:
    std::string name_;
    GateKind kind_;
    std::size_t slot_;
};

std::size_t pick_weighted(const std::vector<std::pair<Rewrite, double>> &cands, Rng &rng) {
    double total = 0;
    for (const auto &c : cands) {
        total += c.second;
    }
    std::uniform_real_distribution<double> u(0.0, total);
    double x = u(rng);
    for (std::size_t i = 0; i < cands.size(); i++) {
        x -= cands[i].second;
        if (x < 0) {
            return i;
        }
    }
    return cands.size() - 1;
}

}  // namespace

std::vector<WeightedRule> default_rule_catalog() {
    return {
        {std::make_shared<InsertInversePair>(), 1.0},
        {std::make_shared<DeleteInversePair>(), 1.0},
        {std::make_shared<SwapDisjoint>(), 1.0},
        {std::make_shared<MergeRotations>(), 1.0},
        {std::make_shared<SplitRotation>(), 1.0},
        {std::make_shared<DropTrivialRotation>(), 1.0},
        {std::make_shared<CommuteThroughCnot>("commute-rz-control", GateKind::RZ, 0), 1.0},
        {std::make_shared<CommuteThroughCnot>("commute-x-target", GateKind::X, 1), 1.0},
    };
}

void ShuffleConfig::set_weight(std::string_view rule, double weight) {
    if (weight < 0 || !std::isfinite(weight)) {
        throw ArgumentError("rule weight must be finite and non-negative");
    }
    for (auto &r : rules) {
        if (r.rule->name() == rule) {
            r.weight = weight;
            return;
        }
    }
    throw ArgumentError("unknown rewrite rule '" + std::string(rule) + "'");
}

std::size_t ShuffleConfig::resolve_target_length(std::size_t input_length) const {
    return target_length.value_or(input_length + std::max<std::size_t>(16, input_length));
}

GateSequence shuffle(const GateSequence &seq, const ShuffleConfig &cfg) {
    const std::size_t q = cfg.resolve_target_length(seq.size());
    if (seq.size() > q) {
        throw BudgetError("shuffle: input has " + std::to_string(seq.size()) + " gates, above target length q = " +
                          std::to_string(q));
    }
    Rng rng(cfg.seed);
    RuleContext ctx{seq.num_qubits(), 0, cfg.angle_grid, &rng};
    std::vector<Gate> gates = seq.gates();
    std::vector<std::pair<Rewrite, double>> cands;
    for (std::size_t step = 0; step < cfg.steps; step++) {
        std::uniform_int_distribution<std::size_t> pick_pos(0, gates.size());
        const std::size_t pos = pick_pos(rng);
        ctx.room = q - gates.size();
        cands.clear();
        for (const auto &r : cfg.rules) {
            if (r.weight <= 0) {
                continue;
            }
            if (auto rw = r.rule->match(gates, pos, ctx)) {
                cands.emplace_back(std::move(*rw), r.weight);
            }
        }
        if (cands.empty()) {
            continue;
        }
        apply_rewrite(gates, cands[pick_weighted(cands, rng)].first);
    }
    return GateSequence(seq.num_qubits(), std::move(gates));
}

std::vector<Rewrite> applicable_rewrites(const GateSequence &seq, std::size_t position, const ShuffleConfig &cfg) {
    Rng rng(cfg.seed);
    const std::size_t q = cfg.resolve_target_length(seq.size());
    RuleContext ctx{seq.num_qubits(), q > seq.size() ? q - seq.size() : 0, cfg.angle_grid, &rng};
    std::vector<Rewrite> out;
    for (const auto &r : cfg.rules) {
        if (r.weight <= 0) {
            continue;
        }
        if (auto rw = r.rule->match(seq.gates(), position, ctx)) {
            out.push_back(std::move(*rw));
        }
    }
    return out;
}

RuleSelfTest self_test(const RewriteRule &rule, std::size_t trials, std::uint64_t seed) {
    Rng rng(seed);
    RuleSelfTest result;
    constexpr std::size_t kWidth = 3;
    constexpr std::size_t kLength = 6;
    std::uniform_real_distribution<double> angle(-8.0, 8.0);
    std::bernoulli_distribution use_grid(0.5);
    RuleContext ctx{kWidth, 4, std::numbers::pi / 4, &rng};
    for (std::size_t t = 0; t < trials; t++) {
        // Draw mostly related gates so pattern rules get a chance to fire.
        std::vector<Gate> gates;
        for (std::size_t i = 0; i < kLength; i++) {
            Gate g = sample_gate(ctx);
            if (kind_has_angle(g.kind) && !use_grid(rng)) {
                g.angle = angle(rng);
            }
            if (i > 0 && use_grid(rng)) {
                Gate prev = gates.back();
                g = use_grid(rng) ? prev.inverse() : prev;
                if (kind_has_angle(g.kind)) {
                    g.angle = use_grid(rng) ? g.angle + 2 * std::numbers::pi : angle(rng);
                }
            }
            gates.push_back(g);
        }
        GateSequence before(kWidth, gates);
        Matrix mb = to_matrix(before);
        for (std::size_t pos = 0; pos <= gates.size(); pos++) {
            auto rw = rule.match(gates, pos, ctx);
            if (!rw) {
                continue;
            }
            std::vector<Gate> after = gates;
            apply_rewrite(after, *rw);
            Matrix ma = to_matrix(GateSequence(kWidth, after));
            result.max_deviation = std::max(result.max_deviation, (ma - mb).cwiseAbs().maxCoeff());
            result.firings++;
        }
    }
    return result;
}

ShuffleDistribution sample_distribution(const GateSequence &seq, std::size_t samples, const ShuffleConfig &cfg) {
    ShuffleDistribution d;
    ShuffleConfig local = cfg;
    for (std::size_t s = 0; s < samples; s++) {
        local.seed = derive_seed(cfg.seed, s);
        d.counts[digest(shuffle(seq, local))]++;
    }
    d.samples = samples;
    return d;
}

OverlapReport estimate_overlap(const GateSequence &a, const GateSequence &b, std::size_t samples,
                               const ShuffleConfig &cfg) {
    if (a.num_qubits() != b.num_qubits()) {
        throw WidthError("estimate_overlap: sequences have different widths");
    }
    if (samples == 0) {
        throw ArgumentError("estimate_overlap: need at least one sample");
    }
    OverlapReport r;
    r.dist_a = sample_distribution(a, samples, cfg);
    r.dist_b = sample_distribution(b, samples, cfg);
    r.support_a = r.dist_a.counts.size();
    r.support_b = r.dist_b.counts.size();
    for (const auto &[d, _] : r.dist_a.counts) {
        if (r.dist_b.counts.contains(d)) {
            r.intersection++;
        }
    }
    const std::size_t uni = r.support_a + r.support_b - r.intersection;
    r.ratio = static_cast<double>(r.intersection) / static_cast<double>(uni);
    r.samples = samples;
    r.seed = cfg.seed;
    r.q = std::max(cfg.resolve_target_length(a.size()), cfg.resolve_target_length(b.size()));
    r.steps = cfg.steps;
    return r;
}

std::string to_text(const OverlapReport &report) {
    std::ostringstream out;
    out.precision(17);
    out << "ratio " << report.ratio << '\n'
        << "support_a " << report.support_a << '\n'
        << "support_b " << report.support_b << '\n'
        << "intersection " << report.intersection << '\n'
        << "samples " << report.samples << '\n'
        << "seed " << report.seed << '\n'
        << "q " << report.q << '\n'
        << "steps " << report.steps << '\n';
    return out.str();
}

}  // namespace authq
