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

#ifndef AUTHQ_SHUFFLER_H
#define AUTHQ_SHUFFLER_H

#include <cstddef>
#include <cstdint>
#include <memory>
#include <numbers>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "authq/rng.h"
#include "authq/sequence.h"

namespace authq {

/// A local rewrite: replace gates [position, position + erase) with `replacement`.
struct Rewrite {
    std::string rule;
    std::size_t position = 0;
    std::size_t erase = 0;
    std::vector<Gate> replacement;
};

void apply_rewrite(std::vector<Gate> &gates, const Rewrite &rw);

struct RuleContext {
    std::size_t num_qubits = 1;
    /// How many gates the sequence may still grow by before hitting q.
    std::size_t room = 0;
    /// Inserted and split angles are multiples of this.
    double angle_grid = std::numbers::pi / 4;
    Rng *rng = nullptr;
};

/// A semantics-preserving local pattern. Every rule in the catalog is an
/// exact matrix identity, global phase included.
class RewriteRule {
   public:
    virtual ~RewriteRule() = default;
    virtual std::string_view name() const = 0;
    virtual std::optional<Rewrite> match(std::span<const Gate> gates, std::size_t position,
                                         RuleContext &ctx) const = 0;
};

struct WeightedRule {
    std::shared_ptr<const RewriteRule> rule;
    double weight = 1.0;
};

/// insert-inverse-pair, delete-inverse-pair, swap-disjoint, merge-rotations,
/// split-rotation, drop-trivial-rotation, commute-rz-control, commute-x-target.
/// GPHASE has no targets, so swap-disjoint moves it freely.
std::vector<WeightedRule> default_rule_catalog();

struct ShuffleConfig {
    std::size_t steps = 200;
    /// Maximum output length q; defaults to len + max(16, len).
    std::optional<std::size_t> target_length;
    std::uint64_t seed = 0;
    double angle_grid = std::numbers::pi / 4;
    std::vector<WeightedRule> rules = default_rule_catalog();

    /// Sets the weight of a named rule (0 disables it). Throws on unknown names.
    void set_weight(std::string_view rule, double weight);
    std::size_t resolve_target_length(std::size_t input_length) const;
};

/// Random walk of `cfg.steps` rewrites. Each step picks a uniform position
/// in [0, len] and a weighted choice among the rules firing there.
/// Throws BudgetError if the input is already longer than q.
GateSequence shuffle(const GateSequence &seq, const ShuffleConfig &cfg);

/// Every rewrite that fires at `position`. Randomized rules (insertion,
/// splitting) preview one sample drawn from cfg.seed.
std::vector<Rewrite> applicable_rewrites(const GateSequence &seq, std::size_t position,
                                         const ShuffleConfig &cfg = {});

/// Checks a rule on random windows; returns the worst max-entry deviation
/// between the matrices before and after rewriting, and how often it fired.
struct RuleSelfTest {
    double max_deviation = 0;
    std::size_t firings = 0;
};
RuleSelfTest self_test(const RewriteRule &rule, std::size_t trials, std::uint64_t seed);

/// Empirical distribution of shuffled outputs, keyed by digest.
struct ShuffleDistribution {
    std::unordered_map<SequenceDigest, std::size_t> counts;
    std::size_t samples = 0;
};

/// Draws `samples` shuffles; sample s uses seed derive_seed(cfg.seed, s).
ShuffleDistribution sample_distribution(const GateSequence &seq, std::size_t samples, const ShuffleConfig &cfg);

struct OverlapReport {
    double ratio = 0;
    std::size_t support_a = 0;
    std::size_t support_b = 0;
    std::size_t intersection = 0;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
    std::size_t q = 0;
    std::size_t steps = 0;
    ShuffleDistribution dist_a;
    ShuffleDistribution dist_b;
};

/// |supp A  intersect  supp B| / |supp A  union  supp B| over observed digests.
/// Both sides use the same per-sample seeds.
OverlapReport estimate_overlap(const GateSequence &a, const GateSequence &b, std::size_t samples,
                               const ShuffleConfig &cfg);

/// `key value` lines: ratio, support_a, support_b, intersection, samples, seed, q, steps.
std::string to_text(const OverlapReport &report);

}  // namespace authq

#endif
