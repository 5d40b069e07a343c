// Copyright 2026 The pipegame Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef PIPEGAME_RECURSIVE_CORE_HPP
#define PIPEGAME_RECURSIVE_CORE_HPP

#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pipegame/game.hpp"
#include "pipegame/shapley.hpp"

namespace pipegame {

namespace detail {

inline std::string members_string(Coalition c) {
    std::string s = "{";
    bool first = true;
    for (int i : c.members()) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
    }
    return s + "}";
}

/// Stability analysis of residual games. A residual game is a player subset
/// S together with an environment: the coalitions of the players outside S,
/// frozen in place. Embedded values of partitions of S are looked up in the
/// full partition function after gluing the environment back on.
///
/// A partition Q of S is stable when some division of its block values among
/// the players resists every deviation: there is a payoff vector x with
/// per-block sums equal to the block values such that no nonempty D inside S
/// is guaranteed strictly more than the members of D collect under x. A
/// deviation's guarantee is pessimistic: the worst value of D over the
/// stable partitions of the remaining players S - D, who re-settle with D
/// frozen into the environment. If that stable set is empty, the pessimistic
/// fallback (when enabled) measures against every partition of the remaining
/// players instead; with the fallback disabled such deviations cannot be
/// evaluated and do not block. The division test is a small LP feasibility
/// problem.
///
/// The memo table is confined to one context; contexts are cheap and must
/// not be shared across threads.
class StabilityContext {
public:
    StabilityContext(const PartitionFunction& pf, bool pessimistic_fallback)
        : pf_(pf), fallback_(pessimistic_fallback) {}

    const std::vector<Partition>& stable_partitions(Coalition subset, const Partition& env) {
        Key key{subset.bits(), env.key()};
        auto it = memo_.find(key);
        if (it != memo_.end()) return it->second;

        std::vector<Partition> stable;
        for (const Partition& q : partitions_of_set(subset))
            if (admits_stable_division(q, subset, env)) stable.push_back(q);
        return memo_.emplace(std::move(key), std::move(stable)).first->second;
    }

    /// Pessimistic value coalition `c` can count on after leaving the rest of
    /// `subset` behind: min over the stable partitions of subset - c (or over
    /// all of them under the fallback). `env` must not contain c. Empty when
    /// the stable set is empty and the fallback is disabled.
    std::optional<double> guaranteed_value(Coalition c, Coalition subset, const Partition& env) {
        Coalition rest(subset.bits() & ~c.bits());
        if (rest.empty()) return embedded_value(c, Partition{}, env);

        Partition env_with_c = glue(env, Partition({c}));
        const std::vector<Partition>* basis = &stable_partitions(rest, env_with_c);
        if (basis->empty()) {
            if (!fallback_) return std::nullopt;
            basis = &all_partitions_of(rest);
        }
        double best = 0.0;
        bool first = true;
        for (const Partition& q : *basis) {
            double v = embedded_value(c, q, env);
            if (first || v < best) { best = v; first = false; }
        }
        return best;
    }

    /// Value of c embedded in  {c} + siblings + env.
    double embedded_value(Coalition c, const Partition& siblings, const Partition& env) {
        Partition full = glue(siblings, env);
        full.blocks.push_back(c);
        full.canonicalize();
        int idx = pf_.index_of(full);
        if (idx < 0) throw internal_error("recursive core: partition missing from the game");
        return pf_.value(c, idx);
    }

    const std::vector<Partition>& all_partitions_of(Coalition set) {
        auto [it, inserted] = all_cache_.try_emplace(set.bits());
        if (inserted) it->second = partitions_of_set(set);
        return it->second;
    }

    static Partition glue(const Partition& a, const Partition& b) {
        Partition out;
        out.blocks.reserve(a.blocks.size() + b.blocks.size());
        out.blocks.insert(out.blocks.end(), a.blocks.begin(), a.blocks.end());
        out.blocks.insert(out.blocks.end(), b.blocks.begin(), b.blocks.end());
        out.canonicalize();
        return out;
    }

private:
    using Key = std::pair<std::uint32_t, std::vector<std::uint32_t>>;

    bool admits_stable_division(const Partition& q, Coalition subset, const Partition& env) {
        Partition full = glue(q, env);
        int idx = pf_.index_of(full);
        if (idx < 0) throw internal_error("recursive core: partition missing from the game");

        std::vector<int> members = subset.members();
        std::vector<int> slot(32, -1);
        for (std::size_t i = 0; i < members.size(); ++i) slot[members[i]] = static_cast<int>(i);

        // Deviation guarantees, including the joint deviation of all of S.
        std::vector<std::pair<std::uint32_t, double>> guarantees;
        double scale = 1.0;
        const std::uint32_t bits = subset.bits();
        std::uint32_t d = bits;
        do {
            std::optional<double> g = guaranteed_value(Coalition(d), subset, env);
            if (g) {
                guarantees.emplace_back(d, *g);
                scale += std::fabs(*g);
            }
            d = (d - 1) & bits;
        } while (d != 0);
        for (const Coalition& block : q.blocks) scale += std::fabs(pf_.value(block, idx));

        // Feasibility of: per-block sums fixed to the block values, and every
        // deviation weakly beaten. Payoffs are free-signed: x = plus - minus.
        const int np = static_cast<int>(members.size());
        const int nd = static_cast<int>(guarantees.size());
        const int rows = static_cast<int>(q.blocks.size()) + nd;
        const int cols = 2 * np + nd;
        const double box = 10.0 * scale;

        LpProblem lp;
        lp.eq = Matrix(rows, cols);
        lp.rhs.assign(static_cast<std::size_t>(rows), 0.0);
        lp.cost.assign(static_cast<std::size_t>(cols), 0.0);
        lp.upper.assign(static_cast<std::size_t>(cols), box);

        int row = 0;
        for (const Coalition& block : q.blocks) {
            for (int i : block.members()) {
                lp.eq(row, 2 * slot[i]) = 1.0;
                lp.eq(row, 2 * slot[i] + 1) = -1.0;
            }
            lp.rhs[row] = pf_.value(block, idx);
            ++row;
        }
        for (int k = 0; k < nd; ++k) {
            Coalition dev(guarantees[k].first);
            for (int i : dev.members()) {
                lp.eq(row, 2 * slot[i]) = 1.0;
                lp.eq(row, 2 * slot[i] + 1) = -1.0;
            }
            lp.eq(row, 2 * np + k) = -1.0;  // surplus over the guarantee
            lp.rhs[row] = guarantees[k].second;
            ++row;
        }
        return lp_solve(lp).status == LpStatus::optimal;
    }

    const PartitionFunction& pf_;
    bool fallback_;
    std::map<Key, std::vector<Partition>> memo_;
    std::map<std::uint32_t, std::vector<Partition>> all_cache_;
};

}  // namespace detail

/// Stable partitions of a player subset, given the frozen arrangement of the
/// players outside it. For the full player set pass an empty environment.
inline std::vector<Partition> recursive_core_stable_partitions(const PartitionFunction& pf,
                                                               Coalition subset,
                                                               const Partition& environment = {},
                                                               bool pessimistic_fallback = true) {
    detail::StabilityContext ctx(pf, pessimistic_fallback);
    return ctx.stable_partitions(subset, environment);
}

struct MinimalClaimResult {
    CharacteristicFunction claims;
    /// Stable partitions of the outside players, per coalition.
    std::map<std::uint32_t, std::vector<Partition>> stable_residuals;
    std::vector<std::string> notes;
    bool used_fallback = false;
};

/// Converts a partition function game to characteristic form: each
/// coalition's claim is the value it gets when the outsiders settle into a
/// stable partition of their own residual game; when several are stable the
/// least favourable one counts. An empty stable set falls back to the
/// minimum over all outside arrangements (recorded in the notes) when the
/// pessimistic fallback is enabled, and is an error otherwise.
inline MinimalClaimResult minimal_claim(const PartitionFunction& pf,
                                        bool pessimistic_fallback = true) {
    const int n = pf.player_count;
    MinimalClaimResult out;
    out.claims.player_count = n;
    out.claims.reference_costs = pf.singleton_costs;

    detail::StabilityContext ctx(pf, pessimistic_fallback);
    const Coalition everyone = Coalition::full(n);
    const std::uint32_t full = everyone.bits();

    for (std::uint32_t bits = 1; bits < full; ++bits) {
        Coalition c(bits);
        Coalition rest = c.complement_in(n);
        std::vector<Partition> stable = ctx.stable_partitions(rest, Partition({c}));
        out.stable_residuals[bits] = stable;

        const std::vector<Partition>* basis = &stable;
        if (stable.empty()) {
            if (!pessimistic_fallback)
                throw std::runtime_error(
                    "minimal claim: empty recursive core for the residual of coalition " +
                    detail::members_string(c) + " and the pessimistic fallback is disabled");
            basis = &ctx.all_partitions_of(rest);
            out.used_fallback = true;
            out.notes.push_back("empty recursive core for the residual game of coalition " +
                                detail::members_string(c) +
                                "; claim taken as minimum over all outside arrangements");
        }

        double best = 0.0;
        bool first = true;
        for (const Partition& q : *basis) {
            double v = ctx.embedded_value(c, q, Partition{});
            if (first || v < best) { best = v; first = false; }
        }
        out.claims.set(c, best);
    }

    int grand = pf.index_of(Partition({everyone}));
    if (grand < 0) throw internal_error("minimal claim: grand-coalition partition missing");
    out.claims.set(everyone, pf.value(everyone, grand));
    return out;
}

/// Shapley value of the auxiliary characteristic function that hands every
/// coalition its value when the remaining players unite in one complement
/// coalition: w(C) = v_{C, N-C}(C).
inline std::vector<double> extended_shapley(const PartitionFunction& pf) {
    const int n = pf.player_count;
    CharacteristicFunction w;
    w.player_count = n;
    const Coalition everyone = Coalition::full(n);
    for (std::uint32_t bits = 1; bits <= everyone.bits(); ++bits) {
        Coalition c(bits);
        Partition split({c});
        if (c != everyone) {
            split.blocks.push_back(c.complement_in(n));
            split.canonicalize();
        }
        int idx = pf.index_of(split);
        if (idx < 0) throw internal_error("extended shapley: two-block partition missing");
        w.set(c, pf.value(c, idx));
    }
    return shapley(w);
}

/// One power analysis, ready for reporting.
struct PowerReport {
    enum class Method { cff_shapley, pff_minimal_claim_shapley, pff_extended_shapley };

    Method method = Method::cff_shapley;
    std::vector<double> shapley;  // one entry per player
    /// Present for the minimal-claim method only.
    std::map<std::uint32_t, std::vector<Partition>> stable_residuals;
    std::vector<std::string> notes;
};

inline const char* method_tag(PowerReport::Method m) {
    switch (m) {
        case PowerReport::Method::cff_shapley: return "cff_shapley";
        case PowerReport::Method::pff_minimal_claim_shapley: return "pff_minimal_claim_shapley";
        case PowerReport::Method::pff_extended_shapley: return "pff_extended_shapley";
    }
    return "unknown";
}

}  // namespace pipegame

#endif  // PIPEGAME_RECURSIVE_CORE_HPP
