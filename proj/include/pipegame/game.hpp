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

#ifndef PIPEGAME_GAME_HPP
#define PIPEGAME_GAME_HPP

#include <algorithm>
#include <cstdint>
#include <exception>
#include <map>
#include <stdexcept>
#include <thread>
#include <utility>
#include <vector>

#include "pipegame/flow.hpp"
#include "pipegame/partition.hpp"

namespace pipegame {

/// A game in characteristic function form: one value per coalition.
struct CharacteristicFunction {
    int player_count = 0;
    std::map<std::uint32_t, double> values;  // keyed by coalition bitmask
    std::vector<double> reference_costs;     // singleton costs per player

    double value(Coalition c) const {
        auto it = values.find(c.bits());
        return it == values.end() ? 0.0 : it->second;
    }
    void set(Coalition c, double v) { values[c.bits()] = v; }
};

/// Transport profit split into its two origins: flows of fellow members and
/// flows of players outside the coalition.
struct ProfitBreakdown {
    double internal = 0.0;  // fees minus costs exchanged among members
    double external = 0.0;  // fees minus costs received from outsiders
};

/// Net transport profit exchanged among the members of c: fees members pay
/// each other minus the costs they impose on each other. A member's own
/// operating cost for its own flows is not a transfer and stays out.
inline double internal_profit(const TransferMatrices& tm, Coalition c) {
    double total = 0.0;
    for (int i : c.members())
        for (int j : c.members())
            if (i != j) total += tm.r(i, j) - tm.q(i, j);
    return total;
}

/// Net fee-over-cost transfer that the flows of `from` hand to the players
/// of `to`. The two coalitions must be disjoint.
inline double externality(const TransferMatrices& tm, Coalition from, Coalition to) {
    double total = 0.0;
    for (int i : to.members())
        for (int j : from.members())
            total += tm.r(i, j) - tm.q(i, j);
    return total;
}

// ---------------------------------------------------------------------------
// Characteristic function form
// ---------------------------------------------------------------------------

struct CoalitionEval {
    double phi = 0.0;
    double internal_profit = 0.0;
    TransferMatrices transfers;
    std::vector<MemberFlow> members;
};

struct CffResult {
    CharacteristicFunction v;
    std::map<std::uint32_t, CoalitionEval> evals;
};

/// Values every coalition in isolation: the coalition runs on an otherwise
/// empty network, so outsiders neither consume capacity nor get credited for
/// the fees the coalition pays them on regulated pipelines.
/// v(C) = sum of singleton costs - phi(C) + internal profit.
inline CffResult build_cff(const Network& net, const ScenarioConfig& config) {
    const int n = net.player_count;
    if (n < 1 || n > 12)
        throw std::invalid_argument("build_cff: player count out of range 1..12");
    CffResult out;
    out.v.player_count = n;
    out.v.reference_costs.assign(static_cast<std::size_t>(n), 0.0);

    for (int i = 0; i < n; ++i) {
        ResidualState state = ResidualState::fresh(net);
        CoalitionFlows flows = allocate_coalition_flows(net, Coalition::of({i}), state, config);
        out.v.reference_costs[i] = flows.total_cost;
    }

    const std::uint32_t full = Coalition::full(n).bits();
    for (std::uint32_t bits = 1; bits <= full; ++bits) {
        Coalition c(bits);
        ResidualState state = ResidualState::fresh(net);
        CoalitionFlows flows = allocate_coalition_flows(net, c, state, config);

        std::vector<PlayerFlow> totals(static_cast<std::size_t>(n), detail::zero_flow(net));
        for (const MemberFlow& mf : flows.members) detail::accumulate(totals[mf.player], mf.flow);
        TransferMatrices tm = transfer_matrices(net, totals);

        double refs = 0.0;
        for (int i : c.members()) refs += out.v.reference_costs[i];
        double pi = internal_profit(tm, c);
        out.v.set(c, refs - flows.total_cost + pi);

        CoalitionEval eval;
        eval.phi = flows.total_cost;
        eval.internal_profit = pi;
        eval.transfers = std::move(tm);
        eval.members = std::move(flows.members);
        out.evals.emplace(bits, std::move(eval));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Partition function form
// ---------------------------------------------------------------------------

struct EmbeddedEntry {
    double value = 0.0;
    double phi = 0.0;
    double internal_profit = 0.0;
    double external_profit = 0.0;
};

/// A game in partition function form: one value per coalition embedded in a
/// partition of the full player set.
struct PartitionFunction {
    int player_count = 0;
    std::vector<Partition> partitions;                // canonical enumeration order
    std::vector<std::vector<EmbeddedEntry>> entries;  // [partition][block]
    std::vector<double> singleton_costs;              // phi of singletons in the
                                                      // all-singleton partition
    int singleton_partition = -1;

    int index_of(const Partition& p) const {
        auto it = index_.find(p.key());
        return it == index_.end() ? -1 : it->second;
    }

    double value(Coalition c, int partition_index) const {
        const Partition& p = partitions[partition_index];
        for (std::size_t b = 0; b < p.blocks.size(); ++b)
            if (p.blocks[b] == c) return entries[partition_index][b].value;
        throw internal_error("partition function: coalition not embedded in partition");
    }

    void rebuild_index() {
        index_.clear();
        for (std::size_t i = 0; i < partitions.size(); ++i)
            index_[partitions[i].key()] = static_cast<int>(i);
        singleton_partition = -1;
        for (std::size_t i = 0; i < partitions.size(); ++i)
            if (static_cast<int>(partitions[i].blocks.size()) == player_count)
                singleton_partition = static_cast<int>(i);
    }

    /// Builds a partition function from explicit values; block values must be
    /// listed in the partition's canonical block order.
    static PartitionFunction from_values(
        int n, const std::vector<std::pair<Partition, std::vector<double>>>& given) {
        PartitionFunction pf;
        pf.player_count = n;
        pf.partitions = enumerate_partitions(n);
        pf.entries.resize(pf.partitions.size());
        pf.rebuild_index();
        for (std::size_t i = 0; i < pf.partitions.size(); ++i)
            pf.entries[i].resize(pf.partitions[i].blocks.size());
        for (const auto& [part, vals] : given) {
            int idx = pf.index_of(part);
            if (idx < 0 || vals.size() != pf.partitions[idx].blocks.size())
                throw internal_error("partition function: bad explicit value row");
            for (std::size_t b = 0; b < vals.size(); ++b)
                pf.entries[idx][b].value = vals[b];
        }
        return pf;
    }

private:
    std::map<std::vector<std::uint32_t>, int> index_;
};

namespace detail {

inline void eval_partition(const Network& net, const ScenarioConfig& config,
                           const PartitionFunction& pf, int idx,
                           std::vector<EmbeddedEntry>& row, PartitionFlows* details) {
    const Partition& part = pf.partitions[idx];
    PartitionFlows flows = allocate_partition_flows(net, part, config);
    row.resize(part.blocks.size());
    for (std::size_t b = 0; b < part.blocks.size(); ++b) {
        Coalition c = part.blocks[b];
        double refs = 0.0;
        for (int i : c.members()) refs += pf.singleton_costs[i];
        double internal = internal_profit(flows.transfers, c);
        double external = externality(flows.transfers, c.complement_in(net.player_count), c);
        row[b].phi = flows.coalition_cost[b];
        row[b].internal_profit = internal;
        row[b].external_profit = external;
        row[b].value = refs - flows.coalition_cost[b] + internal + external;
    }
    if (details) *details = std::move(flows);
}

}  // namespace detail

/// Builds the full partition function: every partition of the player set is
/// evaluated on its own fresh residual state, and every embedded coalition
/// gets  v_P(C) = sum of singleton reference costs - phi_P(C) + profits,
/// where the reference costs come from the all-singleton partition.
///
/// Partition evaluations are independent of each other; `threads > 1` maps
/// them across workers with results collated by partition index, so the
/// outcome does not depend on scheduling. When `details` is non-null it is
/// resized to one PartitionFlows per partition (memory scales with the Bell
/// number; intended for flow tracing at small n).
inline PartitionFunction build_pff(const Network& net, const ScenarioConfig& config,
                                   unsigned threads = 1,
                                   std::vector<PartitionFlows>* details = nullptr) {
    const int n = net.player_count;
    PartitionFunction pf;
    pf.player_count = n;
    pf.partitions = enumerate_partitions(n);
    pf.entries.resize(pf.partitions.size());
    pf.rebuild_index();
    if (details) details->assign(pf.partitions.size(), PartitionFlows{});

    // Reference costs first: singletons embedded in the all-singleton partition.
    {
        const Partition& singles = pf.partitions[pf.singleton_partition];
        PartitionFlows flows = allocate_partition_flows(net, singles, config);
        pf.singleton_costs.assign(static_cast<std::size_t>(n), 0.0);
        for (std::size_t b = 0; b < singles.blocks.size(); ++b)
            pf.singleton_costs[singles.blocks[b].lowest()] = flows.coalition_cost[b];
    }

    const int count = static_cast<int>(pf.partitions.size());
    if (threads <= 1 || count <= 1) {
        for (int idx = 0; idx < count; ++idx)
            detail::eval_partition(net, config, pf, idx, pf.entries[idx],
                                   details ? &(*details)[idx] : nullptr);
        return pf;
    }

    unsigned workers = std::min<unsigned>(threads, static_cast<unsigned>(count));
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(count));
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (int idx = static_cast<int>(w); idx < count; idx += static_cast<int>(workers)) {
                try {
                    detail::eval_partition(net, config, pf, idx, pf.entries[idx],
                                           details ? &(*details)[idx] : nullptr);
                } catch (...) {
                    errors[idx] = std::current_exception();
                }
            }
        });
    }
    for (auto& t : pool) t.join();
    for (int idx = 0; idx < count; ++idx)  // deterministic: lowest index wins
        if (errors[idx]) std::rethrow_exception(errors[idx]);
    return pf;
}

}  // namespace pipegame

#endif  // PIPEGAME_GAME_HPP
