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

#ifndef PIPEGAME_FLOW_HPP
#define PIPEGAME_FLOW_HPP

#include <algorithm>
#include <vector>

#include "pipegame/coalition.hpp"
#include "pipegame/network.hpp"
#include "pipegame/partition.hpp"
#include "pipegame/simplex.hpp"

namespace pipegame {

/// One member's optimized transport plan: directed flows on every pipeline,
/// production drawn from every source, and the resulting private cost
/// (own transport costs + fees owed to every other entitled player +
/// production costs).
struct PlayerFlow {
    std::vector<double> f_plus;      // m, flow along edge orientation
    std::vector<double> f_minus;     // m, flow against edge orientation
    std::vector<double> production;  // p
    double cost = 0.0;
};

/// Capacity left over after previously committed flows. Capacity is tracked
/// per direction: counter-directed transports on one pipeline each consume
/// their own side, because fees and capacity apply to nominal, not net,
/// transfers.
struct ResidualState {
    std::vector<double> q_mod;  // 2m: first m forward, last m backward
    std::vector<double> l_mod;  // p

    static ResidualState fresh(const Network& net) {
        ResidualState s;
        s.q_mod.reserve(static_cast<std::size_t>(2 * net.edge_count));
        s.q_mod.insert(s.q_mod.end(), net.capacity.begin(), net.capacity.end());
        s.q_mod.insert(s.q_mod.end(), net.capacity.begin(), net.capacity.end());
        s.l_mod = net.production_cap;
        return s;
    }
};

/// The inter-player money ledger of one evaluation.
///   q(i,j): transport cost imposed on player i by player j's flows.
///   r(i,j): transport fee paid by player j to player i. r's diagonal is
///   zero; nobody charges fees to itself.
struct TransferMatrices {
    Matrix q;
    Matrix r;
};

/// A member task inside a coalition evaluation: the whole player at
/// per-player granularity (node == -1), or one of its nodes otherwise.
struct MemberTask {
    int player = -1;
    int node = -1;
    double demand = 0.0;
};

struct MemberFlow {
    int player = -1;
    int node = -1;  // -1 at per-player granularity
    PlayerFlow flow;
};

struct CoalitionFlows {
    std::vector<MemberFlow> members;
    double total_cost = 0.0;  // phi(C): sum of the members' private costs
};

struct PartitionFlows {
    // All aligned with the partition's block order.
    std::vector<double> coalition_cost;
    std::vector<std::vector<MemberFlow>> coalition_members;
    std::vector<PlayerFlow> player_totals;  // aggregated per player
    TransferMatrices transfers;
};

// ---------------------------------------------------------------------------

namespace detail {

inline PlayerFlow zero_flow(const Network& net) {
    PlayerFlow f;
    f.f_plus.assign(static_cast<std::size_t>(net.edge_count), 0.0);
    f.f_minus.assign(static_cast<std::size_t>(net.edge_count), 0.0);
    f.production.assign(static_cast<std::size_t>(net.source_count), 0.0);
    return f;
}

inline void accumulate(PlayerFlow& into, const PlayerFlow& from) {
    for (std::size_t k = 0; k < into.f_plus.size(); ++k) {
        into.f_plus[k] += from.f_plus[k];
        into.f_minus[k] += from.f_minus[k];
    }
    for (std::size_t s = 0; s < into.production.size(); ++s)
        into.production[s] += from.production[s];
    into.cost += from.cost;
}

}  // namespace detail

/// Solves one member's cost-minimization problem on the coalition's
/// sub-network, honoring the residual capacities left by earlier members.
///
/// Objective per unit on a pipeline, in either direction: the payer's own
/// transport cost plus the fees of every other entitled player; per unit of
/// production: the source's unit cost. Pipelines outside the access set and
/// sources outside the coalition are pinned to zero.
///
/// Throws infeasible_error naming a node whose demand cannot be served.
inline PlayerFlow solve_member_flow(const Network& net, const AccessSet& access,
                                    const std::vector<double>& member_demand, int payer,
                                    const ResidualState& state, double tol = 1e-9) {
    const int l = net.node_count, m = net.edge_count, p = net.source_count;

    bool any_demand = false;
    for (double d : member_demand)
        if (d != 0.0) any_demand = true;
    if (!any_demand) return detail::zero_flow(net);  // no demand commits no flows

    LpProblem lp;
    const int cols = 2 * m + p;
    lp.eq = Matrix(l, cols);
    lp.rhs = member_demand;
    lp.cost.assign(static_cast<std::size_t>(cols), 0.0);
    lp.upper.assign(static_cast<std::size_t>(cols), 0.0);

    for (int k = 0; k < m; ++k) {
        for (int j = 0; j < l; ++j) {
            double a = net.incidence(j, k);
            lp.eq(j, k) = a;
            lp.eq(j, m + k) = -a;
        }
        double unit = net.transport_cost(payer, k);
        for (int i = 0; i < net.player_count; ++i)
            if (i != payer) unit += net.transport_fee(i, k);
        lp.cost[k] = unit;
        lp.cost[m + k] = unit;
        if (access.usable_edges.count(k)) {
            lp.upper[k] = std::max(0.0, state.q_mod[k]);
            lp.upper[m + k] = std::max(0.0, state.q_mod[m + k]);
        }
    }
    for (int s = 0; s < p; ++s) {
        int host = source_node(net, s);
        if (host >= 0) lp.eq(host, 2 * m + s) = 1.0;
        lp.cost[2 * m + s] = source_unit_cost(net, s);
        if (access.usable_sources.count(s))
            lp.upper[2 * m + s] = std::max(0.0, state.l_mod[s]);
    }

    LpSolution sol = lp_solve(lp, tol);
    if (sol.status == LpStatus::infeasible) {
        int node = sol.infeasible_row;
        std::string id = detail::label(net.node_ids, node, "node");
        throw infeasible_error("unservable demand at node " + id, node);
    }

    PlayerFlow f;
    f.f_plus.assign(sol.x.begin(), sol.x.begin() + m);
    f.f_minus.assign(sol.x.begin() + m, sol.x.begin() + 2 * m);
    f.production.assign(sol.x.begin() + 2 * m, sol.x.end());
    f.cost = sol.objective;
    return f;
}

/// Subtracts a committed plan from the remaining capacities.
inline void commit_flow(ResidualState& state, const PlayerFlow& f) {
    const std::size_t m = f.f_plus.size();
    for (std::size_t k = 0; k < m; ++k) {
        state.q_mod[k] = std::max(0.0, state.q_mod[k] - f.f_plus[k]);
        state.q_mod[m + k] = std::max(0.0, state.q_mod[m + k] - f.f_minus[k]);
    }
    for (std::size_t s = 0; s < f.production.size(); ++s)
        state.l_mod[s] = std::max(0.0, state.l_mod[s] - f.production[s]);
}

/// Member evaluation order: players sorted by decreasing total demand (ties:
/// lower index first). At per-node granularity each player's nodes follow,
/// sorted by decreasing demand (ties: lower node index), so the largest node
/// of the largest player goes first.
inline std::vector<MemberTask> member_order(const Network& net, Coalition c,
                                            MemberGranularity granularity) {
    std::vector<int> players = c.members();
    std::stable_sort(players.begin(), players.end(), [&](int a, int b) {
        double da = player_total_demand(net, a), db = player_total_demand(net, b);
        if (da != db) return da > db;
        return a < b;
    });

    std::vector<MemberTask> tasks;
    for (int i : players) {
        if (granularity == MemberGranularity::per_player) {
            tasks.push_back({i, -1, player_total_demand(net, i)});
        } else {
            std::vector<int> nodes = player_nodes(net, i);
            std::stable_sort(nodes.begin(), nodes.end(), [&](int a, int b) {
                if (net.demand[a] != net.demand[b]) return net.demand[a] > net.demand[b];
                return a < b;
            });
            for (int j : nodes) tasks.push_back({i, j, net.demand[j]});
        }
    }
    return tasks;
}

/// Runs the iterative allocation for one coalition: members are evaluated in
/// demand order, each one's flows are committed before the next is solved,
/// and phi(C) accumulates the private costs.
inline CoalitionFlows allocate_coalition_flows(const Network& net, Coalition c,
                                               ResidualState& state,
                                               const ScenarioConfig& config) {
    AccessSet access = access_for(net, c);
    CoalitionFlows result;
    for (const MemberTask& task : member_order(net, c, config.granularity)) {
        std::vector<double> demand(static_cast<std::size_t>(net.node_count), 0.0);
        if (task.node >= 0) {
            demand[task.node] = net.demand[task.node];
        } else {
            for (int j : player_nodes(net, task.player)) demand[j] = net.demand[j];
        }
        PlayerFlow flow =
            solve_member_flow(net, access, demand, task.player, state, config.lp_tolerance);
        commit_flow(state, flow);
        result.total_cost += flow.cost;
        result.members.push_back({task.player, task.node, std::move(flow)});
    }
    return result;
}

/// Builds the money ledger from per-player aggregate plans: column j of q is
/// [T T 0] x_j, column j of r is [F F 0] x_j with player j's own fee row
/// zeroed out.
inline TransferMatrices transfer_matrices(const Network& net,
                                          const std::vector<PlayerFlow>& player_totals) {
    const int n = net.player_count, m = net.edge_count;
    TransferMatrices tm;
    tm.q = Matrix(n, n);
    tm.r = Matrix(n, n);
    for (int j = 0; j < n; ++j) {
        const PlayerFlow& x = player_totals[j];
        if (x.f_plus.empty()) continue;
        for (int k = 0; k < m; ++k) {
            double nominal = x.f_plus[k] + x.f_minus[k];
            if (nominal == 0.0) continue;
            for (int i = 0; i < n; ++i) {
                tm.q(i, j) += net.transport_cost(i, k) * nominal;
                if (i != j) tm.r(i, j) += net.transport_fee(i, k) * nominal;
            }
        }
    }
    return tm;
}

/// Coalition evaluation order within a partition: decreasing total demand
/// with ties broken by the smallest member index, or the rank induced by a
/// caller-supplied player priority list.
inline std::vector<int> coalition_order(const Network& net, const Partition& partition,
                                        const ScenarioConfig& config) {
    std::vector<int> order(partition.blocks.size());
    for (std::size_t i = 0; i < order.size(); ++i) order[i] = static_cast<int>(i);

    if (config.order_policy == OrderPolicy::explicit_list) {
        std::vector<int> rank(static_cast<std::size_t>(net.player_count), 1 << 20);
        for (std::size_t pos = 0; pos < config.explicit_order.size(); ++pos)
            rank[config.explicit_order[pos]] = static_cast<int>(pos);
        auto block_rank = [&](int b) {
            int best = 1 << 20;
            for (int i : partition.blocks[b].members()) best = std::min(best, rank[i]);
            return best;
        };
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            int ra = block_rank(a), rb = block_rank(b);
            if (ra != rb) return ra < rb;
            return partition.blocks[a].lowest() < partition.blocks[b].lowest();
        });
    } else {
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            double da = coalition_total_demand(net, partition.blocks[a]);
            double db = coalition_total_demand(net, partition.blocks[b]);
            if (da != db) return da > db;
            return partition.blocks[a].lowest() < partition.blocks[b].lowest();
        });
    }
    return order;
}

/// Evaluates a whole partition on a single shared residual state: coalitions
/// take turns in the configured order, so an early coalition can exhaust
/// regulated capacity a later one wanted. Returns per-coalition costs,
/// per-player aggregate plans and the money ledger of the whole partition.
inline PartitionFlows allocate_partition_flows(const Network& net, const Partition& partition,
                                               const ScenarioConfig& config) {
    PartitionFlows out;
    out.coalition_cost.assign(partition.blocks.size(), 0.0);
    out.coalition_members.resize(partition.blocks.size());
    out.player_totals.assign(static_cast<std::size_t>(net.player_count),
                             detail::zero_flow(net));

    ResidualState state = ResidualState::fresh(net);
    for (int b : coalition_order(net, partition, config)) {
        CoalitionFlows flows = allocate_coalition_flows(net, partition.blocks[b], state, config);
        out.coalition_cost[b] = flows.total_cost;
        for (const MemberFlow& mf : flows.members)
            detail::accumulate(out.player_totals[mf.player], mf.flow);
        out.coalition_members[b] = std::move(flows.members);
    }
    out.transfers = transfer_matrices(net, out.player_totals);
    return out;
}

}  // namespace pipegame

#endif  // PIPEGAME_FLOW_HPP
