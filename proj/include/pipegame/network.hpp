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

#ifndef PIPEGAME_NETWORK_HPP
#define PIPEGAME_NETWORK_HPP

#include <cstdio>
#include <string>
#include <vector>

#include "pipegame/errors.hpp"
#include "pipegame/matrix.hpp"

namespace pipegame {

/// \brief A gas transport scenario: pipeline topology, ownership, capacities,
/// unit costs, regulated fees, demands and sources.
///
/// Conventions:
///   - `incidence` is the node-branch incidence matrix: column k carries -1 at
///     the tail node and +1 at the head node of pipeline k. Edge direction is
///     a labeling convention; flows are tracked separately per direction.
///   - `node_owner(j,i) == 1` iff node j belongs to player i. Every node
///     belongs to exactly one player.
///   - `transport_cost(i,k)` is the cost player i bears per unit shipped on
///     pipeline k; `transport_fee(i,k)` the regulated fee player i is
///     entitled to collect per unit someone else ships on k. Fees never fall
///     below costs.
///   - `source_cost(j,r)` is nonzero iff source r sits at node j, and then
///     holds the unit production cost. Each source sits at one node.
///   - `tpa[k]` marks pipeline k as open to third parties against payment of
///     the regulated fee; otherwise only coalitions containing the owners of
///     both endpoint nodes may use it.
///
/// A Network is immutable after validation and safe to share across threads.
struct Network {
    int node_count = 0;    // l
    int edge_count = 0;    // m
    int player_count = 0;  // n
    int source_count = 0;  // p

    Matrix incidence;            // l x m, entries in {-1, 0, +1}
    Matrix node_owner;           // l x n, entries in {0, 1}
    std::vector<double> capacity;        // m, per-direction transport capacity
    Matrix transport_cost;       // n x m
    Matrix transport_fee;        // n x m
    std::vector<double> demand;          // l
    Matrix source_cost;          // l x p
    std::vector<double> production_cap;  // p
    std::vector<char> tpa;               // m

    // Display labels, preserved through (de)serialization.
    std::vector<std::string> player_ids;
    std::vector<std::string> player_names;
    std::vector<std::string> node_ids;
    std::vector<std::string> edge_ids;
    std::vector<std::string> source_ids;
};

/// Which coalition is evaluated first when several are active at once.
enum class OrderPolicy {
    by_total_demand_desc,  // largest total demand first (default)
    explicit_list,         // rank by a caller-supplied player priority list
};

/// Whether one optimization is run per member player or per member node.
enum class MemberGranularity {
    per_player,  // one problem per member, covering all of its nodes (default)
    per_node,    // one problem per demand node, nodes grouped by player
};

/// Tunables that are part of a scenario rather than of the model data.
struct ScenarioConfig {
    OrderPolicy order_policy = OrderPolicy::by_total_demand_desc;
    std::vector<int> explicit_order;  // player indices; used by explicit_list
    MemberGranularity granularity = MemberGranularity::per_player;
    double lp_tolerance = 1e-9;
    bool pessimistic_fallback = true;
};

/// A parsed scenario: the network plus its evaluation configuration.
struct Scenario {
    Network net;
    ScenarioConfig config;
};

struct Diagnostic {
    enum class Severity { error, warning };
    Severity severity = Severity::error;
    std::string message;
};

inline bool has_errors(const std::vector<Diagnostic>& diags) {
    for (const auto& d : diags)
        if (d.severity == Diagnostic::Severity::error) return true;
    return false;
}

// ---------------------------------------------------------------------------
// Small accessors. Endpoints and ownership are derived on the fly; the
// matrices stay the single source of truth.
// ---------------------------------------------------------------------------

struct EdgeEndpoints {
    int tail = -1;  // node with -1 in the incidence column
    int head = -1;  // node with +1
};

inline EdgeEndpoints edge_endpoints(const Network& net, int edge) {
    EdgeEndpoints e;
    for (int j = 0; j < net.node_count; ++j) {
        double v = net.incidence(j, edge);
        if (v < -0.5) e.tail = j;
        else if (v > 0.5) e.head = j;
    }
    return e;
}

/// Owner of node j, or -1 if the ownership row is malformed.
inline int owner_of_node(const Network& net, int node) {
    for (int i = 0; i < net.player_count; ++i)
        if (net.node_owner(node, i) > 0.5) return i;
    return -1;
}

/// Host node of source r, or -1 if the source column is empty.
inline int source_node(const Network& net, int source) {
    for (int j = 0; j < net.node_count; ++j)
        if (net.source_cost(j, source) != 0.0) return j;
    return -1;
}

inline double source_unit_cost(const Network& net, int source) {
    int j = source_node(net, source);
    return j < 0 ? 0.0 : net.source_cost(j, source);
}

inline double player_total_demand(const Network& net, int player) {
    double total = 0.0;
    for (int j = 0; j < net.node_count; ++j)
        if (net.node_owner(j, player) > 0.5) total += net.demand[j];
    return total;
}

inline std::vector<int> player_nodes(const Network& net, int player) {
    std::vector<int> nodes;
    for (int j = 0; j < net.node_count; ++j)
        if (net.node_owner(j, player) > 0.5) nodes.push_back(j);
    return nodes;
}

// ---------------------------------------------------------------------------
// Validation
// ---------------------------------------------------------------------------

namespace detail {

inline std::string label(const std::vector<std::string>& ids, int i, const char* kind) {
    if (i >= 0 && i < static_cast<int>(ids.size()) && !ids[i].empty()) return ids[i];
    return std::string(kind) + "#" + std::to_string(i);
}

}  // namespace detail

/// Checks every structural invariant of a Network and returns diagnostics
/// instead of throwing: callers decide whether warnings are acceptable.
///
/// Errors cover malformed incidence columns, ownership rows that do not sum
/// to one, fees below costs, sources at several nodes, negative data, and
/// cost/fee entries for players owning neither endpoint of a pipeline.
/// A demand node without a local source is only a warning: such a node can
/// still be served through pipelines, but feasibility is no longer
/// guaranteed for every coalition.
inline std::vector<Diagnostic> validate(const Network& net, const ScenarioConfig& config = {}) {
    std::vector<Diagnostic> out;
    auto err = [&out](std::string m) {
        out.push_back({Diagnostic::Severity::error, std::move(m)});
    };
    auto warn = [&out](std::string m) {
        out.push_back({Diagnostic::Severity::warning, std::move(m)});
    };

    const int l = net.node_count, m = net.edge_count, n = net.player_count, p = net.source_count;
    if (l <= 0) err("network: node count must be positive");
    if (n <= 0) err("network: player count must be positive");
    if (m < 0 || p < 0) err("network: negative edge or source count");

    // Dimensions first; any mismatch makes further indexed checks unsafe.
    bool dims_ok =
        net.incidence.rows() == l && net.incidence.cols() == m &&
        net.node_owner.rows() == l && net.node_owner.cols() == n &&
        static_cast<int>(net.capacity.size()) == m &&
        net.transport_cost.rows() == n && net.transport_cost.cols() == m &&
        net.transport_fee.rows() == n && net.transport_fee.cols() == m &&
        static_cast<int>(net.demand.size()) == l &&
        net.source_cost.rows() == l && net.source_cost.cols() == p &&
        static_cast<int>(net.production_cap.size()) == p &&
        static_cast<int>(net.tpa.size()) == m;
    if (!dims_ok) {
        err("network: matrix/vector dimensions are inconsistent");
        return out;
    }

    auto node_label = [&](int j) { return detail::label(net.node_ids, j, "node"); };
    auto edge_label = [&](int k) { return detail::label(net.edge_ids, k, "edge"); };
    auto player_label = [&](int i) { return detail::label(net.player_ids, i, "player"); };
    auto src_label = [&](int r) { return detail::label(net.source_ids, r, "source"); };

    for (int k = 0; k < m; ++k) {
        int plus = 0, minus = 0;
        bool entries_ok = true;
        for (int j = 0; j < l; ++j) {
            double v = net.incidence(j, k);
            if (v == 1.0) ++plus;
            else if (v == -1.0) ++minus;
            else if (v != 0.0) entries_ok = false;
        }
        if (!entries_ok)
            err("incidence: edge " + edge_label(k) + " has entries outside {-1,0,1}");
        if (plus != 1 || minus != 1)
            err("incidence: edge " + edge_label(k) + " must connect exactly two distinct nodes");
    }

    for (int j = 0; j < l; ++j) {
        double sum = 0.0;
        bool binary = true;
        for (int i = 0; i < n; ++i) {
            double v = net.node_owner(j, i);
            if (v != 0.0 && v != 1.0) binary = false;
            sum += v;
        }
        if (!binary || sum != 1.0)
            err("ownership: node " + node_label(j) + " must belong to exactly one player");
    }

    for (int k = 0; k < m; ++k)
        if (net.capacity[k] < 0.0) err("capacity: negative on edge " + edge_label(k));
    for (int j = 0; j < l; ++j)
        if (net.demand[j] < 0.0) err("demand: negative at node " + node_label(j));
    for (int r = 0; r < p; ++r)
        if (net.production_cap[r] < 0.0) err("production cap: negative for source " + src_label(r));

    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < m; ++k) {
            double t = net.transport_cost(i, k), f = net.transport_fee(i, k);
            if (t < 0.0)
                err("transport cost: negative at (" + player_label(i) + ", " + edge_label(k) + ")");
            if (f < 0.0)
                err("transport fee: negative at (" + player_label(i) + ", " + edge_label(k) + ")");
            if (f < t)
                err("fee below cost at (" + player_label(i) + ", " + edge_label(k) + ")");
        }
    }

    // Cost/fee rows may be nonzero only for players owning an endpoint node.
    for (int k = 0; k < m; ++k) {
        EdgeEndpoints e = edge_endpoints(net, k);
        if (e.tail < 0 || e.head < 0) continue;  // already reported above
        int tail_owner = owner_of_node(net, e.tail);
        int head_owner = owner_of_node(net, e.head);
        for (int i = 0; i < n; ++i) {
            if (i == tail_owner || i == head_owner) continue;
            if (net.transport_cost(i, k) != 0.0 || net.transport_fee(i, k) != 0.0)
                err("ownership: player " + player_label(i) + " has cost/fee entries on edge " +
                    edge_label(k) + " but owns neither endpoint");
        }
    }

    for (int r = 0; r < p; ++r) {
        int nonzero = 0;
        for (int j = 0; j < l; ++j) {
            double v = net.source_cost(j, r);
            if (v < 0.0) err("source cost: negative for source " + src_label(r));
            if (v != 0.0) ++nonzero;
        }
        if (nonzero > 1)
            err("sources: source " + src_label(r) + " is mapped to more than one node");
        if (nonzero == 0)
            err("sources: source " + src_label(r) + " is mapped to no node");
    }

    // Backstop coverage: demand without a local source is legal but risky.
    for (int j = 0; j < l; ++j) {
        if (net.demand[j] <= 0.0) continue;
        bool local = false;
        for (int r = 0; r < p; ++r)
            if (net.source_cost(j, r) != 0.0) local = true;
        if (!local) {
            char buf[64];
            std::snprintf(buf, sizeof(buf), "%g", net.demand[j]);
            warn("node " + node_label(j) + " demand " + buf + " has no local backstop");
        }
    }

    if (!(config.lp_tolerance > 0.0)) err("config: lp_tolerance must be positive");
    if (config.order_policy == OrderPolicy::explicit_list) {
        std::vector<char> seen(static_cast<std::size_t>(n), 0);
        bool ok = static_cast<int>(config.explicit_order.size()) == n;
        for (int i : config.explicit_order) {
            if (i < 0 || i >= n || seen[i]) { ok = false; break; }
            seen[i] = 1;
        }
        if (!ok) err("config: explicit order must list every player exactly once");
    }

    return out;
}

}  // namespace pipegame

#endif  // PIPEGAME_NETWORK_HPP
