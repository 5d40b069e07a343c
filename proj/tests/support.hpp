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

#ifndef PIPEGAME_TESTS_SUPPORT_HPP
#define PIPEGAME_TESTS_SUPPORT_HPP

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "pipegame/pipegame.hpp"

namespace testsupport {

inline std::string fixture_path(const std::string& name) {
    return std::string(PIPEGAME_DATA_DIR) + "/" + name;
}

inline pipegame::Scenario load_fixture(const std::string& name) {
    return pipegame::load_scenario(fixture_path(name));
}

// ---------------------------------------------------------------------------
// Independent LP oracle: enumerate every basis/bound combination.
// ---------------------------------------------------------------------------

struct BruteLp {
    bool feasible = false;
    double objective = 0.0;
};

/// Exhaustive vertex enumeration for  min c'x, Ax = b, 0 <= x <= u.
/// Only sensible for desk-size problems; completely independent of the
/// simplex implementation (shares only the LU helper).
inline BruteLp brute_force_lp(const pipegame::LpProblem& p, double tol = 1e-7) {
    const int r = p.eq.rows();
    const int c = p.eq.cols();
    BruteLp best;

    std::vector<int> pick(static_cast<std::size_t>(c), 0);
    std::fill(pick.begin(), pick.begin() + r, 1);
    std::sort(pick.begin(), pick.end(), std::greater<int>());

    // all r-subsets of columns as the candidate basis
    std::vector<int> basis;
    do {
        basis.clear();
        for (int j = 0; j < c; ++j)
            if (pick[j]) basis.push_back(j);

        std::vector<int> nonbasic;
        for (int j = 0; j < c; ++j)
            if (!pick[j]) nonbasic.push_back(j);

        std::vector<double> bmat(static_cast<std::size_t>(r) * r);
        for (int i = 0; i < r; ++i)
            for (int row = 0; row < r; ++row)
                bmat[static_cast<std::size_t>(row) * r + i] = p.eq(row, basis[i]);
        pipegame::detail::Lu lu;
        if (!lu.factor(bmat, r)) continue;

        const int free = static_cast<int>(nonbasic.size());
        for (long mask = 0; mask < (1L << free); ++mask) {
            std::vector<double> x(static_cast<std::size_t>(c), 0.0);
            std::vector<double> rhs = p.rhs;
            bool skip = false;
            for (int t = 0; t < free; ++t) {
                if (mask & (1L << t)) {
                    int j = nonbasic[t];
                    if (p.upper[j] <= 0.0) { skip = true; break; }  // same as lower bound
                    x[j] = p.upper[j];
                    for (int row = 0; row < r; ++row) rhs[row] -= p.eq(row, j) * x[j];
                }
            }
            if (skip) continue;
            std::vector<double> xb = lu.solve(rhs);
            bool ok = true;
            for (int i = 0; i < r && ok; ++i) {
                if (xb[i] < -tol || xb[i] > p.upper[basis[i]] + tol) ok = false;
                x[basis[i]] = xb[i];
            }
            if (!ok) continue;
            double obj = 0.0;
            for (int j = 0; j < c; ++j) obj += p.cost[j] * x[j];
            if (!best.feasible || obj < best.objective) {
                best.feasible = true;
                best.objective = obj;
            }
        }
    } while (std::prev_permutation(pick.begin(), pick.end()));

    return best;
}

// ---------------------------------------------------------------------------
// Independent Shapley oracle: average marginal contributions over all orders.
// ---------------------------------------------------------------------------

inline std::vector<double> shapley_by_permutations(const pipegame::CharacteristicFunction& v) {
    const int n = v.player_count;
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[i] = i;
    std::vector<double> total(static_cast<std::size_t>(n), 0.0);
    long count = 0;
    do {
        pipegame::Coalition sofar;
        for (int i : order) {
            pipegame::Coalition with = sofar;
            with.add(i);
            total[i] += v.value(with) - v.value(sofar);
            sofar = with;
        }
        ++count;
    } while (std::next_permutation(order.begin(), order.end()));
    for (double& t : total) t /= static_cast<double>(count);
    return total;
}

// ---------------------------------------------------------------------------
// Random instances
// ---------------------------------------------------------------------------

inline pipegame::CharacteristicFunction random_game(std::mt19937& rng, int n) {
    std::uniform_int_distribution<int> val(-5, 20);
    pipegame::CharacteristicFunction v;
    v.player_count = n;
    const std::uint32_t full = pipegame::Coalition::full(n).bits();
    for (std::uint32_t bits = 1; bits <= full; ++bits)
        v.set(pipegame::Coalition(bits), static_cast<double>(val(rng)));
    return v;
}

/// Random connected scenario with a backstop at every demand node, so every
/// coalition stays feasible. With `slack_capacity` every pipeline can carry
/// the whole system demand at once.
inline pipegame::Scenario random_scenario(std::mt19937& rng, int node_count = 4,
                                          bool slack_capacity = false) {
    using namespace pipegame;
    std::uniform_int_distribution<int> players_dist(2, node_count);
    std::uniform_int_distribution<int> demand_dist(0, 8);
    std::uniform_int_distribution<int> cost_dist(0, 4);
    std::uniform_int_distribution<int> margin_dist(0, 3);
    std::uniform_int_distribution<int> cap_dist(1, 15);
    std::uniform_int_distribution<int> coin(0, 1);

    Scenario s;
    Network& net = s.net;
    net.node_count = node_count;
    net.player_count = players_dist(rng);

    net.node_owner = Matrix(node_count, net.player_count);
    std::uniform_int_distribution<int> owner_dist(0, net.player_count - 1);
    for (int j = 0; j < node_count; ++j) {
        // ensure the first players each hold a node, the rest go anywhere
        int owner = j < net.player_count ? j : owner_dist(rng);
        net.node_owner(j, owner) = 1.0;
    }

    net.demand.assign(static_cast<std::size_t>(node_count), 0.0);
    double total_demand = 0.0;
    for (int j = 0; j < node_count; ++j) {
        net.demand[j] = demand_dist(rng);
        total_demand += net.demand[j];
    }
    if (total_demand == 0.0) {
        net.demand[0] = 3.0;
        total_demand = 3.0;
    }

    // spanning tree plus a couple of chords
    std::vector<std::pair<int, int>> links;
    for (int j = 1; j < node_count; ++j) {
        std::uniform_int_distribution<int> prev(0, j - 1);
        links.emplace_back(prev(rng), j);
    }
    int extra = coin(rng) + coin(rng);
    for (int t = 0; t < extra; ++t) {
        std::uniform_int_distribution<int> any(0, node_count - 1);
        int a = any(rng), b = any(rng);
        if (a != b) links.emplace_back(a, b);
    }

    net.edge_count = static_cast<int>(links.size());
    net.incidence = Matrix(node_count, net.edge_count);
    net.transport_cost = Matrix(net.player_count, net.edge_count);
    net.transport_fee = Matrix(net.player_count, net.edge_count);
    net.capacity.assign(static_cast<std::size_t>(net.edge_count), 0.0);
    net.tpa.assign(static_cast<std::size_t>(net.edge_count), 0);
    for (int k = 0; k < net.edge_count; ++k) {
        auto [a, b] = links[k];
        net.incidence(a, k) = -1.0;
        net.incidence(b, k) = 1.0;
        net.capacity[k] = slack_capacity ? total_demand + 5.0 : cap_dist(rng);
        net.tpa[k] = static_cast<char>(coin(rng));
        for (int node : {a, b}) {
            int owner = owner_of_node(net, node);
            double cost = cost_dist(rng);
            net.transport_cost(owner, k) = cost;
            net.transport_fee(owner, k) = cost + margin_dist(rng);
        }
    }

    // one backstop per demand node, plus one cheap shared field
    std::vector<std::pair<int, double>> sources;  // node, unit cost
    for (int j = 0; j < node_count; ++j)
        if (net.demand[j] > 0.0) sources.emplace_back(j, 20.0);
    std::uniform_int_distribution<int> field_node(0, node_count - 1);
    sources.emplace_back(field_node(rng), 1.0 + cost_dist(rng));

    net.source_count = static_cast<int>(sources.size());
    net.source_cost = Matrix(node_count, net.source_count);
    net.production_cap.assign(static_cast<std::size_t>(net.source_count), 0.0);
    for (int r = 0; r < net.source_count; ++r) {
        auto [node, cost] = sources[r];
        net.source_cost(node, r) = cost;
        net.production_cap[r] =
            r + 1 == net.source_count ? 2.0 * total_demand : net.demand[node];
    }

    for (int i = 0; i < net.player_count; ++i) {
        net.player_ids.push_back("P" + std::to_string(i));
        net.player_names.push_back("P" + std::to_string(i));
    }
    for (int j = 0; j < node_count; ++j) net.node_ids.push_back("N" + std::to_string(j));
    for (int k = 0; k < net.edge_count; ++k) net.edge_ids.push_back("E" + std::to_string(k));
    for (int r = 0; r < net.source_count; ++r) net.source_ids.push_back("S" + std::to_string(r));
    return s;
}

// ---------------------------------------------------------------------------
// Narrative fixtures
// ---------------------------------------------------------------------------

/// A chain a-b-c-d-e where the middle pipelines belong to the chain's owner C
/// and are open to third parties against a fee of 2 per unit (cost 1). The
/// cheap source sits at d (capacity 1), the big one at b; a and e consume one
/// unit each and have no backstop of their own.
inline pipegame::Scenario chain_scenario() {
    return pipegame::parse_scenario_text(R"json({
      "players": [{"id":"A"},{"id":"B"},{"id":"C"},{"id":"D"},{"id":"E"}],
      "nodes": [
        {"id":"a","owner":"A","demand":1},
        {"id":"b","owner":"B","demand":0},
        {"id":"c","owner":"C","demand":0},
        {"id":"d","owner":"D","demand":0},
        {"id":"e","owner":"E","demand":1}
      ],
      "edges": [
        {"id":"e1","from":"a","to":"b","capacity":10,"tpa":false,"owners":{}},
        {"id":"e2","from":"b","to":"c","capacity":1,"tpa":true,
         "owners":{"C":{"cost":1,"fee":2}}},
        {"id":"e3","from":"c","to":"d","capacity":1,"tpa":true,
         "owners":{"C":{"cost":1,"fee":2}}},
        {"id":"e4","from":"d","to":"e","capacity":10,"tpa":false,"owners":{}}
      ],
      "sources": [
        {"id":"gas_b","node":"b","unit_cost":5,"capacity":10},
        {"id":"gas_d","node":"d","unit_cost":0.5,"capacity":1}
      ]
    })json");
}

/// Two corridors sharing one regulated middle pipeline of capacity 6:
/// imports for B (demand 4, fed from A) and for D (demand 6, fed from C)
/// both have to cross e-f. All transport is free of cost and fee; imports
/// cost 1 per unit, backstops 10.
inline pipegame::Scenario corridor_scenario() {
    return pipegame::parse_scenario_text(R"json({
      "players": [{"id":"A"},{"id":"B"},{"id":"C"},{"id":"D"},{"id":"E"},{"id":"F"}],
      "nodes": [
        {"id":"a","owner":"A","demand":0},
        {"id":"b","owner":"B","demand":4},
        {"id":"c","owner":"C","demand":0},
        {"id":"d","owner":"D","demand":6},
        {"id":"e","owner":"E","demand":0},
        {"id":"f","owner":"F","demand":0}
      ],
      "edges": [
        {"id":"ae","from":"a","to":"e","capacity":10,"tpa":true,"owners":{}},
        {"id":"ce","from":"c","to":"e","capacity":6,"tpa":true,"owners":{}},
        {"id":"ef","from":"e","to":"f","capacity":6,"tpa":true,"owners":{}},
        {"id":"fb","from":"f","to":"b","capacity":4,"tpa":true,"owners":{}},
        {"id":"fd","from":"f","to":"d","capacity":6,"tpa":true,"owners":{}}
      ],
      "sources": [
        {"id":"src_a","node":"a","unit_cost":1,"capacity":4},
        {"id":"src_c","node":"c","unit_cost":1,"capacity":6},
        {"id":"back_b","node":"b","unit_cost":10,"capacity":4},
        {"id":"back_d","node":"d","unit_cost":10,"capacity":6}
      ]
    })json");
}

inline double total(const std::vector<double>& v) {
    double s = 0.0;
    for (double x : v) s += x;
    return s;
}

}  // namespace testsupport

#endif  // PIPEGAME_TESTS_SUPPORT_HPP
