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

#include <catch2/catch_amalgamated.hpp>

#include "support.hpp"

using namespace pipegame;

namespace {

LpProblem tiny(int rows, int cols) {
    LpProblem p;
    p.eq = Matrix(rows, cols);
    p.rhs.assign(static_cast<std::size_t>(rows), 0.0);
    p.cost.assign(static_cast<std::size_t>(cols), 0.0);
    p.upper.assign(static_cast<std::size_t>(cols), 0.0);
    return p;
}

}  // namespace

TEST_CASE("zero demand solves to the zero vector") {
    LpProblem p = tiny(2, 3);
    p.eq(0, 0) = 1;
    p.eq(0, 1) = -1;
    p.eq(1, 1) = 1;
    p.eq(1, 2) = 1;
    p.cost = {1, 2, 3};
    p.upper = {5, 5, 5};
    LpSolution sol = lp_solve(p);
    REQUIRE(sol.status == LpStatus::optimal);
    REQUIRE(sol.objective == 0.0);
    REQUIRE(sol.x == std::vector<double>{0, 0, 0});
}

TEST_CASE("bounds force flow onto the expensive route") {
    // one unit must be delivered; cheap variable capped at 0.4
    LpProblem p = tiny(1, 2);
    p.eq(0, 0) = 1;
    p.eq(0, 1) = 1;
    p.rhs = {1.0};
    p.cost = {1.0, 2.0};
    p.upper = {0.4, 2.0};
    LpSolution sol = lp_solve(p);
    REQUIRE(sol.status == LpStatus::optimal);
    REQUIRE_THAT(sol.x[0], Catch::Matchers::WithinAbs(0.4, 1e-9));
    REQUIRE_THAT(sol.x[1], Catch::Matchers::WithinAbs(0.6, 1e-9));
    REQUIRE_THAT(sol.objective, Catch::Matchers::WithinAbs(1.6, 1e-9));
}

TEST_CASE("negative costs pull variables to their upper bounds") {
    LpProblem p = tiny(1, 3);
    p.eq(0, 0) = 1;
    p.eq(0, 1) = 1;
    p.eq(0, 2) = -1;
    p.rhs = {1.0};
    p.cost = {2.0, -1.0, 0.5};
    p.upper = {3.0, 3.0, 3.0};
    // x1 wants to be as large as possible; the balance is kept by x2.
    LpSolution sol = lp_solve(p);
    REQUIRE(sol.status == LpStatus::optimal);
    REQUIRE_THAT(sol.x[1], Catch::Matchers::WithinAbs(3.0, 1e-9));
    REQUIRE_THAT(sol.x[2], Catch::Matchers::WithinAbs(2.0, 1e-9));
    REQUIRE_THAT(sol.objective, Catch::Matchers::WithinAbs(-2.0, 1e-9));
}

TEST_CASE("infeasible systems report a row") {
    LpProblem p = tiny(2, 2);
    p.eq(0, 0) = 1;
    p.eq(1, 1) = 1;
    p.rhs = {0.5, 2.0};  // second row unservable
    p.cost = {1, 1};
    p.upper = {1.0, 1.0};
    LpSolution sol = lp_solve(p);
    REQUIRE(sol.status == LpStatus::infeasible);
    REQUIRE(sol.infeasible_row == 1);
}

TEST_CASE("identical inputs give identical solutions") {
    std::mt19937 rng(23);
    Scenario s = testsupport::random_scenario(rng);
    Coalition everyone = Coalition::full(s.net.player_count);
    ResidualState a = ResidualState::fresh(s.net);
    ResidualState b = ResidualState::fresh(s.net);
    CoalitionFlows fa = allocate_coalition_flows(s.net, everyone, a, s.config);
    CoalitionFlows fb = allocate_coalition_flows(s.net, everyone, b, s.config);
    REQUIRE(fa.total_cost == fb.total_cost);
    for (std::size_t i = 0; i < fa.members.size(); ++i) {
        REQUIRE(fa.members[i].flow.f_plus == fb.members[i].flow.f_plus);
        REQUIRE(fa.members[i].flow.f_minus == fb.members[i].flow.f_minus);
        REQUIRE(fa.members[i].flow.production == fb.members[i].flow.production);
    }
}

TEST_CASE("optimum agrees with exhaustive vertex enumeration") {
    std::mt19937 rng(101);
    std::uniform_int_distribution<int> demand_dist(0, 4);
    std::uniform_int_distribution<int> cost_dist(0, 6);
    std::uniform_int_distribution<int> cap_dist(1, 5);
    std::uniform_int_distribution<int> coin(0, 1);

    int infeasible_seen = 0;
    for (int round = 0; round < 120; ++round) {
        // random 3-node flow problem with integer data
        const int nodes = 3, edges = 3, sources = 2;
        Matrix inc(nodes, edges);
        const int ends[3][2] = {{0, 1}, {1, 2}, {0, 2}};
        for (int k = 0; k < edges; ++k) {
            inc(ends[k][0], k) = -1;
            inc(ends[k][1], k) = 1;
        }

        LpProblem p = tiny(nodes, 2 * edges + sources);
        for (int k = 0; k < edges; ++k) {
            for (int j = 0; j < nodes; ++j) {
                p.eq(j, k) = inc(j, k);
                p.eq(j, edges + k) = -inc(j, k);
            }
            double cost = cost_dist(rng);
            p.cost[k] = cost;
            p.cost[edges + k] = cost;
            double cap = cap_dist(rng);
            p.upper[k] = cap;
            p.upper[edges + k] = cap;
        }
        // sources at nodes 0 and 2; capacity sometimes too small on purpose
        p.eq(0, 2 * edges) = 1;
        p.eq(2, 2 * edges + 1) = 1;
        p.cost[2 * edges] = 1 + cost_dist(rng);
        p.cost[2 * edges + 1] = 1 + cost_dist(rng);
        p.upper[2 * edges] = coin(rng) ? 10 : 2;
        p.upper[2 * edges + 1] = coin(rng) ? 10 : 1;
        for (int j = 0; j < nodes; ++j) p.rhs[j] = demand_dist(rng);

        LpSolution sol = lp_solve(p);
        testsupport::BruteLp oracle = testsupport::brute_force_lp(p);
        INFO("round " << round);
        if (oracle.feasible) {
            REQUIRE(sol.status == LpStatus::optimal);
            REQUIRE_THAT(sol.objective, Catch::Matchers::WithinAbs(oracle.objective, 1e-6));
        } else {
            REQUIRE(sol.status == LpStatus::infeasible);
            ++infeasible_seen;
        }
    }
    REQUIRE(infeasible_seen > 0);  // the suite must exercise both outcomes
}
