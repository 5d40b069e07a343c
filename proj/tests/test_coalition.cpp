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

TEST_CASE("coalition bit arithmetic") {
    Coalition c = Coalition::of({0, 2});
    REQUIRE(c.size() == 2);
    REQUIRE(c.contains(0));
    REQUIRE(!c.contains(1));
    REQUIRE(c.lowest() == 0);
    REQUIRE(c.members() == std::vector<int>{0, 2});
    REQUIRE(c.complement_in(3) == Coalition::of({1}));
    REQUIRE(Coalition::full(3).bits() == 0b111u);
    REQUIRE(c.subset_of(Coalition::full(3)));
    REQUIRE(c.disjoint_with(Coalition::of({1})));
}

TEST_CASE("pipeline access follows ownership and regulation") {
    Network plain = testsupport::load_fixture("example1.json").net;
    Network tpa = testsupport::load_fixture("example1_tpa.json").net;

    // without regulation {A,B} may only use the direct link
    REQUIRE(accessible_edges(plain, Coalition::of({0, 1})) == std::set<int>{0});
    // regulation of lines 2 and 3 opens the detour through C
    REQUIRE(accessible_edges(tpa, Coalition::of({0, 1})) == std::set<int>{0, 1, 2});
    // the grand coalition owns everything either way
    REQUIRE(accessible_edges(plain, Coalition::full(3)) == std::set<int>{0, 1, 2});
    // singletons reach only regulated pipes
    REQUIRE(accessible_edges(plain, Coalition::of({2})).empty());
    REQUIRE(accessible_edges(tpa, Coalition::of({2})) == std::set<int>{1, 2});
}

TEST_CASE("source access follows node ownership") {
    Network net = testsupport::load_fixture("example1.json").net;
    REQUIRE(accessible_sources(net, Coalition::of({1})) == std::set<int>{1});
    REQUIRE(accessible_sources(net, Coalition::full(3)) == std::set<int>{0, 1, 2});

    Network big = testsupport::load_fixture("example2.json").net;
    // Ukraine (player 3) alone only reaches its own backstop
    REQUIRE(accessible_sources(big, Coalition::of({3})) == std::set<int>{4});
    // the two-node player reaches both of its backstops
    REQUIRE(accessible_sources(big, Coalition::of({2})) == std::set<int>{2, 3});
}

TEST_CASE("access grows monotonically with the coalition") {
    std::mt19937 rng(7);
    for (int round = 0; round < 40; ++round) {
        Network net = testsupport::random_scenario(rng).net;
        std::uniform_int_distribution<std::uint32_t> pick(
            1, Coalition::full(net.player_count).bits());
        Coalition small(pick(rng));
        Coalition large = small;
        for (int i = 0; i < net.player_count; ++i)
            if (pick(rng) & 1u) large.add(i);

        auto edges_small = accessible_edges(net, small);
        auto edges_large = accessible_edges(net, large);
        REQUIRE(std::includes(edges_large.begin(), edges_large.end(), edges_small.begin(),
                              edges_small.end()));
        auto sources_small = accessible_sources(net, small);
        auto sources_large = accessible_sources(net, large);
        REQUIRE(std::includes(sources_large.begin(), sources_large.end(),
                              sources_small.begin(), sources_small.end()));
    }
}

TEST_CASE("regulation flags bound the reachable set") {
    std::mt19937 rng(11);
    for (int round = 0; round < 20; ++round) {
        Network net = testsupport::random_scenario(rng).net;

        Network open = net;
        std::fill(open.tpa.begin(), open.tpa.end(), 1);
        for (int i = 0; i < net.player_count; ++i) {
            auto edges = accessible_edges(open, Coalition::of({i}));
            REQUIRE(static_cast<int>(edges.size()) == net.edge_count);
        }

        Network closed = net;
        std::fill(closed.tpa.begin(), closed.tpa.end(), 0);
        auto edges = accessible_edges(closed, Coalition::full(net.player_count));
        REQUIRE(static_cast<int>(edges.size()) == net.edge_count);
    }
}
