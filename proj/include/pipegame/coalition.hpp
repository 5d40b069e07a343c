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

#ifndef PIPEGAME_COALITION_HPP
#define PIPEGAME_COALITION_HPP

#include <bit>
#include <cstdint>
#include <initializer_list>
#include <set>
#include <vector>

#include "pipegame/network.hpp"

namespace pipegame {

/// A set of players, packed into a bitmask (player i <-> bit i).
class Coalition {
public:
    constexpr Coalition() = default;
    constexpr explicit Coalition(std::uint32_t bits) : bits_(bits) {}

    static Coalition of(std::initializer_list<int> players) {
        Coalition c;
        for (int p : players) c.add(p);
        return c;
    }
    /// The grand coalition over n players.
    static Coalition full(int n) {
        return Coalition(n >= 32 ? ~std::uint32_t{0} : ((std::uint32_t{1} << n) - 1));
    }

    std::uint32_t bits() const { return bits_; }
    bool empty() const { return bits_ == 0; }
    int size() const { return std::popcount(bits_); }
    bool contains(int player) const { return (bits_ >> player) & 1u; }
    void add(int player) { bits_ |= (std::uint32_t{1} << player); }
    void remove(int player) { bits_ &= ~(std::uint32_t{1} << player); }

    bool subset_of(Coalition other) const { return (bits_ & ~other.bits_) == 0; }
    bool disjoint_with(Coalition other) const { return (bits_ & other.bits_) == 0; }
    Coalition complement_in(int n) const { return Coalition(full(n).bits_ & ~bits_); }

    /// Smallest player index in the coalition; 32 when empty.
    int lowest() const { return std::countr_zero(bits_); }

    std::vector<int> members() const {
        std::vector<int> out;
        out.reserve(static_cast<std::size_t>(size()));
        for (std::uint32_t b = bits_; b != 0; b &= b - 1)
            out.push_back(std::countr_zero(b));
        return out;
    }

    friend bool operator==(Coalition a, Coalition b) { return a.bits_ == b.bits_; }
    friend bool operator!=(Coalition a, Coalition b) { return a.bits_ != b.bits_; }
    friend bool operator<(Coalition a, Coalition b) { return a.bits_ < b.bits_; }

private:
    std::uint32_t bits_ = 0;
};

/// The resources a coalition may draw on: the sub-network it induces.
struct AccessSet {
    std::set<int> usable_edges;
    std::set<int> usable_sources;
};

/// Pipelines usable by coalition c: those whose both endpoint nodes belong to
/// members, plus every pipeline under third-party access regulation. Using a
/// regulated pipeline does not waive the fees owed to its owners.
inline std::set<int> accessible_edges(const Network& net, Coalition c) {
    std::set<int> edges;
    for (int k = 0; k < net.edge_count; ++k) {
        if (net.tpa[k]) {
            edges.insert(k);
            continue;
        }
        EdgeEndpoints e = edge_endpoints(net, k);
        if (e.tail < 0 || e.head < 0) continue;
        int tail_owner = owner_of_node(net, e.tail);
        int head_owner = owner_of_node(net, e.head);
        if (tail_owner >= 0 && head_owner >= 0 && c.contains(tail_owner) && c.contains(head_owner))
            edges.insert(k);
    }
    return edges;
}

/// Sources usable by coalition c: those hosted at a member-owned node.
/// Production elsewhere stays at zero regardless of pipeline access.
inline std::set<int> accessible_sources(const Network& net, Coalition c) {
    std::set<int> sources;
    for (int r = 0; r < net.source_count; ++r) {
        int node = source_node(net, r);
        if (node < 0) continue;
        int owner = owner_of_node(net, node);
        if (owner >= 0 && c.contains(owner)) sources.insert(r);
    }
    return sources;
}

inline AccessSet access_for(const Network& net, Coalition c) {
    return AccessSet{accessible_edges(net, c), accessible_sources(net, c)};
}

inline double coalition_total_demand(const Network& net, Coalition c) {
    double total = 0.0;
    for (int i : c.members()) total += player_total_demand(net, i);
    return total;
}

}  // namespace pipegame

#endif  // PIPEGAME_COALITION_HPP
