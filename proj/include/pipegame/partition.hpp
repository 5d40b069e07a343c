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

#ifndef PIPEGAME_PARTITION_HPP
#define PIPEGAME_PARTITION_HPP

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pipegame/coalition.hpp"

namespace pipegame {

/// A partition of a player set into disjoint nonempty coalitions.
/// Canonical form: blocks ordered by their smallest member.
struct Partition {
    std::vector<Coalition> blocks;

    Partition() = default;
    explicit Partition(std::vector<Coalition> b) : blocks(std::move(b)) { canonicalize(); }

    void canonicalize() {
        std::sort(blocks.begin(), blocks.end(),
                  [](Coalition a, Coalition b) { return a.lowest() < b.lowest(); });
    }

    Coalition ground_set() const {
        std::uint32_t bits = 0;
        for (Coalition b : blocks) bits |= b.bits();
        return Coalition(bits);
    }

    /// Index of the block containing the player, or -1.
    int block_of(int player) const {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            if (blocks[i].contains(player)) return static_cast<int>(i);
        return -1;
    }

    /// Stable identity usable as an ordered map key.
    std::vector<std::uint32_t> key() const {
        std::vector<std::uint32_t> k;
        k.reserve(blocks.size());
        for (Coalition b : blocks) k.push_back(b.bits());
        return k;
    }

    friend bool operator==(const Partition& a, const Partition& b) {
        return a.key() == b.key();
    }
};

/// All partitions of n players, in lexicographic restricted-growth-string
/// order: the single-block partition comes first, the all-singleton one last.
/// n is capped at 12 to keep the Bell-number blowup in check.
inline std::vector<Partition> enumerate_partitions(int n) {
    if (n < 1 || n > 12)
        throw std::invalid_argument("enumerate_partitions: player count out of range 1..12");

    std::vector<Partition> out;
    std::vector<int> rgs(static_cast<std::size_t>(n), 0);
    for (;;) {
        int block_count = 1 + *std::max_element(rgs.begin(), rgs.end());
        std::vector<Coalition> blocks(static_cast<std::size_t>(block_count));
        for (int i = 0; i < n; ++i) blocks[rgs[i]].add(i);
        // Restricted growth already yields blocks ordered by smallest member.
        Partition part;
        part.blocks = std::move(blocks);
        out.push_back(std::move(part));

        // Next string: rightmost position that may still grow.
        int i = n - 1;
        for (; i > 0; --i) {
            int prefix_max = *std::max_element(rgs.begin(), rgs.begin() + i);
            if (rgs[i] <= prefix_max) break;
        }
        if (i == 0) break;
        ++rgs[i];
        std::fill(rgs.begin() + i + 1, rgs.end(), 0);
    }
    return out;
}

/// All partitions of an arbitrary player subset (canonical block order).
inline std::vector<Partition> partitions_of_set(Coalition set) {
    std::vector<int> members = set.members();
    int k = static_cast<int>(members.size());
    std::vector<Partition> out;
    if (k == 0) return out;
    for (const Partition& q : enumerate_partitions(k)) {
        Partition mapped;
        mapped.blocks.reserve(q.blocks.size());
        for (Coalition b : q.blocks) {
            Coalition lifted;
            for (int idx : b.members()) lifted.add(members[idx]);
            mapped.blocks.push_back(lifted);
        }
        mapped.canonicalize();
        out.push_back(std::move(mapped));
    }
    return out;
}

}  // namespace pipegame

#endif  // PIPEGAME_PARTITION_HPP
