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

#ifndef PIPEGAME_SHAPLEY_HPP
#define PIPEGAME_SHAPLEY_HPP

#include <bit>
#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "pipegame/game.hpp"

namespace pipegame {

/// The Shapley value of every player:
///   phi_i = sum over coalitions C not containing i of
///           |C|! (n-|C|-1)! / n! * (v(C + i) - v(C)).
///
/// The accumulation runs in exact rational arithmetic (doubles convert to
/// rationals losslessly), so integer-valued games yield integer payoffs and
/// the payoffs sum to v(N) exactly; rounding happens once, at the return.
inline std::vector<double> shapley(const CharacteristicFunction& v) {
    using boost::multiprecision::cpp_int;
    using boost::multiprecision::cpp_rational;

    const int n = v.player_count;
    if (n < 1 || n > 12)
        throw std::invalid_argument("shapley: player count out of range 1..12");

    std::vector<cpp_int> fact(static_cast<std::size_t>(n) + 1, 1);
    for (int i = 1; i <= n; ++i) fact[i] = fact[i - 1] * i;

    const std::uint32_t full = Coalition::full(n).bits();
    std::vector<cpp_rational> game(full + 1, cpp_rational(0));
    for (const auto& [bits, val] : v.values) game[bits] = cpp_rational(val);

    std::vector<double> out(static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        const std::uint32_t bit = std::uint32_t{1} << i;
        cpp_rational acc(0);
        for (std::uint32_t rest = 0; rest <= full; ++rest) {
            if (rest & bit) continue;
            int s = std::popcount(rest);
            acc += cpp_rational(fact[s] * fact[n - s - 1]) * (game[rest | bit] - game[rest]);
        }
        acc /= cpp_rational(fact[n]);
        out[i] = acc.convert_to<double>();
    }
    return out;
}

}  // namespace pipegame

#endif  // PIPEGAME_SHAPLEY_HPP
