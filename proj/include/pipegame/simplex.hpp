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

#ifndef PIPEGAME_SIMPLEX_HPP
#define PIPEGAME_SIMPLEX_HPP

#include <cmath>
#include <limits>
#include <vector>

#include "pipegame/errors.hpp"
#include "pipegame/matrix.hpp"

namespace pipegame {

/// min cost'x  subject to  eq * x = rhs  and  0 <= x <= upper.
struct LpProblem {
    Matrix eq;
    std::vector<double> rhs;
    std::vector<double> cost;
    std::vector<double> upper;
};

enum class LpStatus { optimal, infeasible };

struct LpSolution {
    LpStatus status = LpStatus::optimal;
    std::vector<double> x;
    double objective = 0.0;
    /// For infeasible problems: an equality row whose balance cannot be met.
    int infeasible_row = -1;
};

namespace detail {

// Dense LU with partial pivoting, in place. Sizes here are tiny.
struct Lu {
    int n = 0;
    std::vector<double> a;    // n*n, row-major, holds L\U
    std::vector<int> piv;

    bool factor(std::vector<double> m, int dim) {
        n = dim;
        a = std::move(m);
        piv.resize(static_cast<std::size_t>(n));
        for (int k = 0; k < n; ++k) {
            int best = k;
            double bestmag = std::fabs(a[static_cast<std::size_t>(k) * n + k]);
            for (int i = k + 1; i < n; ++i) {
                double mag = std::fabs(a[static_cast<std::size_t>(i) * n + k]);
                if (mag > bestmag) { best = i; bestmag = mag; }
            }
            if (bestmag < 1e-12) return false;
            piv[k] = best;
            if (best != k)
                for (int j = 0; j < n; ++j)
                    std::swap(a[static_cast<std::size_t>(k) * n + j],
                              a[static_cast<std::size_t>(best) * n + j]);
            double pivot = a[static_cast<std::size_t>(k) * n + k];
            for (int i = k + 1; i < n; ++i) {
                double f = a[static_cast<std::size_t>(i) * n + k] / pivot;
                a[static_cast<std::size_t>(i) * n + k] = f;
                if (f != 0.0)
                    for (int j = k + 1; j < n; ++j)
                        a[static_cast<std::size_t>(i) * n + j] -=
                            f * a[static_cast<std::size_t>(k) * n + j];
            }
        }
        return true;
    }

    std::vector<double> solve(std::vector<double> b) const {
        // Factoring swaps whole rows, multipliers included, so the stored L
        // pairs with the fully permuted right-hand side: permute first.
        for (int k = 0; k < n; ++k)
            if (piv[k] != k) std::swap(b[k], b[piv[k]]);
        for (int k = 0; k < n; ++k)
            for (int i = k + 1; i < n; ++i)
                b[i] -= a[static_cast<std::size_t>(i) * n + k] * b[k];
        for (int k = n - 1; k >= 0; --k) {
            for (int j = k + 1; j < n; ++j)
                b[k] -= a[static_cast<std::size_t>(k) * n + j] * b[j];
            b[k] /= a[static_cast<std::size_t>(k) * n + k];
        }
        return b;
    }
};

}  // namespace detail

/// Two-phase primal simplex for box-constrained variables.
///
/// Determinism contract: the entering variable is the lowest-index eligible
/// one (Bland), the leaving variable the lowest-index one among the minimum
/// ratios, so equal-cost optima always resolve to the same vertex. Optimality
/// means no reduced cost beats `tol`. Unboundedness cannot occur with finite
/// boxes and is reported as an internal error.
inline LpSolution lp_solve(const LpProblem& p, double tol = 1e-9) {
    const int r = p.eq.rows();
    const int c = p.eq.cols();
    const double inf = std::numeric_limits<double>::infinity();
    const double ptol = 1e-10;  // direction entries below this are noise

    if (static_cast<int>(p.rhs.size()) != r || static_cast<int>(p.cost.size()) != c ||
        static_cast<int>(p.upper.size()) != c)
        throw internal_error("lp_solve: dimension mismatch");

    const int total = c + r;  // structural + one artificial per row
    enum : char { kBasic, kLower, kUpper };
    std::vector<char> state(static_cast<std::size_t>(total), kLower);
    std::vector<double> value(static_cast<std::size_t>(total), 0.0);
    std::vector<double> upper(static_cast<std::size_t>(total), inf);
    std::vector<double> art_sign(static_cast<std::size_t>(r), 1.0);
    std::vector<int> basis(static_cast<std::size_t>(r));

    for (int j = 0; j < c; ++j) upper[j] = p.upper[j];
    for (int i = 0; i < r; ++i) {
        art_sign[i] = p.rhs[i] >= 0.0 ? 1.0 : -1.0;
        basis[i] = c + i;
        state[c + i] = kBasic;
        value[c + i] = std::fabs(p.rhs[i]);
    }

    auto column = [&](int j, std::vector<double>& col) {
        if (j < c) {
            for (int i = 0; i < r; ++i) col[i] = p.eq(i, j);
        } else {
            for (int i = 0; i < r; ++i) col[i] = 0.0;
            col[j - c] = art_sign[j - c];
        }
    };

    std::vector<double> costs(static_cast<std::size_t>(total), 0.0);
    auto set_phase_costs = [&](int phase) {
        for (int j = 0; j < total; ++j)
            costs[j] = phase == 1 ? (j >= c ? 1.0 : 0.0) : (j < c ? p.cost[j] : 0.0);
    };

    std::vector<double> col(static_cast<std::size_t>(r));
    const int max_iterations = 50000;

    auto run_phase = [&](int phase) {
        set_phase_costs(phase);
        for (int iter = 0; iter < max_iterations; ++iter) {
            // Refresh basic values from scratch; kills accumulated drift.
            std::vector<double> rhs_eff = p.rhs;
            for (int j = 0; j < total; ++j) {
                if (state[j] == kBasic || value[j] == 0.0) continue;
                column(j, col);
                for (int i = 0; i < r; ++i) rhs_eff[i] -= col[i] * value[j];
            }
            std::vector<double> bmat(static_cast<std::size_t>(r) * r);
            for (int i = 0; i < r; ++i) {
                column(basis[i], col);
                for (int row = 0; row < r; ++row)
                    bmat[static_cast<std::size_t>(row) * r + i] = col[row];
            }
            detail::Lu lu;
            if (r > 0 && !lu.factor(bmat, r))
                throw internal_error("lp_solve: singular basis");
            std::vector<double> xb = r > 0 ? lu.solve(rhs_eff) : std::vector<double>{};
            for (int i = 0; i < r; ++i) value[basis[i]] = xb[i];

            // Duals via the transposed basis.
            std::vector<double> y;
            if (r > 0) {
                std::vector<double> bt(static_cast<std::size_t>(r) * r);
                for (int i = 0; i < r; ++i)
                    for (int j = 0; j < r; ++j)
                        bt[static_cast<std::size_t>(i) * r + j] =
                            bmat[static_cast<std::size_t>(j) * r + i];
                detail::Lu lut;
                if (!lut.factor(std::move(bt), r))
                    throw internal_error("lp_solve: singular basis");
                std::vector<double> cb(static_cast<std::size_t>(r));
                for (int i = 0; i < r; ++i) cb[i] = costs[basis[i]];
                y = lut.solve(std::move(cb));
            }

            // Entering: lowest-index structural variable with an improving
            // reduced cost. Artificials never re-enter.
            int enter = -1;
            double dir = 0.0;
            for (int j = 0; j < c; ++j) {
                if (state[j] == kBasic || upper[j] <= 0.0) continue;
                double d = costs[j];
                column(j, col);
                for (int i = 0; i < r; ++i) d -= y[i] * col[i];
                if (state[j] == kLower && d < -tol) { enter = j; dir = 1.0; break; }
                if (state[j] == kUpper && d > tol) { enter = j; dir = -1.0; break; }
            }
            if (enter < 0) return;  // optimal for this phase

            column(enter, col);
            std::vector<double> w = r > 0 ? lu.solve(col) : std::vector<double>{};

            // Ratio test: the entering variable moves by t in direction dir,
            // basic variable i moves by -dir*t*w[i].
            double t_bound = upper[enter];  // full flip to the opposite bound
            double t_basic = inf;
            int leave_row = -1;
            for (int i = 0; i < r; ++i) {
                double g = dir * w[i];
                double limit = inf;
                if (g > ptol) {
                    limit = value[basis[i]] / g;
                } else if (g < -ptol && upper[basis[i]] < inf) {
                    limit = (upper[basis[i]] - value[basis[i]]) / (-g);
                }
                if (limit >= inf) continue;
                if (limit < 0.0) limit = 0.0;
                if (leave_row < 0) {
                    t_basic = limit;
                    leave_row = i;
                    continue;
                }
                double tie = 1e-9 * (1.0 + t_basic);
                if (limit < t_basic - tie) {
                    t_basic = limit;
                    leave_row = i;
                } else if (limit < t_basic + tie && basis[i] < basis[leave_row]) {
                    leave_row = i;  // Bland: lowest variable index among ties
                    t_basic = std::min(t_basic, limit);
                }
            }

            if (t_bound >= inf && leave_row < 0)
                throw internal_error("lp_solve: unbounded direction in a boxed problem");
            if (leave_row < 0 || t_bound <= t_basic) {
                // Bound flip; no basis change. t_bound > 0, so progress is real.
                state[enter] = state[enter] == kLower ? kUpper : kLower;
                value[enter] = state[enter] == kUpper ? upper[enter] : 0.0;
                continue;
            }

            int leave = basis[leave_row];
            double g = dir * w[leave_row];
            if (g > 0.0) {
                state[leave] = kLower;
                value[leave] = 0.0;
            } else {
                state[leave] = kUpper;
                value[leave] = upper[leave];
            }
            if (leave >= c) upper[leave] = 0.0;  // artificials stay out for good
            value[enter] += dir * t_basic;
            basis[leave_row] = enter;
            state[enter] = kBasic;
        }
        throw internal_error("lp_solve: iteration limit exceeded");
    };

    double rhs_scale = 1.0;
    for (double b : p.rhs) rhs_scale = std::max(rhs_scale, std::fabs(b));

    run_phase(1);
    double residual = 0.0;
    for (int i = 0; i < r; ++i) residual += value[c + i];
    if (residual > tol * rhs_scale * 10.0) {
        LpSolution sol;
        sol.status = LpStatus::infeasible;
        for (int i = 0; i < r; ++i) {
            if (value[c + i] > tol * rhs_scale * 10.0) {
                sol.infeasible_row = i;
                break;
            }
        }
        return sol;
    }
    for (int i = 0; i < r; ++i) upper[c + i] = 0.0;

    run_phase(2);

    LpSolution sol;
    sol.status = LpStatus::optimal;
    sol.x.resize(static_cast<std::size_t>(c));
    for (int j = 0; j < c; ++j) {
        double v = value[j];
        if (std::fabs(v) <= 10.0 * tol) v = 0.0;
        else if (std::fabs(v - p.upper[j]) <= 10.0 * tol) v = p.upper[j];
        sol.x[j] = v;
    }
    sol.objective = 0.0;
    for (int j = 0; j < c; ++j) sol.objective += p.cost[j] * sol.x[j];
    return sol;
}

}  // namespace pipegame

#endif  // PIPEGAME_SIMPLEX_HPP
