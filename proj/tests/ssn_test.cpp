// Copyright 2026 The pwlqp Authors
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

#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "oracle/dense_newton.hpp"
#include "pwlqp/prox.hpp"
#include "pwlqp/ssn.hpp"
#include "support/ssn_state.hpp"

namespace pwlqp::ssn {
namespace {

using testing_support::random_ssn_state;
using testing_support::RandomShape;

constexpr RandomShape kSmall{6, 6, 6, 1000};

double max_abs_diff(const Vec& a, const Vec& b) {
  return a.size() == 0 ? 0.0 : (a - b).lpNorm<Eigen::Infinity>();
}

TEST(Residuals, MhatMatchesDenseOracle) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 100; ++t) {
    auto s = random_ssn_state(rng, kSmall);
    const auto ref = oracle::dense_newton(s->dense_input());
    EXPECT_LT(max_abs_diff(residual_Mhat(s->ctx, s->pt.x, s->pt.w, s->pt.y), ref.mhat), 1e-12);
  }
}

TEST(Newton, ReducedMatchesFullSystem) {
  std::mt19937_64 rng(2);
  int with_kept = 0, with_fixed_x = 0, with_pinned = 0;
  for (int t = 0; t < 300; ++t) {
    auto s = random_ssn_state(rng, kSmall);
    const auto ref = oracle::dense_newton(s->dense_input());
    ActiveSets sets;
    const Direction d = newton_direction(s->ctx, s->pt, nullptr, nullptr, &sets);
    EXPECT_LT(max_abs_diff(d.dx, ref.dx), 1e-9) << "state " << t;
    EXPECT_LT(max_abs_diff(d.dw, ref.dw), 1e-9) << "state " << t;
    EXPECT_LT(max_abs_diff(d.dy, ref.dy), 1e-9) << "state " << t;
    with_kept += !sets.N_g2.empty();
    with_fixed_x += !sets.N_g1.empty();
    with_pinned += !sets.B_g2.empty();
  }
  // The generator must exercise every elimination branch.
  EXPECT_GT(with_kept, 50);
  EXPECT_GT(with_fixed_x, 50);
  EXPECT_GT(with_pinned, 50);
}

TEST(Newton, ExplicitPipelineMatchesDirection) {
  std::mt19937_64 rng(3);
  for (int t = 0; t < 50; ++t) {
    auto s = random_ssn_state(rng, kSmall);
    const auto& [x, w, y] = s->pt;
    const ActiveSets sets = build_active_sets(s->ctx, x, w, y);
    const ReducedNewton red = assemble_reduced(s->ctx, sets, x, w, y);
    const Factorization f(red.system);
    const Direction d = recover_eliminated(s->ctx, sets, red.record, f.solve(red.rhs));
    const Direction ref = newton_direction(s->ctx, s->pt);
    EXPECT_LT(max_abs_diff(d.dx, ref.dx), 1e-12);
    EXPECT_LT(max_abs_diff(d.dy, ref.dy), 1e-12);
  }
}

TEST(Newton, ReducedSystemInertia) {
  std::mt19937_64 rng(4);
  for (int t = 0; t < 100; ++t) {
    auto s = random_ssn_state(rng, kSmall);
    const auto& [x, w, y] = s->pt;
    const ActiveSets sets = build_active_sets(s->ctx, x, w, y);
    const ReducedNewton red = assemble_reduced(s->ctx, sets, x, w, y);
    const Factorization f(red.system);
    EXPECT_EQ(f.negative_pivots(), static_cast<Index>(sets.B_g1.size()));
    EXPECT_EQ(f.positive_pivots(), static_cast<Index>(sets.N_g2.size()) + s->problem.m());
  }
}

TEST(Newton, SelectorsMatchOracle) {
  std::mt19937_64 rng(5);
  for (int t = 0; t < 100; ++t) {
    auto s = random_ssn_state(rng, kSmall);
    const auto ref = oracle::dense_newton(s->dense_input());
    const ActiveSets sets = build_active_sets(s->ctx, s->pt.x, s->pt.w, s->pt.y);
    for (Index i : sets.B_g1) EXPECT_EQ(ref.b_g1[i], 1.0);
    for (Index i : sets.N_g1) EXPECT_EQ(ref.b_g1[i], 0.0);
    for (Index i : sets.B_g2) EXPECT_EQ(ref.b_g2[i], 1.0);
    for (Index i : sets.N_g2) EXPECT_EQ(ref.b_g2[i], 0.0);
    EXPECT_EQ(sets.B_delta, ref.b_delta);
  }
}

// Builds (x_k, y_k) so that a chosen (x, w, y) solves the sub-problem.
void make_optimal(testing_support::SsnState& s, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unif;
  const ProblemData& p = s.problem;
  const Index n = p.n(), l = p.l(), m = p.m();
  auto& [x, w, y] = s.pt;
  // -y_C must lie in the subdifferential of the plus-part at w.
  for (Index i = 0; i < l; ++i) {
    if (w[i] > 0.0) y[i] = -1.0;
    else if (w[i] < 0.0) y[i] = 0.0;
    else y[i] = -unif(rng);
  }
  Vec v(n);  // element of the subdifferential of g1 at x
  for (Index j = 0; j < n; ++j) {
    v[j] = x[j] > 0.0 ? p.D[j] : (x[j] < 0.0 ? -p.D[j] : p.D[j] * (2.0 * unif(rng) - 1.0));
  }
  auto& ctx = s.ctx;
  ctx.y_k.head(l) = y.head(l) + ctx.beta * (p.C * x + p.d - w);
  ctx.y_k.tail(m) = y.tail(m) + ctx.beta * (p.A * x - p.b);
  // r_x = -v with r_x affine in x_k through (x - x_k)/rho.
  ctx.x_k = x;
  const Vec r0 = residual_r(ctx, x, y).head(n);
  ctx.x_k = x + ctx.rho * (r0 + v);
}

TEST(Distance, ZeroAtSubproblemOptimum) {
  std::mt19937_64 rng(6);
  for (int t = 0; t < 100; ++t) {
    auto s = random_ssn_state(rng, kSmall);
    for (Index i = 0; i < s->problem.l(); ++i) {
      if (i % 3 == 0) s->pt.w[i] = 0.0;
    }
    make_optimal(*s, rng);
    const auto& [x, w, y] = s->pt;
    EXPECT_LT(subproblem_distance(s->ctx, x, w, y), 1e-10);
    EXPECT_LT(residual_Mhat(s->ctx, x, w, y).norm(), 1e-10);

    Vec xp = x;
    xp[0] = std::abs(xp[0]) + 1.0;
    EXPECT_GT(subproblem_distance(s->ctx, xp, w, y), 1e-6);
  }
}

TEST(LineSearch, RejectsNonFiniteDirection) {
  std::mt19937_64 rng(7);
  auto s = random_ssn_state(rng, kSmall);
  Direction d{Vec::Constant(s->problem.n(), std::nan("")), Vec::Zero(s->problem.l()),
              Vec::Zero(s->problem.l() + s->problem.m())};
  const double theta = merit(s->ctx, s->pt.x, s->pt.w, s->pt.y);
  EXPECT_FALSE(line_search(s->ctx, s->pt, d, theta, false).accepted);
}

TEST(LineSearch, ZeroDirectionNeverDecreases) {
  std::mt19937_64 rng(8);
  auto s = random_ssn_state(rng, kSmall);
  const Direction d{Vec::Zero(s->problem.n()), Vec::Zero(s->problem.l()),
                    Vec::Zero(s->problem.l() + s->problem.m())};
  const double theta = merit(s->ctx, s->pt.x, s->pt.w, s->pt.y);
  ASSERT_GT(theta, 0.0);
  EXPECT_FALSE(line_search(s->ctx, s->pt, d, theta, false).accepted);
  // The heuristic full step is taken when it does not increase the merit.
  const auto h = line_search(s->ctx, s->pt, d, theta, true);
  EXPECT_TRUE(h.accepted);
  EXPECT_TRUE(h.record.heuristic);
}

TEST(LineSearch, ContractOnSolves) {
  std::mt19937_64 rng(9);
  int checked = 0;
  for (int t = 0; t < 100; ++t) {
    auto s = random_ssn_state(rng, RandomShape{});
    s->ctx.epsilon = 1e-10;
    FactorizationCache cache;
    const SsnResult r = ssn_solve(s->ctx, s->pt, cache);
    EXPECT_LE(r.stats.factorizations, r.stats.iterations);
    for (const auto& rec : r.stats.steps) {
      if (rec.heuristic) {
        EXPECT_LE(rec.theta_new, rec.theta_old);
        continue;
      }
      const double factor = 1.0 - 2.0 * s->ctx.mu * std::pow(s->ctx.delta, rec.steps);
      EXPECT_EQ(rec.alpha, std::pow(s->ctx.delta, rec.steps));
      EXPECT_LE(rec.theta_new, factor * rec.theta_old);
      ++checked;
    }
  }
  EXPECT_GT(checked, 100);
}

TEST(Solve, ConvergesOnSubproblems) {
  std::mt19937_64 rng(10);
  int converged = 0;
  for (int t = 0; t < 50; ++t) {
    auto s = random_ssn_state(rng, RandomShape{});
    s->ctx.epsilon = 1e-8;
    s->ctx.max_inner = 50;
    FactorizationCache cache;
    const SsnResult r = ssn_solve(s->ctx, s->pt, cache);
    converged += r.stats.converged;
    if (r.stats.converged) {
      EXPECT_LE(subproblem_distance(s->ctx, r.point.x, r.point.w, r.point.y), 1e-8);
    }
  }
  EXPECT_GE(converged, 45);
}

TEST(Context, CheckRejectsBadConstants) {
  std::mt19937_64 rng(11);
  auto s = random_ssn_state(rng, kSmall);
  EXPECT_NO_THROW(s->ctx.check());
  s->ctx.mu = 0.5;
  EXPECT_THROW(s->ctx.check(), std::invalid_argument);
  s->ctx.mu = 1e-4;
  s->ctx.x_k = Vec::Zero(s->problem.n() + 1);
  EXPECT_THROW(s->ctx.check(), std::invalid_argument);
}

}  // namespace
}  // namespace pwlqp::ssn
