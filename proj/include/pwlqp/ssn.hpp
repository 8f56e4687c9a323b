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

#pragma once

#include <vector>

#include "pwlqp/linalg.hpp"
#include "pwlqp/problem.hpp"

namespace pwlqp::ssn {

/// One proximal augmented-Lagrangian sub-problem: the anchor (x_k, y_k, z_k)
/// from the outer loop plus penalties and line-search constants.
struct SsnContext {
  const ProblemData* problem = nullptr;
  const SpMatRow* C_rows = nullptr;  // row-compressed mirror of problem->C

  Vec x_k;
  Vec y_k;
  Vec z_k;
  double beta = 10.0;
  double rho = 50.0;
  double zeta = 0.1;
  double epsilon = 1e-6;  // inner tolerance on the sub-problem distance
  double mu = 1e-4;       // sufficient-decrease constant, in (0, 1/2)
  double delta = 0.5;     // backtracking factor, in (0, 1)
  int max_inner = 20;
  int max_backtracks = 40;
  bool accept_first_step = true;  // take the first Newton step without line search
  // When a line search fails or needs at least `short_step` halvings, retry
  // with the selectors flipped at entries within kink_tol of a kink. 0 disables.
  double kink_tol = 1e-8;
  int short_step = 10;

  /// Throws std::invalid_argument when a constant is out of range or a
  /// dimension does not match the problem.
  void check() const;
  const ProblemData& data() const { return *problem; }
};

struct SsnPoint {
  Vec x;
  Vec w;
  Vec y;
};

struct Direction {
  Vec dx;
  Vec dw;
  Vec dy;
};

/// Index sets of the reduced Newton system. B_g1 are the free x's, N_g2 the
/// C-rows that stay in the system; everything else is eliminated.
struct ActiveSets {
  std::vector<Index> B_g1;
  std::vector<Index> N_g1;
  std::vector<Index> B_g2;
  std::vector<Index> N_g2;
  Vec B_delta;  // 0/1 diagonal, length n
};

/// Components of the Newton direction fixed before the reduced solve.
struct EliminationRecord {
  Vec dx_N;  // on N_g1
  Vec dy_B;  // C-row multipliers on B_g2
  Vec dw_N;  // on N_g2
  Vec Mhat;  // residual at the linearization point
};

struct ReducedNewton {
  SaddleSystem system;
  Vec rhs;
  EliminationRecord record;
};

/// First block: c + Qx - [C' A']y + (z_k + beta x) - beta P_K(z_k/beta + x)
/// + (x - x_k)/rho. Second block: y_{1:l}.
Vec residual_r(const SsnContext& ctx, const Vec& x, const Vec& y);

/// The smoothed optimality map whose root solves the sub-problem; length
/// n + l + l + m.
Vec residual_Mhat(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y);

/// Squared norm of residual_Mhat.
double merit(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y);

/// Distance from zero to the sub-problem optimality set at (x, w, y), the
/// quantity compared against the inner tolerance.
double subproblem_distance(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y);

ActiveSets build_active_sets(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y);

/// Moves every entry lying within ctx.kink_tol of a selector kink to the other
/// side (B_g1/N_g1, B_g2/N_g2, B_delta). Both sides are valid Jacobian
/// elements there. Returns the number of flips.
Index flip_near_kinks(const SsnContext& ctx, const SsnPoint& pt, ActiveSets& sets);

ReducedNewton assemble_reduced(const SsnContext& ctx, const ActiveSets& sets, const Vec& x,
                               const Vec& w, const Vec& y);

/// `solution` is the reduced unknown (dx on B_g1, dy on N_g2, dy on A-rows).
Direction recover_eliminated(const SsnContext& ctx, const ActiveSets& sets,
                             const EliminationRecord& record, const Vec& solution);

/// Reduced-system direction at (x, w, y); `cache` may be null.
Direction newton_direction(const SsnContext& ctx, const SsnPoint& pt,
                           FactorizationCache* cache = nullptr, bool* factorized = nullptr,
                           ActiveSets* sets_out = nullptr);

struct LineSearchRecord {
  int steps = 0;  // m_j
  double alpha = 1.0;
  double theta_old = 0.0;
  double theta_new = 0.0;
  bool heuristic = false;  // full step accepted without the decrease test
  bool kink_retry = false;  // direction from flip_near_kinks
};

struct LineSearchResult {
  bool accepted = false;
  LineSearchRecord record;
  SsnPoint point;
};

/// Backtracking on the merit function with the test
/// theta(new) <= (1 - 2 mu delta^m) theta(old). With `skip_test` the full step
/// is accepted without that test as long as it does not increase theta.
LineSearchResult line_search(const SsnContext& ctx, const SsnPoint& pt, const Direction& dir,
                             double theta_old, bool skip_test);

struct SsnStats {
  int iterations = 0;
  int factorizations = 0;
  bool converged = false;
  bool line_search_failed = false;
  double distance = 0.0;
  double merit = 0.0;
  Index free_x = 0;     // |B_g1| at the last Newton step
  Index kept_rows = 0;  // |N_g2| at the last Newton step
  std::vector<LineSearchRecord> steps;
};

struct SsnResult {
  SsnPoint point;
  SsnStats stats;
};

/// Runs the semismooth Newton method from `start` until the sub-problem
/// distance drops below ctx.epsilon or ctx.max_inner steps were taken.
SsnResult ssn_solve(const SsnContext& ctx, const SsnPoint& start, FactorizationCache& cache);

}  // namespace pwlqp::ssn
