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

#include <array>
#include <functional>

#include "pwlqp/problem.hpp"
#include "pwlqp/report.hpp"
#include "pwlqp/ssn.hpp"

namespace pwlqp::pmm {

/// Penalty and inner-tolerance schedule of the outer loop.
///
/// beta grows by `beta_growth` (capped at `beta_inf`) whenever the largest
/// termination residual fails to shrink by `progress_factor`; rho = beta/tau.
/// tau_k = max(tau0 * tau_decay^k, tau_min), non-increasing and bounded below.
/// The inner tolerance is
///   eps_k = max(min(eps0 * eps_decay^k, eps_rel * r_k), eps_floor_ratio * tol)
/// with r_k the largest termination residual at the start of iteration k.
struct PenaltySchedule {
  double beta0 = 10.0;
  double beta_inf = 1e8;
  double rho0 = 50.0;
  double beta_growth = 5.0;
  double progress_factor = 0.95;
  double tau_decay = 1.0;
  double tau_min = 1e-8;
  double eps0 = 1e-1;
  double eps_decay = 0.5;
  double eps_rel = 0.1;
  double eps_floor_ratio = 0.1;
  int max_outer = 200;

  double tau(int k) const;
  double epsilon(int k, double tol, double residual) const;
  void check() const;
};

struct PmmOptions {
  PenaltySchedule schedule;
  double tol = 1e-5;
  int max_inner = 20;
  double mu = 1e-4;
  double delta = 0.5;
  int max_backtracks = 40;
  bool accept_first_step = true;
  double kink_tol = 1e-8;
  double dual_cap = 1e10;
  // Iterate on the equilibrated instance; termination is always checked on
  // the original data.
  bool equilibrate = true;
};

struct Termination {
  bool converged = false;
  std::array<double, 4> residuals{};
};

/// What an observer sees after each outer iteration.
struct OuterRecord {
  int k = 0;
  double beta = 0.0;
  double rho = 0.0;
  double tau = 0.0;
  double zeta = 0.0;
  double epsilon = 0.0;
  const ssn::SsnStats* inner = nullptr;
  std::array<double, 4> residuals{};
};

using OuterObserver = std::function<void(const OuterRecord&)>;

/// (z + beta x) - beta P_K(z/beta + x).
Vec z_update(const Vec& z, const Vec& x_next, double beta, const Vec& a_l, const Vec& a_u);

struct PenaltyStep {
  double beta = 0.0;
  double rho = 0.0;
};

/// Penalties for iteration k+1 given beta_k and whether the outer residual
/// stalled.
PenaltyStep penalty_update(const PenaltySchedule& sched, int k, double beta, bool stalled);

/// The four normalized optimality residuals of the original problem:
/// x-stationarity, w-stationarity, primal feasibility, box complementarity.
Termination check_termination(const ProblemData& p, const Iterate& it, double tol);

struct PmmResult {
  Iterate iterate;
  SolveReport report;
};

/// Outer proximal method of multipliers with semismooth Newton sub-problem
/// solves. Counters in the report cover this call only (warmstart_iters = 0).
PmmResult pmm_solve(const ProblemData& p, const Iterate& start, const PmmOptions& opts,
                    const OuterObserver& observer = {});

}  // namespace pwlqp::pmm
