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

#include "pwlqp/pmm.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <stdexcept>

#include "pwlqp/prox.hpp"
#include "pwlqp/scaling.hpp"

namespace pwlqp::pmm {

namespace {

double inf_norm(const Vec& v) { return v.size() ? v.lpNorm<Eigen::Infinity>() : 0.0; }

double max_of(const std::array<double, 4>& r) { return *std::max_element(r.begin(), r.end()); }

}  // namespace

double PenaltySchedule::tau(int k) const {
  return std::max(beta0 / rho0 * std::pow(tau_decay, k), tau_min);
}

double PenaltySchedule::epsilon(int k, double tol, double residual) const {
  return std::max(std::min(eps0 * std::pow(eps_decay, k), eps_rel * residual),
                  eps_floor_ratio * tol);
}

void PenaltySchedule::check() const {
  if (!(beta0 > 0.0) || !(rho0 > 0.0) || !(beta_inf >= beta0) || !(beta_growth > 1.0)) {
    throw std::invalid_argument("PenaltySchedule: need 0 < beta0 <= beta_inf, rho0 > 0, growth > 1");
  }
  if (!(tau_decay > 0.0 && tau_decay <= 1.0) || !(tau_min > 0.0)) {
    throw std::invalid_argument("PenaltySchedule: tau must be non-increasing and bounded below");
  }
  if (!(eps0 > 0.0) || !(eps_decay > 0.0 && eps_decay < 1.0) || !(eps_floor_ratio > 0.0) ||
      !(eps_rel > 0.0)) {
    throw std::invalid_argument("PenaltySchedule: bad inner tolerance schedule");
  }
  if (max_outer < 0) throw std::invalid_argument("PenaltySchedule: max_outer must be >= 0");
}

// Written as beta (s - P_K(s)) with s = z/beta + x, so that entries strictly
// inside K come out as exact zeros.
Vec z_update(const Vec& z, const Vec& x_next, double beta, const Vec& a_l, const Vec& a_u) {
  const Vec s = z / beta + x_next;
  return beta * (s - prox::project_box(s, a_l, a_u));
}

PenaltyStep penalty_update(const PenaltySchedule& sched, int k, double beta, bool stalled) {
  PenaltyStep step;
  step.beta = stalled ? std::min(sched.beta_growth * beta, sched.beta_inf) : beta;
  step.rho = step.beta / sched.tau(k + 1);
  return step;
}

Termination check_termination(const ProblemData& p, const Iterate& it, double tol) {
  const Index l = p.l();
  const Index m = p.m();
  const Vec& x = it.x;
  const Vec& w = it.w;
  const Vec& y = it.y;
  const Vec& z = it.z;

  Termination t;
  const Vec grad =
      x - p.c - p.Q * x + p.C.transpose() * y.head(l) + p.A.transpose() * y.tail(m) - z;
  t.residuals[0] = (x - prox::prox_g1(grad, 1.0, p.D)).norm() / (1.0 + inf_norm(p.c));
  t.residuals[1] = (w - prox::prox_g2(w - y.head(l), 1.0)).norm();
  Vec feas(l + m);
  feas.head(l) = p.C * x + p.d - w;
  feas.tail(m) = p.A * x - p.b;
  t.residuals[2] = feas.norm() / (1.0 + inf_norm(p.b) + inf_norm(p.d));
  t.residuals[3] = (x - prox::project_box(x + z, p.a_l, p.a_u)).norm() /
                   (1.0 + inf_norm(x) + inf_norm(z));
  t.converged = std::all_of(t.residuals.begin(), t.residuals.end(),
                            [tol](double r) { return r <= tol; });
  return t;
}

namespace {

void check_start(const ProblemData& p, const Iterate& s) {
  if (s.x.size() != p.n() || s.w.size() != p.l() || s.y.size() != p.l() + p.m() ||
      s.z.size() != p.n()) {
    throw std::invalid_argument("pmm_solve: starting point dimensions do not match the problem");
  }
  if (!s.finite()) throw std::invalid_argument("pmm_solve: starting point is not finite");
}

double report_objective(const ProblemData& p, const Vec& x) {
  return objective_at(p, prox::project_box(x, p.a_l, p.a_u));
}

}  // namespace

PmmResult pmm_solve(const ProblemData& p, const Iterate& start, const PmmOptions& opts,
                    const OuterObserver& observer) {
  const auto t0 = std::chrono::steady_clock::now();
  require_valid(p);
  check_start(p, start);
  const PenaltySchedule& sched = opts.schedule;
  sched.check();
  if (!(opts.tol > 0.0)) throw std::invalid_argument("pmm_solve: tol must be positive");

  const Equilibration eq = opts.equilibrate ? equilibrate(p) : Equilibration::identity(p);
  const ProblemData ps = eq.apply(p);
  const SpMatRow C_rows = ps.C;
  FactorizationCache cache;

  PmmResult out;
  SolveReport& rep = out.report;
  // `it` lives in the scaled instance.
  Iterate it = eq.to_scaled(start);
  const auto original = [&] { return eq.to_original(it); };
  rep.n = p.n();
  rep.l = p.l();
  rep.m = p.m();

  ssn::SsnContext ctx;
  ctx.problem = &ps;
  ctx.C_rows = &C_rows;
  ctx.mu = opts.mu;
  ctx.delta = opts.delta;
  ctx.max_inner = opts.max_inner;
  ctx.max_backtracks = opts.max_backtracks;
  ctx.accept_first_step = opts.accept_first_step;
  ctx.kink_tol = opts.kink_tol;

  double beta = sched.beta0;
  double rho = sched.rho0;
  bool have_sets = false;

  Termination term = check_termination(p, original(), opts.tol);
  rep.status = SolveStatus::kMaxIter;
  for (int k = 0; k < sched.max_outer && !term.converged; ++k) {
    ctx.x_k = it.x;
    ctx.y_k = it.y;
    ctx.z_k = it.z;
    ctx.beta = beta;
    ctx.rho = rho;
    ctx.zeta = std::min(1.0, 1.0 / beta);
    ctx.epsilon = sched.epsilon(k, opts.tol, max_of(term.residuals));

    ssn::SsnResult inner;
    try {
      inner = ssn::ssn_solve(ctx, {it.x, it.w, it.y}, cache);
    } catch (const NumericalBreakdown&) {
      rep.status = SolveStatus::kNumericalError;
      break;
    }
    ++rep.outer_iters;
    rep.inner_iters_total += inner.stats.iterations;
    rep.factorizations += inner.stats.factorizations;
    if (inner.stats.iterations > 0) {
      rep.free_x = inner.stats.free_x;
      rep.kept_rows = inner.stats.kept_rows;
      have_sets = true;
    }

    it.x = std::move(inner.point.x);
    it.w = std::move(inner.point.w);
    it.y = std::move(inner.point.y);
    it.z = z_update(ctx.z_k, it.x, beta, ps.a_l, ps.a_u);
    if (!it.finite()) {
      rep.status = SolveStatus::kNumericalError;
      break;
    }
    if (inf_norm(it.y) > opts.dual_cap || inf_norm(it.z) > opts.dual_cap) {
      rep.status = SolveStatus::kSuspectedInfeasible;
      break;
    }

    const double previous = max_of(term.residuals);
    term = check_termination(p, original(), opts.tol);
    const double current = max_of(term.residuals);

    // Only a solved sub-problem that did not reduce the outer residual
    // warrants a larger penalty. An unsolved one is retried from where it
    // stopped; raising beta there only worsens the conditioning.
    const bool stalled = inner.stats.converged && current > sched.progress_factor * previous;
    if (observer) {
      observer({k, beta, rho, sched.tau(k), ctx.zeta, ctx.epsilon, &inner.stats, term.residuals});
    }
    const PenaltyStep next = penalty_update(sched, k, beta, stalled);
    beta = next.beta;
    rho = next.rho;
  }

  if (rep.status == SolveStatus::kMaxIter && term.converged) rep.status = SolveStatus::kOptimal;
  rep.residuals = term.residuals;
  out.iterate = original();
  rep.objective = report_objective(p, out.iterate.x);
  if (!have_sets) {
    ctx.x_k = it.x;
    ctx.y_k = it.y;
    ctx.z_k = it.z;
    ctx.beta = beta;
    ctx.rho = rho;
    ctx.zeta = std::min(1.0, 1.0 / beta);
    const auto sets = ssn::build_active_sets(ctx, it.x, it.w, it.y);
    rep.free_x = static_cast<Index>(sets.B_g1.size());
    rep.kept_rows = static_cast<Index>(sets.N_g2.size());
  }
  rep.wall_time_s = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

}  // namespace pwlqp::pmm
