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

#include "pwlqp/ssn.hpp"

#include <cmath>
#include <stdexcept>

#include "pwlqp/prox.hpp"

namespace pwlqp::ssn {

namespace {

Vec scatter(const std::vector<Index>& idx, const Vec& values, Index size) {
  Vec out = Vec::Zero(size);
  for (size_t k = 0; k < idx.size(); ++k) out[idx[k]] = values[static_cast<Index>(k)];
  return out;
}

Vec gather(const Vec& v, const std::vector<Index>& idx) {
  Vec out(static_cast<Index>(idx.size()));
  for (size_t k = 0; k < idx.size(); ++k) out[static_cast<Index>(k)] = v[idx[k]];
  return out;
}

std::vector<std::uint8_t> to_bits(const std::vector<Index>& idx, Index size) {
  std::vector<std::uint8_t> bits(static_cast<size_t>(size), 0);
  for (Index i : idx) bits[static_cast<size_t>(i)] = 1;
  return bits;
}

// Bottom block of the optimality map without the zeta factor.
Vec feasibility_block(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y) {
  const ProblemData& p = ctx.data();
  const Index l = p.l();
  const Index m = p.m();
  Vec out(l + m);
  out.head(l) = p.C * x + p.d - w;
  out.tail(m) = p.A * x - p.b;
  out += (y - ctx.y_k) / ctx.beta;
  return out;
}

}  // namespace

void SsnContext::check() const {
  if (problem == nullptr || C_rows == nullptr) {
    throw std::invalid_argument("SsnContext: problem data not attached");
  }
  const ProblemData& p = *problem;
  if (x_k.size() != p.n() || z_k.size() != p.n() || y_k.size() != p.l() + p.m()) {
    throw std::invalid_argument("SsnContext: anchor dimensions do not match the problem");
  }
  if (!(beta > 0.0) || !(rho > 0.0) || !(zeta > 0.0) || !(epsilon > 0.0)) {
    throw std::invalid_argument("SsnContext: penalties and tolerance must be positive");
  }
  if (!(mu > 0.0 && mu < 0.5)) throw std::invalid_argument("SsnContext: mu must be in (0, 1/2)");
  if (!(delta > 0.0 && delta < 1.0)) {
    throw std::invalid_argument("SsnContext: delta must be in (0, 1)");
  }
  if (!(kink_tol >= 0.0) || short_step < 1) {
    throw std::invalid_argument("SsnContext: need kink_tol >= 0 and short_step >= 1");
  }
}

Vec residual_r(const SsnContext& ctx, const Vec& x, const Vec& y) {
  const ProblemData& p = ctx.data();
  const Index n = p.n();
  const Index l = p.l();
  Vec out(n + l);
  const Vec shifted = ctx.z_k / ctx.beta + x;
  out.head(n) = p.c + p.Q * x - p.C.transpose() * y.head(l) - p.A.transpose() * y.tail(p.m()) +
                (ctx.z_k + ctx.beta * x) - ctx.beta * prox::project_box(shifted, p.a_l, p.a_u) +
                (x - ctx.x_k) / ctx.rho;
  out.tail(l) = y.head(l);
  return out;
}

Vec residual_Mhat(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y) {
  const ProblemData& p = ctx.data();
  const Index n = p.n();
  const Index l = p.l();
  const double zeta = ctx.zeta;
  const Vec r = residual_r(ctx, x, y);
  Vec out(n + 2 * l + p.m());
  out.head(n) = x - prox::prox_g1(x - zeta * r.head(n), zeta, p.D);
  out.segment(n, l) = w - prox::prox_g2(w - zeta * y.head(l), zeta);
  out.tail(l + p.m()) = zeta * feasibility_block(ctx, x, w, y);
  return out;
}

double merit(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y) {
  return residual_Mhat(ctx, x, w, y).squaredNorm();
}

double subproblem_distance(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y) {
  const ProblemData& p = ctx.data();
  const Vec r = residual_r(ctx, x, y);
  const Vec top = r + prox::project_subdiff_g(x, w, -r, p.D);
  return std::sqrt(top.squaredNorm() + feasibility_block(ctx, x, w, y).squaredNorm());
}

ActiveSets build_active_sets(const SsnContext& ctx, const Vec& x, const Vec& w, const Vec& y) {
  const ProblemData& p = ctx.data();
  const Index n = p.n();
  const Index l = p.l();
  const Vec r = residual_r(ctx, x, y);
  const Vec u_hat = x - ctx.zeta * r.head(n);
  const Vec bg1 = prox::select_B_g1(u_hat, ctx.zeta, p.D);
  const Vec bg2 = prox::select_B_g2(w, y.head(l), ctx.zeta);

  ActiveSets sets;
  sets.B_delta = prox::select_B_delta(ctx.z_k, x, ctx.beta, p.a_l, p.a_u);
  for (Index i = 0; i < n; ++i) (bg1[i] != 0.0 ? sets.B_g1 : sets.N_g1).push_back(i);
  for (Index i = 0; i < l; ++i) (bg2[i] != 0.0 ? sets.B_g2 : sets.N_g2).push_back(i);
  return sets;
}

Index flip_near_kinks(const SsnContext& ctx, const SsnPoint& pt, ActiveSets& sets) {
  const ProblemData& p = ctx.data();
  const Index n = p.n();
  const Index l = p.l();
  const double tol = ctx.kink_tol;
  const auto near = [tol](double v, double kink) {
    return std::abs(v - kink) <= tol * (1.0 + std::abs(kink));
  };
  std::vector<char> bg1(static_cast<size_t>(n), 0), bg2(static_cast<size_t>(l), 0);
  for (Index i : sets.B_g1) bg1[static_cast<size_t>(i)] = 1;
  for (Index i : sets.B_g2) bg2[static_cast<size_t>(i)] = 1;

  Index flips = 0;
  const Vec u_hat = pt.x - ctx.zeta * residual_r(ctx, pt.x, pt.y).head(n);
  for (Index i = 0; i < n; ++i) {
    const double t = ctx.zeta * p.D[i];
    if (p.D[i] > 0.0 && near(std::abs(u_hat[i]), t)) {
      bg1[static_cast<size_t>(i)] ^= 1;
      ++flips;
    }
    const double s = ctx.z_k[i] / ctx.beta + pt.x[i];
    if ((std::isfinite(p.a_l[i]) && near(s, p.a_l[i])) ||
        (std::isfinite(p.a_u[i]) && near(s, p.a_u[i]))) {
      sets.B_delta[i] = 1.0 - sets.B_delta[i];
      ++flips;
    }
  }
  for (Index i = 0; i < l; ++i) {
    const double s = pt.w[i] - ctx.zeta * pt.y[i];
    if (near(s, 0.0) || near(s, ctx.zeta)) {
      bg2[static_cast<size_t>(i)] ^= 1;
      ++flips;
    }
  }
  if (flips == 0) return 0;
  sets.B_g1.clear();
  sets.N_g1.clear();
  sets.B_g2.clear();
  sets.N_g2.clear();
  for (Index i = 0; i < n; ++i) (bg1[static_cast<size_t>(i)] ? sets.B_g1 : sets.N_g1).push_back(i);
  for (Index i = 0; i < l; ++i) (bg2[static_cast<size_t>(i)] ? sets.B_g2 : sets.N_g2).push_back(i);
  return flips;
}

ReducedNewton assemble_reduced(const SsnContext& ctx, const ActiveSets& sets, const Vec& x,
                               const Vec& w, const Vec& y) {
  const ProblemData& p = ctx.data();
  const Index n = p.n();
  const Index l = p.l();
  const Index m = p.m();
  if (x.size() != n || w.size() != l || y.size() != l + m || sets.B_delta.size() != n ||
      static_cast<Index>(sets.B_g1.size() + sets.N_g1.size()) != n ||
      static_cast<Index>(sets.B_g2.size() + sets.N_g2.size()) != l) {
    throw std::invalid_argument("assemble_reduced: inconsistent dimensions");
  }
  const double zeta = ctx.zeta;
  const double beta = ctx.beta;
  const Index nb = static_cast<Index>(sets.B_g1.size());
  const Index nr = static_cast<Index>(sets.N_g2.size());

  ReducedNewton out;
  EliminationRecord& rec = out.record;
  rec.Mhat = residual_Mhat(ctx, x, w, y);
  const Vec Mx = rec.Mhat.head(n);
  const Vec Mw = rec.Mhat.segment(n, l);
  const Vec Mc = rec.Mhat.segment(n + l, l);
  const Vec Ma = rec.Mhat.tail(m);

  // Eliminated components, in pivot order: C-row multipliers on B_g2 and
  // slacks on N_g2 from the second block row, then x on N_g1.
  rec.dy_B = -gather(Mw, sets.B_g2) / zeta;
  rec.dw_N = -gather(Mw, sets.N_g2);
  rec.dx_N = -gather(Mx, sets.N_g1);

  std::vector<Index> pos_b(static_cast<size_t>(n), -1);
  for (Index k = 0; k < nb; ++k) pos_b[static_cast<size_t>(sets.B_g1[static_cast<size_t>(k)])] = k;

  // (1,1) block: -((beta + 1/rho) I - beta B_delta + Q) on B_g1 x B_g1.
  std::vector<Triplet> h_trips;
  h_trips.reserve(static_cast<size_t>(nb + p.Q.nonZeros()));
  for (Index k = 0; k < nb; ++k) {
    const Index i = sets.B_g1[static_cast<size_t>(k)];
    // Grouped so that B_delta = 1 leaves 1/rho without cancellation.
    h_trips.emplace_back(k, k, -(1.0 / ctx.rho + beta * (1.0 - sets.B_delta[i])));
  }
  for (Index j : sets.B_g1) {
    for (SpMat::InnerIterator it(p.Q, j); it; ++it) {
      const Index pi = pos_b[static_cast<size_t>(it.row())];
      if (pi >= 0) h_trips.emplace_back(pi, pos_b[static_cast<size_t>(j)], -it.value());
    }
  }
  out.system.H_red.resize(nb, nb);
  out.system.H_red.setFromTriplets(h_trips.begin(), h_trips.end());

  // E = [C(N_g2, B_g1); A(:, B_g1)].
  std::vector<Triplet> e_trips;
  for (Index r = 0; r < nr; ++r) {
    const Index i = sets.N_g2[static_cast<size_t>(r)];
    for (SpMatRow::InnerIterator it(*ctx.C_rows, i); it; ++it) {
      const Index pj = pos_b[static_cast<size_t>(it.col())];
      if (pj >= 0) e_trips.emplace_back(r, pj, it.value());
    }
  }
  for (Index j : sets.B_g1) {
    for (SpMat::InnerIterator it(p.A, j); it; ++it) {
      e_trips.emplace_back(nr + it.row(), pos_b[static_cast<size_t>(j)], it.value());
    }
  }
  out.system.E.resize(nr + m, nb);
  out.system.E.setFromTriplets(e_trips.begin(), e_trips.end());
  out.system.reg = 1.0 / beta;

  // Right-hand side with the contributions of the eliminated components.
  const Vec dx_elim = scatter(sets.N_g1, rec.dx_N, n);
  const Vec dy_elim = scatter(sets.B_g2, rec.dy_B, l);
  const Vec q_elim = p.Q * dx_elim;
  const Vec ct_elim = p.C.transpose() * dy_elim;
  const Vec c_elim = p.C * dx_elim;
  const Vec a_elim = p.A * dx_elim;

  out.rhs.resize(nb + nr + m);
  for (Index k = 0; k < nb; ++k) {
    const Index i = sets.B_g1[static_cast<size_t>(k)];
    out.rhs[k] = Mx[i] / zeta + q_elim[i] - ct_elim[i];
  }
  for (Index r = 0; r < nr; ++r) {
    const Index i = sets.N_g2[static_cast<size_t>(r)];
    out.rhs[nb + r] = -Mc[i] / zeta - c_elim[i] + rec.dw_N[r];
  }
  out.rhs.tail(m) = -Ma / zeta - a_elim;

  SaddleSignature& sig = out.system.signature;
  sig.b_g1 = to_bits(sets.B_g1, n);
  sig.b_g2 = to_bits(sets.B_g2, l);
  sig.b_delta.resize(static_cast<size_t>(nb));
  for (Index k = 0; k < nb; ++k) {
    sig.b_delta[static_cast<size_t>(k)] = sets.B_delta[sets.B_g1[static_cast<size_t>(k)]] != 0.0;
  }
  sig.beta = beta;
  sig.zeta = zeta;
  sig.rho = ctx.rho;
  sig.rehash();
  return out;
}

Direction recover_eliminated(const SsnContext& ctx, const ActiveSets& sets,
                             const EliminationRecord& record, const Vec& solution) {
  const ProblemData& p = ctx.data();
  const Index n = p.n();
  const Index l = p.l();
  const Index m = p.m();
  const Index nb = static_cast<Index>(sets.B_g1.size());
  const Index nr = static_cast<Index>(sets.N_g2.size());
  if (solution.size() != nb + nr + m) {
    throw std::invalid_argument("recover_eliminated: reduced solution has the wrong length");
  }

  Direction dir;
  dir.dx = scatter(sets.N_g1, record.dx_N, n);
  for (Index k = 0; k < nb; ++k) dir.dx[sets.B_g1[static_cast<size_t>(k)]] = solution[k];

  dir.dy.resize(l + m);
  for (size_t k = 0; k < sets.B_g2.size(); ++k) {
    dir.dy[sets.B_g2[k]] = record.dy_B[static_cast<Index>(k)];
  }
  for (Index r = 0; r < nr; ++r) dir.dy[sets.N_g2[static_cast<size_t>(r)]] = solution[nb + r];
  dir.dy.tail(m) = solution.tail(m);

  // Slacks on B_g2 from the C-rows of the last block row.
  dir.dw = scatter(sets.N_g2, record.dw_N, l);
  if (!sets.B_g2.empty()) {
    const Vec cdx = p.C * dir.dx;
    const Vec Mc = record.Mhat.segment(n + l, l);
    for (Index i : sets.B_g2) {
      dir.dw[i] = cdx[i] + dir.dy[i] / ctx.beta + Mc[i] / ctx.zeta;
    }
  }
  return dir;
}

namespace {

Direction direction_for(const SsnContext& ctx, const SsnPoint& pt, const ActiveSets& sets,
                        FactorizationCache* cache, bool* factorized) {
  const ReducedNewton red = assemble_reduced(ctx, sets, pt.x, pt.w, pt.y);
  std::shared_ptr<const Factorization> f;
  if (cache != nullptr) {
    f = cache->get(red.system, factorized);
  } else {
    f = factorize(red.system);
    if (factorized) *factorized = true;
  }
  return recover_eliminated(ctx, sets, red.record, f->solve(red.rhs));
}

}  // namespace

Direction newton_direction(const SsnContext& ctx, const SsnPoint& pt, FactorizationCache* cache,
                           bool* factorized, ActiveSets* sets_out) {
  ActiveSets sets = build_active_sets(ctx, pt.x, pt.w, pt.y);
  Direction dir = direction_for(ctx, pt, sets, cache, factorized);
  if (sets_out) *sets_out = std::move(sets);
  return dir;
}

LineSearchResult line_search(const SsnContext& ctx, const SsnPoint& pt, const Direction& dir,
                             double theta_old, bool skip_test) {
  LineSearchResult res;
  res.record.theta_old = theta_old;
  if (!dir.dx.allFinite() || !dir.dw.allFinite() || !dir.dy.allFinite()) return res;

  for (int m = 0; m <= ctx.max_backtracks; ++m) {
    const double alpha = std::pow(ctx.delta, m);
    const SsnPoint trial{pt.x + alpha * dir.dx, pt.w + alpha * dir.dw, pt.y + alpha * dir.dy};
    const double theta = merit(ctx, trial.x, trial.w, trial.y);
    // The unconditional full step is still refused when it increases the
    // merit; backtracking then proceeds as usual.
    const bool heuristic = skip_test && m == 0 && theta <= theta_old;
    if (heuristic || theta <= (1.0 - 2.0 * ctx.mu * alpha) * theta_old) {
      res.accepted = true;
      res.record = {m, alpha, theta_old, theta, heuristic};
      res.point = trial;
      return res;
    }
  }
  return res;
}

SsnResult ssn_solve(const SsnContext& ctx, const SsnPoint& start, FactorizationCache& cache) {
  ctx.check();
  SsnResult out;
  SsnStats& st = out.stats;
  SsnPoint pt = start;
  double theta = merit(ctx, pt.x, pt.w, pt.y);

  st.distance = subproblem_distance(ctx, pt.x, pt.w, pt.y);
  for (int j = 0; j < ctx.max_inner && st.distance > ctx.epsilon; ++j) {
    bool fresh = false;
    ActiveSets sets;
    const Direction dir = newton_direction(ctx, pt, &cache, &fresh, &sets);
    st.factorizations += fresh ? 1 : 0;
    st.free_x = static_cast<Index>(sets.B_g1.size());
    st.kept_rows = static_cast<Index>(sets.N_g2.size());
    ++st.iterations;

    const bool skip = ctx.accept_first_step && j == 0;
    LineSearchResult ls = line_search(ctx, pt, dir, theta, skip);
    if (ctx.kink_tol > 0.0 && (!ls.accepted || ls.record.steps >= ctx.short_step) &&
        j + 1 < ctx.max_inner) {
      // Sitting on a kink, the chosen element can point into the wrong
      // piece; the alternative costs one more Newton iteration.
      ActiveSets alt = sets;
      if (flip_near_kinks(ctx, pt, alt) > 0) {
        ++j;
        ++st.iterations;
        const Direction alt_dir = direction_for(ctx, pt, alt, &cache, &fresh);
        st.factorizations += fresh ? 1 : 0;
        LineSearchResult alt_ls = line_search(ctx, pt, alt_dir, theta, false);
        if (alt_ls.accepted && (!ls.accepted || alt_ls.record.theta_new < ls.record.theta_new)) {
          ls = std::move(alt_ls);
          ls.record.kink_retry = true;
          st.free_x = static_cast<Index>(alt.B_g1.size());
          st.kept_rows = static_cast<Index>(alt.N_g2.size());
        }
      }
    }
    if (!ls.accepted) {
      st.line_search_failed = true;
      break;
    }
    st.steps.push_back(ls.record);
    pt = std::move(ls.point);
    theta = ls.record.theta_new;
    st.distance = subproblem_distance(ctx, pt.x, pt.w, pt.y);
  }

  st.converged = st.distance <= ctx.epsilon;
  st.merit = theta;
  out.point = std::move(pt);
  return out;
}

}  // namespace pwlqp::ssn
