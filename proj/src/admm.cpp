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

#include "pwlqp/admm.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/SparseCholesky>

#include "pwlqp/prox.hpp"

namespace pwlqp::admm {

const char* to_string(Variant v) {
  switch (v) {
    case Variant::kAuto:
      return "auto";
    case Variant::kDiagonal:
      return "diagonal";
    case Variant::kProxLinear:
      return "proxlinear";
  }
  return "unknown";
}

void AdmmConfig::check() const {
  const double golden = (1.0 + std::sqrt(5.0)) / 2.0;
  if (!(sigma > 0.0)) throw std::invalid_argument("AdmmConfig: sigma must be positive");
  if (!(gamma > 0.0 && gamma < golden)) {
    throw std::invalid_argument("AdmmConfig: gamma must lie in (0, (1+sqrt 5)/2)");
  }
  if (!(diag_reg > 0.0)) throw std::invalid_argument("AdmmConfig: diag_reg must be positive");
  if (!(sigma_hat_margin > 1.0)) throw std::invalid_argument("AdmmConfig: margin must exceed 1");
  if (max_iter < 0) throw std::invalid_argument("AdmmConfig: max_iter must be >= 0");
  if (!(tol > 0.0)) throw std::invalid_argument("AdmmConfig: tol must be positive");
}

AdmmState AdmmState::zeros(const ProblemData& p) {
  const Index n = p.n(), l = p.l(), m = p.m();
  return {Vec::Zero(n), Vec::Zero(l), Vec::Zero(n + l), Vec::Zero(2 * l + m + n)};
}

namespace {

void check_dims(const ProblemData& p, const Vec& x, const Vec& w, const Vec& y) {
  const Index n = p.n(), l = p.l(), m = p.m();
  if (x.size() != n || w.size() != l || y.size() != 2 * l + m + n) {
    throw std::invalid_argument("admm: dimension mismatch");
  }
}

// Off-diagonal part of Q.
SpMat off_diagonal(const SpMat& Q) {
  SpMat off = Q;
  off.prune([](Index r, Index c, double) { return r != c; });
  return off;
}

}  // namespace

Vec u_step(const ProblemData& p, double sigma, const Vec& x, const Vec& w, const Vec& y) {
  check_dims(p, x, w, y);
  const Index n = p.n(), l = p.l();
  const Vec yu = y.tail(n + l);
  Vec u(n + l);
  u.head(n) = prox::project_box(prox::prox_g1(x + yu.head(n) / sigma, 1.0 / sigma, p.D), p.a_l,
                                p.a_u);
  u.tail(l) = prox::prox_g2(w + yu.tail(l) / sigma, 1.0 / sigma);
  return u;
}

Vec constraint_residual(const ProblemData& p, const Vec& x, const Vec& w, const Vec& u) {
  const Index n = p.n(), l = p.l(), m = p.m();
  Vec r(2 * l + m + n);
  r.head(l) = p.C * x - w + p.d;
  r.segment(l, m) = p.A * x - p.b;
  r.segment(l + m, n) = u.head(n) - x;
  r.tail(l) = u.tail(l) - w;
  return r;
}

Vec lagrangian_gradient(const ProblemData& p, double sigma, const Vec& x, const Vec& w,
                        const Vec& u, const Vec& y) {
  check_dims(p, x, w, y);
  const Index n = p.n(), l = p.l(), m = p.m();
  const Vec r = constraint_residual(p, x, w, u);
  // Effective multipliers y - sigma * r enter as -M_r'(y - sigma r).
  const Vec ye = y - sigma * r;
  Vec g(n + l);
  g.head(n) = p.c + p.Q * x - p.C.transpose() * ye.head(l) - p.A.transpose() * ye.segment(l, m) +
              ye.segment(l + m, n);
  g.tail(l) = ye.head(l) + ye.tail(l);
  return g;
}

Vec y_step(const ProblemData& p, double sigma, double gamma, const Vec& x, const Vec& w,
           const Vec& u, const Vec& y) {
  check_dims(p, x, w, y);
  return y - gamma * sigma * constraint_residual(p, x, w, u);
}

Termination terminate(const ProblemData& p, const Vec& x, const Vec& w, const Vec& u,
                      const Vec& y, double tol) {
  check_dims(p, x, w, y);
  const Index n = p.n(), l = p.l(), m = p.m();
  Termination t;
  const Vec stat = p.c + p.Q * x - p.C.transpose() * y.head(l) -
                   p.A.transpose() * y.segment(l, m) + y.segment(l + m, n);
  t.residuals[0] = stat.norm() / (1.0 + p.c.norm());
  t.residuals[1] = (y.head(l) + y.tail(l)).norm();
  Vec rhs(l + m);
  rhs.head(l) = -p.d;
  rhs.tail(m) = p.b;
  t.residuals[2] = constraint_residual(p, x, w, u).norm() / (rhs.norm() + 1.0);
  const Vec yt = y.tail(n + l);
  const Vec s = u + yt;
  Vec fixed(n + l);
  fixed.head(n) = prox::project_box(prox::prox_g1(s.head(n), 1.0, p.D), p.a_l, p.a_u);
  fixed.tail(l) = prox::prox_g2(s.tail(l), 1.0);
  t.residuals[3] = (u - fixed).norm() / (1.0 + u.norm() + yt.norm());
  t.converged = true;
  for (double r : t.residuals) t.converged = t.converged && r <= tol;
  return t;
}

namespace {

Vec apply_coupling(const ProblemData& p, const SpMat& off_q, double sigma, const Vec& v) {
  const Index n = p.n(), l = p.l();
  const Vec vx = v.head(n);
  const Vec vw = v.tail(l);
  const Vec cx = p.C * vx;
  Vec out(n + l);
  out.head(n) = p.C.transpose() * (cx - vw) + p.A.transpose() * (p.A * vx) + off_q * vx / sigma;
  out.tail(l) = -cx;
  return out;
}

}  // namespace

double estimate_coupling_norm(const ProblemData& p, double sigma, int iters) {
  const Index dim = p.n() + p.l();
  if (dim == 0) return 0.0;
  const SpMat off_q = off_diagonal(p.Q);
  // Deterministic start with no special structure.
  Vec v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = 1.0 + 0.5 * std::sin(static_cast<double>(i) + 1.0);
  v.normalize();
  double est = 0.0;
  for (int k = 0; k < iters; ++k) {
    Vec gv = apply_coupling(p, off_q, sigma, v);
    const double nrm = gv.norm();
    if (nrm == 0.0) return est;
    est = nrm;
    v = gv / nrm;
  }
  return est;
}

Mat coupling_matrix(const ProblemData& p, double sigma) {
  const Index n = p.n(), l = p.l();
  const SpMat off_q = off_diagonal(p.Q);
  Mat G = Mat::Zero(n + l, n + l);
  const Mat C = Mat(p.C), A = Mat(p.A);
  G.topLeftCorner(n, n) = C.transpose() * C + A.transpose() * A + Mat(off_q) / sigma;
  G.topRightCorner(n, l) = -C.transpose();
  G.bottomLeftCorner(l, n) = -C;
  return G;
}

Variant choose_variant(const ProblemData& p, const AdmmConfig& cfg) {
  if (cfg.variant != Variant::kAuto) return cfg.variant;
  // nnz(C'C) is bounded by the sum of squared row counts.
  const SpMatRow rows = p.C;
  double est = 0.0;
  for (Index i = 0; i < rows.rows(); ++i) {
    const double k = static_cast<double>(rows.outerIndexPtr()[i + 1] - rows.outerIndexPtr()[i]);
    est += k * k;
  }
  return est > cfg.nnz_budget ? Variant::kProxLinear : Variant::kDiagonal;
}

struct XwSolver::Impl {
  Eigen::SimplicialLLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> llt;
};

XwSolver::XwSolver(const ProblemData& p, double sigma, Variant variant, double diag_reg,
                   double sigma_hat)
    : p_(p), sigma_(sigma), variant_(variant), diag_reg_(diag_reg), sigma_hat_(sigma_hat) {
  if (variant_ == Variant::kAuto) throw std::invalid_argument("XwSolver: resolve variant first");
  const Index n = p.n(), l = p.l();
  if (variant_ == Variant::kProxLinear) {
    if (!(sigma_hat_ > 0.0)) throw std::invalid_argument("XwSolver: sigma_hat must be positive");
    prox_linear_diag_.resize(n + l);
    prox_linear_diag_.head(n) = Vec(p.Q.diagonal()).array() + sigma + sigma_hat_;
    prox_linear_diag_.tail(l).setConstant(2.0 * sigma + sigma_hat_);
    return;
  }
  // [Q + sigma (C'C + A'A + I) + rI, -sigma C'; -sigma C, (2 sigma + r) I]
  SpMat Ct = p.C.transpose();
  SpMat top = p.Q + sigma * SpMat(Ct * p.C) + sigma * SpMat(SpMat(p.A.transpose()) * p.A);
  std::vector<Triplet> trip;
  trip.reserve(top.nonZeros() + 2 * p.C.nonZeros() + n + l);
  for (Index j = 0; j < top.outerSize(); ++j) {
    for (SpMat::InnerIterator it(top, j); it; ++it) trip.emplace_back(it.row(), it.col(), it.value());
  }
  for (Index j = 0; j < p.C.outerSize(); ++j) {
    for (SpMat::InnerIterator it(p.C, j); it; ++it) {
      trip.emplace_back(n + it.row(), it.col(), -sigma * it.value());
      trip.emplace_back(it.col(), n + it.row(), -sigma * it.value());
    }
  }
  for (Index i = 0; i < n; ++i) trip.emplace_back(i, i, sigma + diag_reg);
  for (Index i = 0; i < l; ++i) trip.emplace_back(n + i, n + i, 2.0 * sigma + diag_reg);
  SpMat K(n + l, n + l);
  K.setFromTriplets(trip.begin(), trip.end());
  impl_ = std::make_unique<Impl>();
  if (n + l == 0) return;
  impl_->llt.compute(K);
  if (impl_->llt.info() != Eigen::Success) {
    throw std::runtime_error("XwSolver: factorization of the ADMM normal matrix failed");
  }
}

XwSolver::~XwSolver() = default;

Vec XwSolver::step(const Vec& x, const Vec& w, const Vec& u, const Vec& y) const {
  const Index n = p_.n(), l = p_.l();
  Vec v(n + l);
  v.head(n) = x;
  v.tail(l) = w;
  // The sub-problem is quadratic, so its minimizer is one Newton step from
  // the previous point with matrix (Hessian + R).
  const Vec g = lagrangian_gradient(p_, sigma_, x, w, u, y);
  if (variant_ == Variant::kProxLinear) return v - g.cwiseQuotient(prox_linear_diag_);
  if (n + l == 0) return v;
  return v - impl_->llt.solve(g);
}

Mat XwSolver::proximal_matrix() const {
  const Index dim = p_.n() + p_.l();
  if (variant_ == Variant::kDiagonal) return diag_reg_ * Mat::Identity(dim, dim);
  return sigma_hat_ * Mat::Identity(dim, dim) - sigma_ * coupling_matrix(p_, sigma_);
}

AdmmResult run(const ProblemData& p, const AdmmConfig& cfg) {
  return run(p, cfg, AdmmState::zeros(p));
}

AdmmResult run(const ProblemData& p, const AdmmConfig& cfg, AdmmState s) {
  require_valid(p);
  cfg.check();
  check_dims(p, s.x, s.w, s.y);
  if (s.u.size() != p.n() + p.l()) throw std::invalid_argument("admm: u has wrong length");

  AdmmResult out;
  out.variant = choose_variant(p, cfg);
  double sigma_hat = cfg.sigma_hat;
  if (out.variant == Variant::kProxLinear && !(sigma_hat > 0.0)) {
    const double g = estimate_coupling_norm(p, cfg.sigma);
    sigma_hat = g > 0.0 ? cfg.sigma_hat_margin * cfg.sigma * g : cfg.sigma;
  }
  const XwSolver xw(p, cfg.sigma, out.variant, cfg.diag_reg, sigma_hat);
  const Index n = p.n();

  for (int k = 0; k < cfg.max_iter; ++k) {
    s.u = u_step(p, cfg.sigma, s.x, s.w, s.y);
    const Vec v = xw.step(s.x, s.w, s.u, s.y);
    s.x = v.head(n);
    s.w = v.tail(p.l());
    s.y = y_step(p, cfg.sigma, cfg.gamma, s.x, s.w, s.u, s.y);
    ++out.iterations;
    out.termination = terminate(p, s.x, s.w, s.u, s.y, cfg.tol);
    if (out.termination.converged) break;
  }
  out.state = std::move(s);
  return out;
}

Iterate map_to_pmm_start(const ProblemData& p, const AdmmState& s) {
  const Index n = p.n(), l = p.l(), m = p.m();
  check_dims(p, s.x, s.w, s.y);
  Iterate it;
  it.x = s.x;
  it.w = s.w;
  it.y = s.y.head(l + m);
  const Vec yux = s.y.segment(l + m, n);
  it.z = yux - prox::project_subdiff_g1(s.u.head(n), yux, p.D);
  return it;
}

}  // namespace pwlqp::admm
