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

// Reference optimum through a smooth QP reformulation solved by a dense
// primal-dual interior point method (Mehrotra predictor-corrector).
//
//   min  c'x + 1/2 x'Qx + 1'p + D't
//   s.t. Cx + d = p - q,  Ax = b,  p, q >= 0,  t >= x,  t >= -x,  x in [a_l, a_u]
//
// t_j only exists where D_j > 0 so that no variable is free to drift.

#include <algorithm>
#include <cmath>
#include <vector>

#include <Eigen/Dense>

#include "pwlqp/problem.hpp"

namespace oracle {

struct QpResult {
  bool converged = false;
  int iterations = 0;
  double objective = 0.0;
  pwlqp::Vec x;
};

// Objective of (P) at x with w = Cx + d, evaluated with plain loops.
inline double naive_objective(const pwlqp::ProblemData& p, const pwlqp::Vec& x) {
  const pwlqp::Mat Q(p.Q), C(p.C);
  double f = p.const_offset;
  for (long i = 0; i < x.size(); ++i) {
    f += p.c[i] * x[i] + p.D[i] * std::abs(x[i]);
    for (long j = 0; j < x.size(); ++j) f += 0.5 * x[i] * Q(i, j) * x[j];
  }
  for (long r = 0; r < C.rows(); ++r) {
    double s = p.d[r];
    for (long j = 0; j < x.size(); ++j) s += C(r, j) * x[j];
    f += std::max(s, 0.0);
  }
  return f;
}

inline QpResult solve_qp_ipm(const pwlqp::ProblemData& p, int max_iter = 200, double tol = 1e-11) {
  using pwlqp::Mat;
  using pwlqp::Vec;
  const long n = p.n(), l = p.l(), m = p.m();
  std::vector<long> tcol;
  for (long j = 0; j < n; ++j) {
    if (p.D[j] > 0.0) tcol.push_back(j);
  }
  const long nt = static_cast<long>(tcol.size());
  const long nv = n + 2 * l + nt;  // (x, p, q, t)
  const long ix = 0, ip = n, iq = n + l, it = n + 2 * l;

  Mat H = Mat::Zero(nv, nv);
  H.topLeftCorner(n, n) = Mat(p.Q);
  Vec g = Vec::Zero(nv);
  g.segment(ix, n) = p.c;
  g.segment(ip, l).setOnes();
  for (long k = 0; k < nt; ++k) g[it + k] = p.D[tcol[k]];

  Mat E = Mat::Zero(l + m, nv);
  Vec f(l + m);
  E.block(0, ix, l, n) = Mat(p.C);
  E.block(0, ip, l, l) = -Mat::Identity(l, l);
  E.block(0, iq, l, l) = Mat::Identity(l, l);
  f.head(l) = -p.d;
  E.block(l, ix, m, n) = Mat(p.A);
  f.tail(m) = p.b;

  std::vector<std::pair<Vec, double>> rows;  // G_i v >= h_i
  auto unit = [&](long col, double s) {
    Vec r = Vec::Zero(nv);
    r[col] = s;
    return r;
  };
  for (long i = 0; i < l; ++i) rows.push_back({unit(ip + i, 1.0), 0.0});
  for (long i = 0; i < l; ++i) rows.push_back({unit(iq + i, 1.0), 0.0});
  for (long k = 0; k < nt; ++k) {
    Vec r1 = unit(it + k, 1.0), r2 = unit(it + k, 1.0);
    r1[ix + tcol[k]] = -1.0;
    r2[ix + tcol[k]] = 1.0;
    rows.push_back({r1, 0.0});
    rows.push_back({r2, 0.0});
  }
  for (long j = 0; j < n; ++j) {
    if (std::isfinite(p.a_l[j])) rows.push_back({unit(ix + j, 1.0), p.a_l[j]});
    if (std::isfinite(p.a_u[j])) rows.push_back({unit(ix + j, -1.0), -p.a_u[j]});
  }
  const long ni = static_cast<long>(rows.size());
  Mat G(ni, nv);
  Vec h(ni);
  for (long i = 0; i < ni; ++i) {
    G.row(i) = rows[i].first.transpose();
    h[i] = rows[i].second;
  }

  Vec v = Vec::Zero(nv);
  for (long j = 0; j < n; ++j) {
    const double lo = p.a_l[j], hi = p.a_u[j];
    if (std::isfinite(lo) && std::isfinite(hi)) v[ix + j] = 0.5 * (lo + hi);
    else if (std::isfinite(lo)) v[ix + j] = lo + 1.0;
    else if (std::isfinite(hi)) v[ix + j] = hi - 1.0;
  }
  Vec y = Vec::Zero(l + m);
  Vec s = (G * v - h).cwiseMax(1.0);
  Vec lam = Vec::Ones(ni);

  const double scale = 1.0 + std::max({g.lpNorm<Eigen::Infinity>(), f.size() ? f.lpNorm<Eigen::Infinity>() : 0.0,
                                       h.size() ? h.lpNorm<Eigen::Infinity>() : 0.0});
  QpResult res;
  for (int iter = 0; iter < max_iter; ++iter) {
    const Vec rd = H * v + g - E.transpose() * y - G.transpose() * lam;
    const Vec re = E * v - f;
    const Vec ri = G * v - s - h;
    const double mu = ni ? s.dot(lam) / static_cast<double>(ni) : 0.0;
    res.iterations = iter;
    if (rd.lpNorm<Eigen::Infinity>() < tol * scale && (re.size() == 0 || re.lpNorm<Eigen::Infinity>() < tol * scale) &&
        (ri.size() == 0 || ri.lpNorm<Eigen::Infinity>() < tol * scale) && mu < tol) {
      res.converged = true;
      break;
    }

    const Vec d = lam.cwiseQuotient(s);
    Mat K = Mat::Zero(nv + l + m, nv + l + m);
    K.topLeftCorner(nv, nv) = H + G.transpose() * d.asDiagonal() * G + 1e-12 * Mat::Identity(nv, nv);
    K.topRightCorner(nv, l + m) = -E.transpose();
    K.bottomLeftCorner(l + m, nv) = E;
    K.bottomRightCorner(l + m, l + m) = -1e-12 * Mat::Identity(l + m, l + m);
    const Eigen::PartialPivLU<Mat> lu(K);

    auto direction = [&](const Vec& rc, Vec& dv, Vec& dy, Vec& ds, Vec& dl) {
      Vec rhs(nv + l + m);
      rhs.head(nv) = -rd - G.transpose() * (rc + lam.cwiseProduct(ri)).cwiseQuotient(s);
      rhs.tail(l + m) = -re;
      const Vec sol = lu.solve(rhs);
      dv = sol.head(nv);
      dy = sol.tail(l + m);
      ds = G * dv + ri;
      dl = -(rc + lam.cwiseProduct(ds)).cwiseQuotient(s);
    };
    auto max_step = [](const Vec& z, const Vec& dz) {
      double a = 1.0;
      for (long i = 0; i < z.size(); ++i) {
        if (dz[i] < 0.0) a = std::min(a, -z[i] / dz[i]);
      }
      return a;
    };

    Vec dv, dy, ds, dl;
    direction(s.cwiseProduct(lam), dv, dy, ds, dl);
    const double ap = max_step(s, ds), ad = max_step(lam, dl);
    const double mu_aff =
        ni ? (s + ap * ds).dot(lam + ad * dl) / static_cast<double>(ni) : 0.0;
    const double sigma = mu > 0.0 ? std::pow(mu_aff / mu, 3) : 0.0;
    const Vec rc = s.cwiseProduct(lam) + ds.cwiseProduct(dl) - Vec::Constant(ni, sigma * mu);
    direction(rc, dv, dy, ds, dl);
    const double step = std::min(1.0, 0.995 * std::min(max_step(s, ds), max_step(lam, dl)));
    v += step * dv;
    y += step * dy;
    s += step * ds;
    lam += step * dl;
  }
  res.x = v.head(n);
  res.objective = naive_objective(p, res.x);
  return res;
}

}  // namespace oracle
