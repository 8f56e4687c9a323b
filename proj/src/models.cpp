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

#include "pwlqp/models.hpp"

#include <cmath>
#include <random>
#include <stdexcept>
#include <vector>

namespace pwlqp::models {

double ReturnsDataset::return_floor() const {
  if (benchmark) return *benchmark;
  return scenarios.mean();
}

namespace {

void check_returns(const ReturnsDataset& ds) {
  if (ds.samples() < 1 || ds.assets() < 1) {
    throw std::invalid_argument("returns dataset needs at least one sample and one asset");
  }
  if (!ds.scenarios.allFinite()) throw std::invalid_argument("returns dataset has non-finite entries");
}

void check_labeled(const LabeledDataset& ds) {
  if (ds.samples() < 1) throw std::invalid_argument("labeled dataset is empty");
  if (ds.targets.size() != ds.samples()) {
    throw std::invalid_argument("labeled dataset: targets and feature rows differ in count");
  }
}

void check_box(const AssetBox& box) {
  if (!(box.lower <= box.upper)) throw std::invalid_argument("asset box is empty");
}

SpMat diag(const Vec& v) {
  SpMat M(v.size(), v.size());
  std::vector<Triplet> t;
  for (Index i = 0; i < v.size(); ++i) {
    if (v[i] != 0.0) t.emplace_back(i, i, v[i]);
  }
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

// Budget and expected-return rows over `cols` variables; the first `assets`
// columns are the weights and `slack` is the column of s.
void portfolio_equalities(ProblemData& p, const ReturnsDataset& ds, Index slack) {
  const Index na = ds.assets();
  const Vec mu = ds.scenarios.colwise().mean().transpose();
  std::vector<Triplet> t;
  for (Index j = 0; j < na; ++j) {
    t.emplace_back(0, j, 1.0);
    if (mu[j] != 0.0) t.emplace_back(1, j, mu[j]);
  }
  t.emplace_back(1, slack, -1.0);
  p.A = SpMat(2, p.n());
  p.A.setFromTriplets(t.begin(), t.end());
  p.b = Vec(2);
  p.b << 1.0, ds.return_floor();
}

// Rows (1/l)[-1, -xi_i'] (quantile) or (1/l)[y_i, -y_i xi_i'] (SVM).
SpMat design_rows(const LabeledDataset& ds, const Vec& intercept, const Vec& scale) {
  const Index l = ds.samples();
  std::vector<Triplet> t;
  t.reserve(ds.features.nonZeros() + l);
  for (Index i = 0; i < l; ++i) {
    if (intercept[i] != 0.0) t.emplace_back(i, 0, intercept[i]);
    for (SpMatRow::InnerIterator it(ds.features, i); it; ++it) {
      t.emplace_back(i, it.col() + 1, scale[i] * it.value());
    }
  }
  SpMat C(l, ds.dim() + 1);
  C.setFromTriplets(t.begin(), t.end());
  return C;
}

ProblemData regression_shell(const LabeledDataset& ds, double l1, double l2) {
  const Index n = ds.dim() + 1;
  ProblemData p = ProblemData::zeros(n);
  Vec qd = Vec::Constant(n, l2);
  qd[0] = 0.0;
  p.Q = diag(qd);
  p.D = Vec::Constant(n, l1);
  p.D[0] = 0.0;
  return p;
}

}  // namespace

ProblemData build_cvar(const ReturnsDataset& ds, double alpha, double tau, AssetBox box) {
  check_returns(ds);
  check_box(box);
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("cvar: alpha must lie in (0,1)");
  if (!(tau >= 0.0)) throw std::invalid_argument("cvar: tau must be nonnegative");
  const Index na = ds.assets(), l = ds.samples();
  const Index n = na + 2, t_col = na, s_col = na + 1;
  const double scale = 1.0 / (static_cast<double>(l) * alpha);

  ProblemData p = ProblemData::zeros(n);
  p.c[t_col] = 1.0;
  std::vector<Triplet> t;
  t.reserve(l * (na + 1));
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < na; ++j) {
      if (ds.scenarios(i, j) != 0.0) t.emplace_back(i, j, -scale * ds.scenarios(i, j));
    }
    t.emplace_back(i, t_col, -scale);
  }
  p.C = SpMat(l, n);
  p.C.setFromTriplets(t.begin(), t.end());
  p.d = Vec::Zero(l);
  portfolio_equalities(p, ds, s_col);
  p.D.head(na).setConstant(tau);
  p.a_l.head(na).setConstant(box.lower);
  p.a_u.head(na).setConstant(box.upper);
  p.a_l[s_col] = 0.0;
  return p;
}

ProblemData build_masd(const ReturnsDataset& ds, double tau, AssetBox box) {
  check_returns(ds);
  check_box(box);
  if (ds.samples() < 2) throw std::invalid_argument("masd: need at least two scenarios");
  if (!(tau >= 0.0)) throw std::invalid_argument("masd: tau must be nonnegative");
  const Index na = ds.assets(), l = ds.samples();
  const Index n = na + 1, s_col = na;
  const Vec mu = ds.scenarios.colwise().mean().transpose();
  const double inv_l = 1.0 / static_cast<double>(l);

  ProblemData p = ProblemData::zeros(n);
  std::vector<Triplet> t;
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < na; ++j) {
      const double v = (mu[j] - ds.scenarios(i, j)) * inv_l;
      if (v != 0.0) t.emplace_back(i, j, v);
    }
  }
  p.C = SpMat(l, n);
  p.C.setFromTriplets(t.begin(), t.end());
  p.d = Vec::Zero(l);
  portfolio_equalities(p, ds, s_col);
  p.D.head(na).setConstant(tau);
  p.a_l.head(na).setConstant(box.lower);
  p.a_u.head(na).setConstant(box.upper);
  p.a_l[s_col] = 0.0;
  return p;
}

ProblemData build_quantile(const LabeledDataset& ds, double alpha, double lambda, double tau) {
  check_labeled(ds);
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::invalid_argument("quantile: alpha must lie in (0,1)");
  if (!(lambda >= 0.0)) throw std::invalid_argument("quantile: lambda must be nonnegative");
  if (!(tau >= 0.0 && tau <= 1.0)) throw std::invalid_argument("quantile: tau must lie in [0,1]");
  const Index l = ds.samples();
  const double inv_l = 1.0 / static_cast<double>(l);

  ProblemData p = regression_shell(ds, lambda * tau, lambda * (1.0 - tau));
  p.C = design_rows(ds, Vec::Constant(l, -inv_l), Vec::Constant(l, -inv_l));
  p.d = ds.targets * inv_l;
  // (alpha - 1) 1'w with w = Cx + d.
  p.c += (alpha - 1.0) * (p.C.transpose() * Vec::Ones(l));
  p.const_offset += (alpha - 1.0) * p.d.sum();
  return p;
}

ProblemData build_svm(const LabeledDataset& ds, double lambda, double tau1, double tau2) {
  check_labeled(ds);
  if (!(lambda > 0.0 && tau1 >= 0.0 && tau2 >= 0.0)) {
    throw std::invalid_argument("svm: need lambda > 0 and tau1, tau2 >= 0");
  }
  for (Index i = 0; i < ds.samples(); ++i) {
    if (ds.targets[i] != 1.0 && ds.targets[i] != -1.0) {
      throw std::invalid_argument("svm: label at row " + std::to_string(i + 1) + " is not +1/-1");
    }
  }
  const Index l = ds.samples();
  const double inv_l = 1.0 / static_cast<double>(l);

  ProblemData p = regression_shell(ds, lambda * tau1, lambda * tau2);
  p.C = design_rows(ds, ds.targets * inv_l, -ds.targets * inv_l);
  p.d = Vec::Constant(l, inv_l);
  return p;
}

double cvar_loss(const ReturnsDataset& ds, double alpha, double tau, const Vec& weights,
                 double t) {
  const Index l = ds.samples();
  double tail = 0.0;
  for (Index i = 0; i < l; ++i) {
    double loss = 0.0;
    for (Index j = 0; j < ds.assets(); ++j) loss -= ds.scenarios(i, j) * weights[j];
    tail += std::max(loss - t, 0.0);
  }
  double l1 = 0.0;
  for (Index j = 0; j < weights.size(); ++j) l1 += std::abs(weights[j]);
  return t + tail / (static_cast<double>(l) * alpha) + tau * l1;
}

double masd_loss(const ReturnsDataset& ds, double tau, const Vec& weights) {
  const Index l = ds.samples(), na = ds.assets();
  std::vector<double> port(l, 0.0);
  double mean = 0.0;
  for (Index i = 0; i < l; ++i) {
    for (Index j = 0; j < na; ++j) port[i] += ds.scenarios(i, j) * weights[j];
    mean += port[i];
  }
  mean /= static_cast<double>(l);
  double risk = 0.0;
  for (Index i = 0; i < l; ++i) risk += std::max(mean - port[i], 0.0);
  double l1 = 0.0;
  for (Index j = 0; j < na; ++j) l1 += std::abs(weights[j]);
  return risk / static_cast<double>(l) + tau * l1;
}

double quantile_loss(const LabeledDataset& ds, double alpha, double lambda, double tau,
                     const Vec& coef) {
  const Index l = ds.samples();
  double loss = 0.0;
  for (Index i = 0; i < l; ++i) {
    double pred = coef[0];
    for (SpMatRow::InnerIterator it(ds.features, i); it; ++it) pred += it.value() * coef[it.col() + 1];
    const double r = ds.targets[i] - pred;
    loss += r >= 0.0 ? alpha * r : (alpha - 1.0) * r;
  }
  double l1 = 0.0, l2 = 0.0;
  for (Index j = 1; j < coef.size(); ++j) {
    l1 += std::abs(coef[j]);
    l2 += coef[j] * coef[j];
  }
  return loss / static_cast<double>(l) + lambda * (tau * l1 + 0.5 * (1.0 - tau) * l2);
}

double svm_loss(const LabeledDataset& ds, double lambda, double tau1, double tau2,
                const Vec& coef) {
  const Index l = ds.samples();
  double hinge = 0.0;
  for (Index i = 0; i < l; ++i) {
    double score = -coef[0];
    for (SpMatRow::InnerIterator it(ds.features, i); it; ++it) score += it.value() * coef[it.col() + 1];
    hinge += std::max(1.0 - ds.targets[i] * score, 0.0);
  }
  double l1 = 0.0, l2 = 0.0;
  for (Index j = 1; j < coef.size(); ++j) {
    l1 += std::abs(coef[j]);
    l2 += coef[j] * coef[j];
  }
  return hinge / static_cast<double>(l) + lambda * (tau1 * l1 + 0.5 * tau2 * l2);
}

ReturnsDataset synthetic_returns(Index samples, Index assets, std::uint64_t seed) {
  if (samples < 1 || assets < 1) throw std::invalid_argument("synthetic_returns: empty shape");
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vec drift(assets), loading(assets), idio(assets);
  for (Index j = 0; j < assets; ++j) {
    drift[j] = 0.002 + 0.001 * normal(rng);
    loading[j] = 0.8 + 0.4 * std::abs(normal(rng));
    idio[j] = 0.015 + 0.01 * std::abs(normal(rng));
  }
  ReturnsDataset ds;
  ds.scenarios.resize(samples, assets);
  for (Index i = 0; i < samples; ++i) {
    const double market = 0.02 * normal(rng);
    for (Index j = 0; j < assets; ++j) {
      ds.scenarios(i, j) = drift[j] + loading[j] * market + idio[j] * normal(rng);
    }
  }
  return ds;
}

}  // namespace pwlqp::models
