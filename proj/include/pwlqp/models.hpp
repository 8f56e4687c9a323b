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

#include <cstdint>
#include <optional>

#include "pwlqp/problem.hpp"

namespace pwlqp::models {

/// Scenario returns: one row per time point, one column per asset.
struct ReturnsDataset {
  Mat scenarios;
  std::optional<double> benchmark;  // expected-return floor; uniform allocation if absent

  Index samples() const { return scenarios.rows(); }
  Index assets() const { return scenarios.cols(); }
  /// Benchmark if set, else the mean return of the equal-weight portfolio.
  double return_floor() const;
};

/// One sparse feature row per sample.
struct LabeledDataset {
  SpMatRow features;  // l x d
  Vec targets;

  Index samples() const { return features.rows(); }
  Index dim() const { return features.cols(); }
};

/// Bounds applied to asset weights; the same pair is used for every asset.
struct AssetBox {
  double lower = -1.0;
  double upper = 0.6;
};

/// Variables (weights, t, s):
///   min t + sum((-xi_i'x - t) / (l alpha))_+ + tau ||x||_1
///   s.t. 1'x = 1,  mean(xi)'x - s = r,  s >= 0.
ProblemData build_cvar(const ReturnsDataset& ds, double alpha, double tau, AssetBox box = {});

/// Variables (weights, s):
///   min sum(((mu - xi_i)'x) / l)_+ + tau ||x||_1
///   s.t. 1'x = 1,  mu'x - s = r,  s >= 0.
ProblemData build_masd(const ReturnsDataset& ds, double tau, AssetBox box = {});

/// Variables (intercept, coefficients); quantile loss at level alpha plus the
/// elastic net lambda (tau ||b||_1 + (1 - tau)/2 ||b||^2). The linear cost on
/// the residuals is folded into c and const_offset.
ProblemData build_quantile(const LabeledDataset& ds, double alpha, double lambda, double tau);

/// Variables (intercept, coefficients); mean hinge loss of
/// 1 - y_i (xi_i'b - b0) plus lambda (tau1 ||b||_1 + tau2/2 ||b||^2).
ProblemData build_svm(const LabeledDataset& ds, double lambda, double tau1, double tau2);

// Direct evaluations of the application losses, independent of the builders.
double cvar_loss(const ReturnsDataset& ds, double alpha, double tau, const Vec& weights,
                 double t);
double masd_loss(const ReturnsDataset& ds, double tau, const Vec& weights);
double quantile_loss(const LabeledDataset& ds, double alpha, double lambda, double tau,
                     const Vec& coef);
double svm_loss(const LabeledDataset& ds, double lambda, double tau1, double tau2,
                const Vec& coef);

/// Weekly-like Gaussian returns from a one-factor model; deterministic in seed.
ReturnsDataset synthetic_returns(Index samples, Index assets, std::uint64_t seed);

}  // namespace pwlqp::models
