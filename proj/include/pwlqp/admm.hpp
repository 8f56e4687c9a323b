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
#include <memory>

#include "pwlqp/problem.hpp"

namespace pwlqp::admm {

/// Proximal ADMM on the split problem
///
///   min c'x + 1/2 x'Qx + g(u) + indicator_{K x R^l}(u)
///   s.t. Cx - w = -d,  Ax = b,  u - (x; w) = 0.
///
/// Multipliers are stacked as (C-rows [l], A-rows [m], u_x [n], u_w [l]).

enum class Variant { kAuto, kDiagonal, kProxLinear };

const char* to_string(Variant v);

struct AdmmConfig {
  double sigma = 1.0;
  double gamma = 1.5;  // in (0, golden ratio)
  Variant variant = Variant::kAuto;
  double diag_reg = 1e-4;  // R = diag_reg * I for the diagonal variant
  double sigma_hat = 0.0;  // prox-linear R = sigma_hat I - sigma G; <= 0 means estimate
  double sigma_hat_margin = 1.1;
  int max_iter = 100;
  double tol = 1e-3;
  // Auto picks prox-linear when the estimated nnz of C'C exceeds this.
  double nnz_budget = 5e7;

  void check() const;
};

struct AdmmState {
  Vec x;
  Vec w;
  Vec u;  // length n + l
  Vec y;  // length 2l + m + n

  static AdmmState zeros(const ProblemData& p);
};

/// P_{K x R^l}(prox_{g/sigma}((x; w) + y_u / sigma)).
Vec u_step(const ProblemData& p, double sigma, const Vec& x, const Vec& w, const Vec& y);

/// Gradient of the augmented Lagrangian in (x, w) at fixed u and y, stacked.
Vec lagrangian_gradient(const ProblemData& p, double sigma, const Vec& x, const Vec& w,
                        const Vec& u, const Vec& y);

/// M_r (x; w; u) minus the right-hand side (-d; b; 0).
Vec constraint_residual(const ProblemData& p, const Vec& x, const Vec& w, const Vec& u);

/// y - gamma sigma (M_r (x; w; u) - rhs).
Vec y_step(const ProblemData& p, double sigma, double gamma, const Vec& x, const Vec& w,
           const Vec& u, const Vec& y);

struct Termination {
  bool converged = false;
  std::array<double, 4> residuals{};
};

Termination terminate(const ProblemData& p, const Vec& x, const Vec& w, const Vec& u,
                      const Vec& y, double tol);

/// ||G||_2 for G = [C'C + A'A + Off(Q)/sigma, -C'; -C, 0], by power iteration.
double estimate_coupling_norm(const ProblemData& p, double sigma, int iters = 50);

/// Dense G, for checks on small instances.
Mat coupling_matrix(const ProblemData& p, double sigma);

Variant choose_variant(const ProblemData& p, const AdmmConfig& cfg);

/// Minimizer of the proximal (x, w) sub-problem. Built once per run; the
/// diagonal variant factors its constant SPD matrix on construction.
class XwSolver {
 public:
  XwSolver(const ProblemData& p, double sigma, Variant variant, double diag_reg,
           double sigma_hat);
  ~XwSolver();
  XwSolver(const XwSolver&) = delete;
  XwSolver& operator=(const XwSolver&) = delete;

  /// Returns (x; w) stacked.
  Vec step(const Vec& x, const Vec& w, const Vec& u, const Vec& y) const;

  Variant variant() const { return variant_; }
  double sigma_hat() const { return sigma_hat_; }
  /// The R used by the proximal term, as a dense matrix (small instances only).
  Mat proximal_matrix() const;

 private:
  struct Impl;
  const ProblemData& p_;
  double sigma_;
  Variant variant_;
  double diag_reg_;
  double sigma_hat_;
  Vec prox_linear_diag_;
  std::unique_ptr<Impl> impl_;
};

struct AdmmResult {
  AdmmState state;
  int iterations = 0;
  Termination termination;
  Variant variant = Variant::kDiagonal;
};

AdmmResult run(const ProblemData& p, const AdmmConfig& cfg);
AdmmResult run(const ProblemData& p, const AdmmConfig& cfg, AdmmState start);

/// PMM starting point: (x, w, y_{C,A}, y_ux - P_{subdiff g1(u_x)}(y_ux)).
Iterate map_to_pmm_start(const ProblemData& p, const AdmmState& s);

}  // namespace pwlqp::admm
