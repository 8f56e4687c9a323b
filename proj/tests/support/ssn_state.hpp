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

#include <memory>
#include <random>

#include "oracle/dense_newton.hpp"
#include "pwlqp/ssn.hpp"
#include "support/random_problem.hpp"

namespace testing_support {

// A sub-problem together with a point to linearize at. Owns the data the
// context points into, so it must not be copied.
struct SsnState {
  pwlqp::ProblemData problem;
  pwlqp::SpMatRow C_rows;
  pwlqp::ssn::SsnContext ctx;
  pwlqp::ssn::SsnPoint pt;

  SsnState() = default;
  SsnState(const SsnState&) = delete;
  SsnState& operator=(const SsnState&) = delete;

  oracle::DenseNewtonInput dense_input() const {
    return {&problem, ctx.x_k, ctx.y_k, ctx.z_k, ctx.beta, ctx.rho, ctx.zeta, pt.x, pt.w, pt.y};
  }
};

// Random state whose entries are drawn around the selector thresholds, so
// that every index set (B_g1/N_g1, B_g2/N_g2, B_delta) is populated often.
inline std::unique_ptr<SsnState> random_ssn_state(std::mt19937_64& rng, const RandomShape& shape) {
  using pwlqp::Index;
  using pwlqp::Vec;
  std::normal_distribution<double> normal;
  std::uniform_real_distribution<double> unif;
  auto s = std::make_unique<SsnState>();
  s->problem = random_problem(rng, shape);
  const auto& p = s->problem;
  s->C_rows = p.C;
  const Index n = p.n(), l = p.l(), m = p.m();

  auto& ctx = s->ctx;
  ctx.problem = &s->problem;
  ctx.C_rows = &s->C_rows;
  ctx.beta = std::pow(10.0, 2.0 * unif(rng));
  ctx.rho = ctx.beta * std::pow(10.0, unif(rng));
  ctx.zeta = std::min(1.0, 1.0 / ctx.beta);
  auto vec = [&](Index k, double scale) {
    Vec v(k);
    for (Index i = 0; i < k; ++i) v[i] = scale * normal(rng);
    return v;
  };
  ctx.x_k = vec(n, 1.0);
  ctx.y_k = vec(l + m, 1.0);
  ctx.z_k = vec(n, 1.0);

  s->pt.x = vec(n, 1.0);
  for (Index i = 0; i < n; ++i) {
    if (unif(rng) < 0.3) s->pt.x[i] = 0.0;
  }
  s->pt.y = vec(l + m, 1.0);
  s->pt.w = Vec(l);
  for (Index i = 0; i < l; ++i) {
    // s_i = w_i - zeta y_i lands below 0, inside (0, zeta) or above zeta.
    const double target = ctx.zeta * (3.0 * unif(rng) - 1.0);
    s->pt.w[i] = target + ctx.zeta * s->pt.y[i];
  }
  return s;
}

}  // namespace testing_support
