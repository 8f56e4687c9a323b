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

#include <algorithm>
#include <random>
#include <vector>

#include "pwlqp/problem.hpp"

namespace testing_support {

struct RandomShape {
  long n_max = 8;
  long l_max = 12;
  long m_max = 4;
  long n_plus_l_max = 1000;  // cap on n + l, for enumeration-sized instances
};

// Random feasible instance with finite boxes: b is generated from a point
// inside the box so Ax = b always has a box-feasible solution.
inline pwlqp::ProblemData random_problem(std::mt19937_64& rng, const RandomShape& shape = {}) {
  using pwlqp::Index;
  using pwlqp::Triplet;
  using pwlqp::Vec;
  std::uniform_int_distribution<long> pick_n(1, shape.n_max);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  const long n = pick_n(rng);
  const long l_cap = std::min(shape.l_max, shape.n_plus_l_max - n);
  const long l = std::uniform_int_distribution<long>(0, std::max(0L, l_cap))(rng);
  const long m = std::uniform_int_distribution<long>(0, std::min(shape.m_max, n - 1))(rng);

  pwlqp::ProblemData p = pwlqp::ProblemData::zeros(n);
  for (long j = 0; j < n; ++j) p.c[j] = normal(rng);

  // Q = B'B with a sparse B of random rank.
  const long k = std::uniform_int_distribution<long>(0, n)(rng);
  pwlqp::Mat B = pwlqp::Mat::Zero(k, n);
  for (long i = 0; i < k; ++i) {
    for (long j = 0; j < n; ++j) {
      if (unif(rng) < 0.5) B(i, j) = normal(rng);
    }
  }
  const pwlqp::Mat BtB = B.transpose() * B;
  p.Q = (0.5 * (BtB + BtB.transpose())).sparseView();

  auto sparse = [&](long rows, double density) {
    std::vector<Triplet> t;
    for (long i = 0; i < rows; ++i) {
      bool any = false;
      for (long j = 0; j < n; ++j) {
        if (unif(rng) < density) {
          t.emplace_back(i, j, normal(rng));
          any = true;
        }
      }
      if (!any) t.emplace_back(i, std::uniform_int_distribution<long>(0, n - 1)(rng), 1.0 + unif(rng));
    }
    pwlqp::SpMat M(rows, n);
    M.setFromTriplets(t.begin(), t.end());
    return M;
  };
  p.C = sparse(l, 0.6);
  p.d = Vec(l);
  for (long i = 0; i < l; ++i) p.d[i] = normal(rng);

  for (long j = 0; j < n; ++j) {
    p.a_l[j] = -(0.5 + 1.5 * unif(rng));
    p.a_u[j] = 0.5 + 1.5 * unif(rng);
    p.D[j] = unif(rng) < 0.3 ? 0.0 : unif(rng);
  }
  Vec x0(n);
  for (long j = 0; j < n; ++j) x0[j] = p.a_l[j] + (p.a_u[j] - p.a_l[j]) * unif(rng);
  p.A = sparse(m, 0.7);
  p.b = p.A * x0;
  return p;
}

}  // namespace testing_support
