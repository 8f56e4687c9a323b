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

#include <string>
#include <vector>

#include "pwlqp/types.hpp"

namespace pwlqp {

/// Instance of
///
///   min  c'x + 1/2 x'Qx + sum_i (w_i)_+ + ||Dx||_1 + indicator_K(x)
///   s.t. Cx + d - w = 0,  Ax = b,
///
/// with K = [a_l, a_u] and D diagonal. Infinite bounds are IEEE infinities.
/// `const_offset` collects constants dropped by the term rewriters so that
/// objective values match the model the caller wrote down.
struct ProblemData {
  Vec c;
  SpMat Q;  // n x n, symmetric PSD
  SpMat C;  // l x n
  Vec d;
  SpMat A;  // m x n
  Vec b;
  Vec D;  // diagonal of the l1 weight matrix, >= 0
  Vec a_l;
  Vec a_u;
  double const_offset = 0.0;

  Index n() const { return Q.cols(); }
  Index l() const { return C.rows(); }
  Index m() const { return A.rows(); }

  /// Zero instance with n variables, no rows, unbounded box.
  static ProblemData zeros(Index n);
};

/// Primal-dual state. y stacks the multipliers of the C-rows (first l) and of
/// the A-rows (last m).
struct Iterate {
  Vec x;
  Vec w;
  Vec y;
  Vec z;

  static Iterate zeros(const ProblemData& p);
  bool finite() const;
};

struct ValidationIssue {
  std::string field;
  Index index = -1;  // zero-based entry, -1 when the issue is about a shape
  std::string message;
};

/// All invariant violations; empty means the instance is valid.
std::vector<ValidationIssue> validate(const ProblemData& p);

/// Throws std::invalid_argument listing every issue when `p` is invalid.
void require_valid(const ProblemData& p);

/// Adds ||C1 x + d1||_1 through -1'(C1x+d1) + sum (2(C1x+d1))_+.
ProblemData absorb_abs_term(const ProblemData& p, const SpMat& C1, const Vec& d1);

/// Adds sum_i max{(C1x+d1)_i, (C2x+d2)_i} through
/// 1'(C2x+d2) + sum ((C1-C2)x + d1-d2)_+.
ProblemData absorb_max_term(const ProblemData& p, const SpMat& C1, const SpMat& C2,
                            const Vec& d1, const Vec& d2);

/// c'x + 1/2 x'Qx + sum (w)_+ + sum D_i|x_i| + const_offset; +inf if x is not in K.
double objective(const ProblemData& p, const Vec& x, const Vec& w);

/// objective(p, x, Cx + d).
double objective_at(const ProblemData& p, const Vec& x);

/// Stacks `bottom` under `top`; both must have the same column count.
SpMat vstack(const SpMat& top, const SpMat& bottom);

}  // namespace pwlqp
