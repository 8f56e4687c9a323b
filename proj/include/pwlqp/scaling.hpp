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

#include "pwlqp/problem.hpp"

namespace pwlqp {

/// Equivalent rescaling of an instance, x = diag(col) * x_hat:
///
///   c, Q, D  ->  obj * K c, obj * K Q K, obj * K D
///   C, d     ->  obj * C K, obj * d
///   A, b     ->  diag(row) A K, diag(row) b
///   bounds   ->  bounds / col
///
/// The C-rows share the single factor `obj` because each plus-part term must
/// keep unit weight; the scaled objective is obj times the original one.
struct Equilibration {
  double obj = 1.0;
  Vec col;  // length n
  Vec row;  // length m

  static Equilibration identity(const ProblemData& p);

  ProblemData apply(const ProblemData& p) const;
  Iterate to_scaled(const Iterate& it) const;
  Iterate to_original(const Iterate& it) const;
};

/// Brings the largest |C_ij| to one through `obj`, then normalizes each
/// equality row by its largest entry over the columns that appear in C and
/// finally gives every column absent from C a unit largest equality entry.
/// Columns present in C keep scale 1.
Equilibration equilibrate(const ProblemData& p);

}  // namespace pwlqp
