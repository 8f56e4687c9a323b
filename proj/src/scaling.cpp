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

#include "pwlqp/scaling.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace pwlqp {

Equilibration Equilibration::identity(const ProblemData& p) {
  return {1.0, Vec::Ones(p.n()), Vec::Ones(p.m())};
}

ProblemData Equilibration::apply(const ProblemData& p) const {
  ProblemData out = p;
  out.c = obj * col.cwiseProduct(p.c);
  out.Q = col.asDiagonal() * p.Q * col.asDiagonal();
  out.Q *= obj;
  out.D = obj * col.cwiseProduct(p.D);
  out.C = p.C * col.asDiagonal();
  out.C *= obj;
  out.d = obj * p.d;
  out.A = row.asDiagonal() * p.A * col.asDiagonal();
  out.b = row.cwiseProduct(p.b);
  out.a_l = p.a_l.cwiseQuotient(col);
  out.a_u = p.a_u.cwiseQuotient(col);
  out.const_offset = obj * p.const_offset;
  return out;
}

// C-row multipliers are invariant; the others follow from the scaled
// Lagrangian being obj times the original one.
Iterate Equilibration::to_scaled(const Iterate& it) const {
  Iterate out = it;
  out.x = it.x.cwiseQuotient(col);
  out.w = obj * it.w;
  out.y.tail(row.size()) = obj * it.y.tail(row.size()).cwiseQuotient(row);
  out.z = obj * col.cwiseProduct(it.z);
  return out;
}

Iterate Equilibration::to_original(const Iterate& it) const {
  Iterate out = it;
  out.x = col.cwiseProduct(it.x);
  out.w = it.w / obj;
  out.y.tail(row.size()) = row.cwiseProduct(it.y.tail(row.size())) / obj;
  out.z = it.z.cwiseQuotient(col) / obj;
  return out;
}

Equilibration equilibrate(const ProblemData& p) {
  Equilibration e = Equilibration::identity(p);
  const Index n = p.n();
  const Index m = p.m();

  // One shared factor brings the largest |C_ij| to one. Columns are left
  // alone: shrinking them shrinks x and with it every equality residual.
  std::vector<bool> in_c(static_cast<size_t>(n), false);
  double c_max = 0.0;
  for (Index j = 0; j < n; ++j) {
    for (SpMat::InnerIterator it(p.C, j); it; ++it) {
      c_max = std::max(c_max, std::abs(it.value()));
      in_c[static_cast<size_t>(j)] = true;
    }
  }
  if (c_max > 0.0) e.obj = 1.0 / c_max;
  if (std::none_of(in_c.begin(), in_c.end(), [](bool b) { return b; })) in_c.assign(in_c.size(), true);

  // Equality rows are normalized over the columns the C block already scaled,
  // so a slack with a unit coefficient cannot mask a badly scaled row.
  Vec row_max = Vec::Zero(m);
  Vec row_any = Vec::Zero(m);
  for (Index j = 0; j < n; ++j) {
    for (SpMat::InnerIterator it(p.A, j); it; ++it) {
      const double v = std::abs(it.value() * e.col[j]);
      row_any[it.row()] = std::max(row_any[it.row()], v);
      if (in_c[static_cast<size_t>(j)]) row_max[it.row()] = std::max(row_max[it.row()], v);
    }
  }
  for (Index i = 0; i < m; ++i) {
    const double v = row_max[i] > 0.0 ? row_max[i] : row_any[i];
    if (v > 0.0) e.row[i] = 1.0 / v;
  }

  // Columns outside the C block get unit max over their equality entries.
  for (Index j = 0; j < n; ++j) {
    if (in_c[static_cast<size_t>(j)]) continue;
    double v = 0.0;
    for (SpMat::InnerIterator it(p.A, j); it; ++it) v = std::max(v, std::abs(e.row[it.row()] * it.value()));
    if (v > 0.0) e.col[j] = 1.0 / v;
  }
  return e;
}

}  // namespace pwlqp
