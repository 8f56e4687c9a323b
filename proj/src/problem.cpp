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

#include "pwlqp/problem.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace pwlqp {

namespace {

void check_length(std::vector<ValidationIssue>& out, const char* field, Index got,
                  Index want) {
  if (got != want) {
    std::ostringstream msg;
    msg << field << " length mismatch (got " << got << ", expected " << want << ")";
    out.push_back({field, -1, msg.str()});
  }
}

void check_finite(std::vector<ValidationIssue>& out, const char* field, const Vec& v) {
  for (Index i = 0; i < v.size(); ++i) {
    if (!std::isfinite(v[i])) {
      out.push_back({field, i, std::string("non-finite entry in ") + field + " at index " +
                                   std::to_string(i + 1)});
    }
  }
}

void check_finite(std::vector<ValidationIssue>& out, const char* field, const SpMat& M) {
  for (Index j = 0; j < M.outerSize(); ++j) {
    for (SpMat::InnerIterator it(M, j); it; ++it) {
      if (!std::isfinite(it.value())) {
        out.push_back({field, it.row(), std::string("non-finite entry in ") + field});
        return;
      }
    }
  }
}

}  // namespace

ProblemData ProblemData::zeros(Index n) {
  ProblemData p;
  p.c = Vec::Zero(n);
  p.Q = SpMat(n, n);
  p.C = SpMat(0, n);
  p.d = Vec(0);
  p.A = SpMat(0, n);
  p.b = Vec(0);
  p.D = Vec::Zero(n);
  p.a_l = Vec::Constant(n, -kInf);
  p.a_u = Vec::Constant(n, kInf);
  return p;
}

Iterate Iterate::zeros(const ProblemData& p) {
  return {Vec::Zero(p.n()), Vec::Zero(p.l()), Vec::Zero(p.l() + p.m()), Vec::Zero(p.n())};
}

bool Iterate::finite() const {
  return x.allFinite() && w.allFinite() && y.allFinite() && z.allFinite();
}

std::vector<ValidationIssue> validate(const ProblemData& p) {
  std::vector<ValidationIssue> out;
  const Index n = p.n();

  if (p.Q.rows() != p.Q.cols()) {
    out.push_back({"Q", -1, "Q is not square"});
  }
  check_length(out, "c", p.c.size(), n);
  check_length(out, "D", p.D.size(), n);
  check_length(out, "a_l", p.a_l.size(), n);
  check_length(out, "a_u", p.a_u.size(), n);
  if (p.C.cols() != n) out.push_back({"C", -1, "C column count mismatch"});
  if (p.A.cols() != n) out.push_back({"A", -1, "A column count mismatch"});
  check_length(out, "d", p.d.size(), p.l());
  check_length(out, "b", p.b.size(), p.m());
  if (!out.empty()) return out;

  check_finite(out, "c", p.c);
  check_finite(out, "d", p.d);
  check_finite(out, "b", p.b);
  check_finite(out, "D", p.D);
  check_finite(out, "Q", p.Q);
  check_finite(out, "C", p.C);
  check_finite(out, "A", p.A);
  if (!std::isfinite(p.const_offset)) out.push_back({"const_offset", -1, "non-finite offset"});

  const SpMat asym = SpMat(p.Q.transpose()) - p.Q;
  for (Index j = 0; j < asym.outerSize(); ++j) {
    for (SpMat::InnerIterator it(asym, j); it; ++it) {
      if (it.value() != 0.0) {
        out.push_back({"Q", it.row(), "Q is not symmetric"});
        j = asym.outerSize();
        break;
      }
    }
  }

  for (Index i = 0; i < n; ++i) {
    if (p.D[i] < 0.0) {
      out.push_back({"D", i, "negative weight in D at index " + std::to_string(i + 1)});
    }
    if (std::isnan(p.a_l[i]) || std::isnan(p.a_u[i]) || p.a_l[i] == kInf ||
        p.a_u[i] == -kInf) {
      out.push_back({"a_l", i, "invalid bound at index " + std::to_string(i + 1)});
    } else if (p.a_l[i] > p.a_u[i]) {
      out.push_back({"a_l", i, "empty box at index " + std::to_string(i + 1)});
    }
  }
  return out;
}

void require_valid(const ProblemData& p) {
  const auto issues = validate(p);
  if (issues.empty()) return;
  std::ostringstream msg;
  msg << "invalid problem:";
  for (const auto& issue : issues) msg << "\n  " << issue.message;
  throw std::invalid_argument(msg.str());
}

SpMat vstack(const SpMat& top, const SpMat& bottom) {
  if (top.cols() != bottom.cols()) {
    throw std::invalid_argument("vstack: column count mismatch");
  }
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(top.nonZeros() + bottom.nonZeros()));
  for (Index j = 0; j < top.outerSize(); ++j) {
    for (SpMat::InnerIterator it(top, j); it; ++it) trips.emplace_back(it.row(), j, it.value());
  }
  for (Index j = 0; j < bottom.outerSize(); ++j) {
    for (SpMat::InnerIterator it(bottom, j); it; ++it) {
      trips.emplace_back(top.rows() + it.row(), j, it.value());
    }
  }
  SpMat out(top.rows() + bottom.rows(), top.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

ProblemData absorb_abs_term(const ProblemData& p, const SpMat& C1, const Vec& d1) {
  if (C1.cols() != p.n()) {
    throw std::invalid_argument("absorb_abs_term: C1 has " + std::to_string(C1.cols()) +
                                " columns, problem has " + std::to_string(p.n()));
  }
  if (C1.rows() != d1.size()) {
    throw std::invalid_argument("absorb_abs_term: d1 length does not match C1 rows");
  }
  ProblemData out = p;
  out.c = p.c - C1.transpose() * Vec::Ones(C1.rows());
  out.C = vstack(p.C, 2.0 * C1);
  out.d.resize(p.l() + d1.size());
  out.d << p.d, 2.0 * d1;
  out.const_offset = p.const_offset - d1.sum();
  return out;
}

ProblemData absorb_max_term(const ProblemData& p, const SpMat& C1, const SpMat& C2,
                            const Vec& d1, const Vec& d2) {
  if (C1.cols() != p.n() || C2.cols() != p.n()) {
    throw std::invalid_argument("absorb_max_term: column count mismatch");
  }
  if (C1.rows() != C2.rows() || d1.size() != C1.rows() || d2.size() != C2.rows()) {
    throw std::invalid_argument("absorb_max_term: shape mismatch between the two pieces");
  }
  ProblemData out = p;
  out.c = p.c + C2.transpose() * Vec::Ones(C2.rows());
  out.C = vstack(p.C, SpMat(C1 - C2));
  out.d.resize(p.l() + d1.size());
  out.d << p.d, d1 - d2;
  out.const_offset = p.const_offset + d2.sum();
  return out;
}

double objective(const ProblemData& p, const Vec& x, const Vec& w) {
  if (x.size() != p.n() || w.size() != p.l()) {
    throw std::invalid_argument("objective: dimension mismatch");
  }
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] < p.a_l[i] || x[i] > p.a_u[i]) return kInf;
  }
  return p.c.dot(x) + 0.5 * x.dot(p.Q * x) + w.cwiseMax(0.0).sum() +
         p.D.dot(x.cwiseAbs()) + p.const_offset;
}

double objective_at(const ProblemData& p, const Vec& x) {
  return objective(p, x, Vec(p.C * x + p.d));
}

}  // namespace pwlqp
