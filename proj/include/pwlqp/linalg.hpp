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
#include <memory>
#include <stdexcept>
#include <vector>

#include <Eigen/SparseCholesky>

#include "pwlqp/types.hpp"

namespace pwlqp {

/// Raised when a pivot of the quasi-definite factorization has the wrong sign
/// or is too small. Quasi-definite input never triggers it.
class NumericalBreakdown : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Identifies a reduced system: the active-set bit patterns and the penalties.
/// Two signatures compare equal only if every component matches exactly; the
/// hash is a fast pre-check.
struct SaddleSignature {
  std::vector<std::uint8_t> b_g1;
  std::vector<std::uint8_t> b_g2;
  std::vector<std::uint8_t> b_delta;  // projection selector restricted to b_g1
  double beta = 0.0;
  double zeta = 0.0;
  double rho = 0.0;
  std::size_t hash = 0;

  void rehash();
  bool operator==(const SaddleSignature& other) const;
};

/// Reduced Newton matrix
///
///   [ H_red   E'      ]
///   [ E       reg * I ]
///
/// with H_red negative definite and reg > 0 (quasi-definite).
struct SaddleSystem {
  SpMat H_red;
  SpMat E;
  double reg = 0.0;
  SaddleSignature signature;

  Index size() const { return H_red.rows() + E.rows(); }
  /// Full symmetric matrix (both triangles).
  SpMat assemble() const;
};

/// Permuted L*Delta*L' factorization of a SaddleSystem. Immutable once built.
class Factorization {
 public:
  explicit Factorization(const SaddleSystem& sys);
  Factorization(const Factorization&) = delete;
  Factorization& operator=(const Factorization&) = delete;

  /// Solve followed by one step of iterative refinement.
  Vec solve(const Vec& rhs) const;

  Index size() const { return K_.rows(); }
  Index negative_pivots() const { return negative_; }
  Index positive_pivots() const { return positive_; }
  const SpMat& matrix() const { return K_; }
  const SaddleSignature& signature() const { return signature_; }

 private:
  SpMat K_;
  Eigen::SimplicialLDLT<SpMat, Eigen::Lower, Eigen::AMDOrdering<int>> ldlt_;
  Index negative_ = 0;
  Index positive_ = 0;
  SaddleSignature signature_;
};

std::shared_ptr<const Factorization> factorize(const SaddleSystem& sys);

/// Depth-one cache: keeps the most recent factorization only.
class FactorizationCache {
 public:
  std::shared_ptr<const Factorization> lookup(const SaddleSignature& sig) const;
  void store(std::shared_ptr<const Factorization> f);

  /// Returns the cached factorization when the signature matches, otherwise
  /// factorizes and caches. `fresh` reports whether a factorization happened.
  std::shared_ptr<const Factorization> get(const SaddleSystem& sys, bool* fresh = nullptr);
  void clear() { latest_.reset(); }

 private:
  std::shared_ptr<const Factorization> latest_;
};

}  // namespace pwlqp
