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

#include "pwlqp/linalg.hpp"

#include <bit>
#include <cmath>
#include <functional>
#include <sstream>

namespace pwlqp {

namespace {

constexpr double kMinPivot = 1e-14;

void mix(std::size_t& seed, std::size_t v) {
  seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

void mix_bits(std::size_t& seed, const std::vector<std::uint8_t>& bits) {
  mix(seed, bits.size());
  std::size_t word = 0;
  int filled = 0;
  for (auto b : bits) {
    word = (word << 1) | (b ? 1u : 0u);
    if (++filled == 64) {
      mix(seed, word);
      word = 0;
      filled = 0;
    }
  }
  mix(seed, word);
}

}  // namespace

void SaddleSignature::rehash() {
  std::size_t h = 0;
  mix_bits(h, b_g1);
  mix_bits(h, b_g2);
  mix_bits(h, b_delta);
  mix(h, std::bit_cast<std::uint64_t>(beta));
  mix(h, std::bit_cast<std::uint64_t>(zeta));
  mix(h, std::bit_cast<std::uint64_t>(rho));
  hash = h;
}

bool SaddleSignature::operator==(const SaddleSignature& o) const {
  return hash == o.hash && beta == o.beta && zeta == o.zeta && rho == o.rho &&
         b_g1 == o.b_g1 && b_g2 == o.b_g2 && b_delta == o.b_delta;
}

SpMat SaddleSystem::assemble() const {
  const Index nb = H_red.rows();
  const Index ne = E.rows();
  if (H_red.cols() != nb || E.cols() != nb) {
    throw std::invalid_argument("SaddleSystem: block dimensions are inconsistent");
  }
  std::vector<Triplet> trips;
  trips.reserve(static_cast<size_t>(H_red.nonZeros() + 2 * E.nonZeros() + ne));
  for (Index j = 0; j < H_red.outerSize(); ++j) {
    for (SpMat::InnerIterator it(H_red, j); it; ++it) trips.emplace_back(it.row(), j, it.value());
  }
  for (Index j = 0; j < E.outerSize(); ++j) {
    for (SpMat::InnerIterator it(E, j); it; ++it) {
      trips.emplace_back(nb + it.row(), j, it.value());
      trips.emplace_back(j, nb + it.row(), it.value());
    }
  }
  for (Index i = 0; i < ne; ++i) trips.emplace_back(nb + i, nb + i, reg);
  SpMat K(nb + ne, nb + ne);
  K.setFromTriplets(trips.begin(), trips.end());
  return K;
}

Factorization::Factorization(const SaddleSystem& sys)
    : K_(sys.assemble()), signature_(sys.signature) {
  if (sys.E.rows() > 0 && !(sys.reg > 0.0)) {
    throw NumericalBreakdown("saddle system: (2,2) block must be positive");
  }
  if (K_.rows() == 0) return;
  ldlt_.compute(K_);
  if (ldlt_.info() != Eigen::Success) {
    throw NumericalBreakdown("LDL' factorization failed (zero pivot)");
  }
  const Index nb = sys.H_red.rows();
  const Vec& pivots = ldlt_.vectorD();
  const auto& perm = ldlt_.permutationP().indices();
  for (Index j = 0; j < K_.rows(); ++j) {
    const double piv = pivots[perm[j]];
    const bool want_negative = j < nb;
    if (std::abs(piv) < kMinPivot || (piv < 0.0) != want_negative) {
      std::ostringstream msg;
      msg << "LDL' pivot " << piv << " for unknown " << j << " breaks quasi-definiteness ("
          << nb << " negative pivots expected out of " << K_.rows() << ")";
      throw NumericalBreakdown(msg.str());
    }
    (piv < 0.0 ? negative_ : positive_) += 1;
  }
}

Vec Factorization::solve(const Vec& rhs) const {
  if (rhs.size() != K_.rows()) {
    throw std::invalid_argument("Factorization::solve: rhs has length " +
                                std::to_string(rhs.size()) + ", expected " +
                                std::to_string(K_.rows()));
  }
  if (K_.rows() == 0) return Vec(0);
  Vec x = ldlt_.solve(rhs);
  const Vec r = rhs - K_ * x;
  x += ldlt_.solve(r);
  return x;
}

std::shared_ptr<const Factorization> factorize(const SaddleSystem& sys) {
  return std::make_shared<const Factorization>(sys);
}

std::shared_ptr<const Factorization> FactorizationCache::lookup(
    const SaddleSignature& sig) const {
  if (latest_ && latest_->signature() == sig) return latest_;
  return nullptr;
}

void FactorizationCache::store(std::shared_ptr<const Factorization> f) { latest_ = std::move(f); }

std::shared_ptr<const Factorization> FactorizationCache::get(const SaddleSystem& sys,
                                                             bool* fresh) {
  if (auto hit = lookup(sys.signature)) {
    if (fresh) *fresh = false;
    return hit;
  }
  auto f = factorize(sys);
  latest_ = f;
  if (fresh) *fresh = true;
  return f;
}

}  // namespace pwlqp
