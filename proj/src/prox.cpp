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

#include "pwlqp/prox.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pwlqp::prox {

Vec prox_g1(const Vec& u, double zeta, const Vec& D) {
  Vec out(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    const double t = zeta * D[i];
    const double mag = std::max(std::abs(u[i]) - t, 0.0);
    out[i] = u[i] > 0.0 ? mag : (u[i] < 0.0 ? -mag : 0.0);
  }
  return out;
}

Vec prox_g2(const Vec& u, double zeta) {
  Vec out(u.size());
  for (Index i = 0; i < u.size(); ++i) {
    out[i] = std::max(u[i] - zeta, 0.0) + std::min(u[i], 0.0);
  }
  return out;
}

Vec project_box(const Vec& u, const Vec& a_l, const Vec& a_u) {
  return u.cwiseMax(a_l).cwiseMin(a_u);
}

Vec select_B_delta(const Vec& z, const Vec& x, double beta, const Vec& a_l, const Vec& a_u) {
  Vec out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    const double v = z[i] / beta + x[i];
    out[i] = (v > a_l[i] && v < a_u[i]) ? 1.0 : 0.0;
  }
  return out;
}

Vec select_B_g1(const Vec& u_hat, double zeta, const Vec& D) {
  Vec out(u_hat.size());
  for (Index i = 0; i < u_hat.size(); ++i) {
    out[i] = (D[i] == 0.0 || std::abs(u_hat[i]) > zeta * D[i]) ? 1.0 : 0.0;
  }
  return out;
}

Vec select_B_g2(const Vec& w, const Vec& y_head, double zeta) {
  Vec out(w.size());
  for (Index i = 0; i < w.size(); ++i) {
    const double s = w[i] - zeta * y_head[i];
    out[i] = (s <= 0.0 || s >= zeta) ? 1.0 : 0.0;
  }
  return out;
}

Vec project_subdiff_g1(const Vec& x, const Vec& v, const Vec& D) {
  Vec out(x.size());
  for (Index i = 0; i < x.size(); ++i) {
    if (x[i] > 0.0) {
      out[i] = D[i];
    } else if (x[i] < 0.0) {
      out[i] = -D[i];
    } else {
      out[i] = std::clamp(v[i], -D[i], D[i]);
    }
  }
  return out;
}

Vec project_subdiff_g(const Vec& x, const Vec& w, const Vec& v, const Vec& D) {
  const Index n = x.size();
  const Index l = w.size();
  if (v.size() != n + l) throw std::invalid_argument("project_subdiff_g: dimension mismatch");
  Vec out(n + l);
  out.head(n) = project_subdiff_g1(x, v.head(n), D);
  for (Index i = 0; i < l; ++i) {
    if (w[i] > 0.0) {
      out[n + i] = 1.0;
    } else if (w[i] < 0.0) {
      out[n + i] = 0.0;
    } else {
      out[n + i] = std::clamp(v[n + i], 0.0, 1.0);
    }
  }
  return out;
}

}  // namespace pwlqp::prox
