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

#include "pwlqp/types.hpp"

namespace pwlqp {

/// Proximity operators of g1(x) = ||Dx||_1 and g2(w) = sum (w_i)_+, the box
/// projection, and the 0/1 generalized-Jacobian selectors used by the Newton
/// step. Selectors return 0.0/1.0 vectors (diagonals of projector matrices).
namespace prox {

/// Soft-thresholding at level zeta*D_i (identity where D_i = 0).
Vec prox_g1(const Vec& u, double zeta, const Vec& D);

/// max{u - zeta, 0} + min{u, 0}, componentwise.
Vec prox_g2(const Vec& u, double zeta);

Vec project_box(const Vec& u, const Vec& a_l, const Vec& a_u);

/// 1 where (z/beta + x)_i lies strictly inside (a_l_i, a_u_i); boundary maps to 0.
Vec select_B_delta(const Vec& z, const Vec& x, double beta, const Vec& a_l, const Vec& a_u);

/// 1 where |u_i| > zeta*D_i or D_i = 0.
Vec select_B_g1(const Vec& u_hat, double zeta, const Vec& D);

/// With s = w - zeta*y: 1 where s <= 0 or s >= zeta.
Vec select_B_g2(const Vec& w, const Vec& y_head, double zeta);

/// Euclidean projection of v onto the subdifferential of g1 at x (first n
/// entries) times the subdifferential of g2 at w (last l entries).
Vec project_subdiff_g(const Vec& x, const Vec& w, const Vec& v, const Vec& D);

/// x-block of project_subdiff_g alone: projection of v onto the
/// subdifferential of ||D.||_1 at x.
Vec project_subdiff_g1(const Vec& x, const Vec& v, const Vec& D);

}  // namespace prox
}  // namespace pwlqp
