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

#include <limits>

#include <Eigen/Core>
#include <Eigen/SparseCore>

namespace pwlqp {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;
using SpMat = Eigen::SparseMatrix<double>;                    // compressed column
using SpMatRow = Eigen::SparseMatrix<double, Eigen::RowMajor>;  // compressed row
using Triplet = Eigen::Triplet<double>;
using Index = Eigen::Index;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace pwlqp
