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

#include <array>
#include <string>

#include "pwlqp/types.hpp"

namespace pwlqp {

enum class SolveStatus { kOptimal, kMaxIter, kSuspectedInfeasible, kNumericalError };

std::string to_string(SolveStatus s);
SolveStatus status_from_string(const std::string& s);

/// Outcome of a solve with the iteration accounting of the inner-outer scheme.
struct SolveReport {
  SolveStatus status = SolveStatus::kMaxIter;
  int outer_iters = 0;
  int inner_iters_total = 0;
  int factorizations = 0;
  // Stationarity in x, stationarity in w, primal feasibility, box complementarity.
  std::array<double, 4> residuals{};
  double objective = 0.0;
  double wall_time_s = 0.0;
  Index free_x = 0;     // |B_g1| at exit
  Index kept_rows = 0;  // |N_g2| at exit
  int warmstart_iters = 0;
  Index n = 0;
  Index l = 0;
  Index m = 0;

  /// "outer(inner)[factorizations]", e.g. "35(169)[142]".
  std::string iteration_summary() const;
  double max_residual() const;
};

/// JSON object carrying every field; status as a string.
std::string report_to_json(const SolveReport& r, int indent = 2);
SolveReport report_from_json(const std::string& text);

/// Human-readable multi-line summary.
std::string report_to_text(const SolveReport& r);

}  // namespace pwlqp
