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

#include <optional>

#include "pwlqp/admm.hpp"
#include "pwlqp/pmm.hpp"

namespace pwlqp {

enum class WarmStart { kNone, kAuto, kDiagonal, kProxLinear };

const char* to_string(WarmStart w);
WarmStart warm_start_from_string(const std::string& s);

struct SolverOptions {
  pmm::PmmOptions pmm;
  WarmStart warm_start = WarmStart::kAuto;
  admm::AdmmConfig admm;
};

struct SolveResult {
  Iterate iterate;
  SolveReport report;
};

/// Warm start (unless disabled) followed by the PMM solve. The report's wall
/// time covers both phases.
SolveResult solve(const ProblemData& p, const SolverOptions& opts = {},
                  const pmm::OuterObserver& observer = {});

}  // namespace pwlqp
