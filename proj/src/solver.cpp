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

#include "pwlqp/solver.hpp"

#include <chrono>
#include <stdexcept>

namespace pwlqp {

const char* to_string(WarmStart w) {
  switch (w) {
    case WarmStart::kNone:
      return "none";
    case WarmStart::kAuto:
      return "auto";
    case WarmStart::kDiagonal:
      return "diagonal";
    case WarmStart::kProxLinear:
      return "proxlinear";
  }
  return "unknown";
}

WarmStart warm_start_from_string(const std::string& s) {
  if (s == "none") return WarmStart::kNone;
  if (s == "auto") return WarmStart::kAuto;
  if (s == "diagonal") return WarmStart::kDiagonal;
  if (s == "proxlinear") return WarmStart::kProxLinear;
  throw std::invalid_argument("unknown warm start '" + s + "'");
}

SolveResult solve(const ProblemData& p, const SolverOptions& opts,
                  const pmm::OuterObserver& observer) {
  const auto t0 = std::chrono::steady_clock::now();
  require_valid(p);

  Iterate start = Iterate::zeros(p);
  int warm_iters = 0;
  if (opts.warm_start != WarmStart::kNone) {
    admm::AdmmConfig cfg = opts.admm;
    if (opts.warm_start == WarmStart::kDiagonal) cfg.variant = admm::Variant::kDiagonal;
    if (opts.warm_start == WarmStart::kProxLinear) cfg.variant = admm::Variant::kProxLinear;
    if (opts.warm_start == WarmStart::kAuto) cfg.variant = admm::Variant::kAuto;
    const admm::AdmmResult ws = admm::run(p, cfg);
    warm_iters = ws.iterations;
    start = admm::map_to_pmm_start(p, ws.state);
    // A diverged warm start is worse than none.
    if (!start.finite()) start = Iterate::zeros(p);
  }

  pmm::PmmResult r = pmm::pmm_solve(p, start, opts.pmm, observer);
  r.report.warmstart_iters = warm_iters;
  r.report.wall_time_s =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return {std::move(r.iterate), r.report};
}

}  // namespace pwlqp
