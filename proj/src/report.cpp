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

#include "pwlqp/report.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace pwlqp {

std::string to_string(SolveStatus s) {
  switch (s) {
    case SolveStatus::kOptimal:
      return "optimal";
    case SolveStatus::kMaxIter:
      return "max-iter";
    case SolveStatus::kSuspectedInfeasible:
      return "suspected-infeasible";
    case SolveStatus::kNumericalError:
      return "numerical-error";
  }
  return "unknown";
}

SolveStatus status_from_string(const std::string& s) {
  if (s == "optimal") return SolveStatus::kOptimal;
  if (s == "max-iter") return SolveStatus::kMaxIter;
  if (s == "suspected-infeasible") return SolveStatus::kSuspectedInfeasible;
  if (s == "numerical-error") return SolveStatus::kNumericalError;
  throw std::invalid_argument("unknown solve status '" + s + "'");
}

std::string SolveReport::iteration_summary() const {
  std::ostringstream out;
  out << outer_iters << '(' << inner_iters_total << ")[" << factorizations << ']';
  return out.str();
}

double SolveReport::max_residual() const {
  return *std::max_element(residuals.begin(), residuals.end());
}

namespace {

// JSON has no infinities or NaNs; encode them as strings.
nlohmann::json number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

double read_number(const nlohmann::json& j) {
  if (j.is_number()) return j.get<double>();
  const std::string s = j.get<std::string>();
  if (s == "inf") return kInf;
  if (s == "-inf") return -kInf;
  if (s == "nan") return std::nan("");
  throw std::invalid_argument("report: bad number '" + s + "'");
}

}  // namespace

std::string report_to_json(const SolveReport& r, int indent) {
  nlohmann::json j;
  j["status"] = to_string(r.status);
  j["outer_iters"] = r.outer_iters;
  j["inner_iters_total"] = r.inner_iters_total;
  j["factorizations"] = r.factorizations;
  j["iterations"] = r.iteration_summary();
  j["residuals"] = nlohmann::json::array();
  for (double v : r.residuals) j["residuals"].push_back(number(v));
  j["objective"] = number(r.objective);
  j["wall_time_s"] = r.wall_time_s;
  j["active_set_sizes"] = {{"free_x", r.free_x}, {"kept_rows", r.kept_rows}};
  j["warmstart_iters"] = r.warmstart_iters;
  j["dimensions"] = {{"n", r.n}, {"l", r.l}, {"m", r.m}};
  return j.dump(indent);
}

SolveReport report_from_json(const std::string& text) {
  const auto j = nlohmann::json::parse(text);
  SolveReport r;
  r.status = status_from_string(j.at("status").get<std::string>());
  r.outer_iters = j.at("outer_iters").get<int>();
  r.inner_iters_total = j.at("inner_iters_total").get<int>();
  r.factorizations = j.at("factorizations").get<int>();
  const auto& res = j.at("residuals");
  if (res.size() != r.residuals.size()) throw std::invalid_argument("report: need 4 residuals");
  for (size_t i = 0; i < r.residuals.size(); ++i) r.residuals[i] = read_number(res[i]);
  r.objective = read_number(j.at("objective"));
  r.wall_time_s = j.at("wall_time_s").get<double>();
  r.free_x = j.at("active_set_sizes").at("free_x").get<Index>();
  r.kept_rows = j.at("active_set_sizes").at("kept_rows").get<Index>();
  r.warmstart_iters = j.at("warmstart_iters").get<int>();
  r.n = j.at("dimensions").at("n").get<Index>();
  r.l = j.at("dimensions").at("l").get<Index>();
  r.m = j.at("dimensions").at("m").get<Index>();
  return r;
}

std::string report_to_text(const SolveReport& r) {
  std::ostringstream out;
  out << "status            " << to_string(r.status) << '\n'
      << "dimensions        n=" << r.n << " l=" << r.l << " m=" << r.m << '\n'
      << "PMM(SSN)[Fact.]   " << r.iteration_summary() << '\n'
      << "warm-start iters  " << r.warmstart_iters << '\n'
      << std::setprecision(10) << "objective         " << r.objective << '\n'
      << std::scientific << std::setprecision(3) << "residuals         " << r.residuals[0]
      << ' ' << r.residuals[1] << ' ' << r.residuals[2] << ' ' << r.residuals[3] << '\n'
      << "active set        |B_g1|=" << r.free_x << " |N_g2|=" << r.kept_rows << '\n'
      << std::defaultfloat << std::setprecision(4) << "time (s)          " << r.wall_time_s
      << '\n';
  return out.str();
}

}  // namespace pwlqp
