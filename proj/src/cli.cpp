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

#include "pwlqp/cli.hpp"

#include <cstdio>
#include <iostream>
#include <optional>

#if __has_include(<CLI11.hpp>)
#include <CLI11.hpp>
#else
#include <CLI/CLI.hpp>
#endif

#include "pwlqp/io.hpp"
#include "pwlqp/models.hpp"
#include "pwlqp/solver.hpp"

namespace pwlqp {

namespace {

struct Flags {
  std::string model;
  std::string data;
  std::string synthetic;
  std::uint64_t seed = 0;
  std::optional<double> alpha;
  double lambda = 1e-2;
  std::optional<double> tau;
  double tau1 = 0.5;
  double tau2 = 0.5;
  double box_lower = -1.0;
  double box_upper = 0.6;
  std::optional<double> benchmark;
  double tol = 1e-5;
  int max_outer = 200;
  int max_inner = 20;
  std::string warmstart = "auto";
  std::string output = "text";
};

struct BadFlag : std::runtime_error {
  using std::runtime_error::runtime_error;
};

models::ReturnsDataset returns_data(const Flags& f) {
  models::ReturnsDataset ds;
  if (!f.synthetic.empty()) {
    long long rows = 0, cols = 0;
    char extra = 0;
    if (std::sscanf(f.synthetic.c_str(), "%lldx%lld%c", &rows, &cols, &extra) != 2 || rows < 1 ||
        cols < 1) {
      throw BadFlag("--synthetic expects SAMPLESxASSETS, e.g. 1363x28");
    }
    ds = models::synthetic_returns(rows, cols, f.seed);
  } else if (!f.data.empty()) {
    ds = io::load_returns_csv(f.data);
  } else {
    throw BadFlag("--model " + f.model + " needs --data or --synthetic");
  }
  if (f.benchmark) ds.benchmark = f.benchmark;
  return ds;
}

models::LabeledDataset labeled_data(const Flags& f, bool binary) {
  if (f.data.empty()) throw BadFlag("--model " + f.model + " needs --data");
  return io::load_svmlight(f.data, binary);
}

ProblemData build(const Flags& f) {
  const models::AssetBox box{f.box_lower, f.box_upper};
  if (f.model == "cvar") {
    return models::build_cvar(returns_data(f), f.alpha.value_or(0.05), f.tau.value_or(1e-2), box);
  }
  if (f.model == "masd") return models::build_masd(returns_data(f), f.tau.value_or(1e-2), box);
  if (f.model == "quantile") {
    return models::build_quantile(labeled_data(f, false), f.alpha.value_or(0.5), f.lambda,
                                  f.tau.value_or(0.5));
  }
  if (f.model == "svm") return models::build_svm(labeled_data(f, true), f.lambda, f.tau1, f.tau2);
  if (f.data.empty()) throw BadFlag("--model raw needs --data");
  return io::load_problem_json(f.data);
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Active-set solver for convex QPs with piecewise-linear terms", "pwlqp"};
  Flags f;
  app.add_option("--model", f.model, "Problem family")
      ->required()
      ->check(CLI::IsMember({"cvar", "masd", "quantile", "svm", "raw"}));
  app.add_option("--data", f.data, "CSV returns, svmlight file, or JSON problem");
  app.add_option("--synthetic", f.synthetic, "Gaussian returns SAMPLESxASSETS instead of --data");
  app.add_option("--seed", f.seed, "Seed for synthetic data");
  app.add_option("--alpha", f.alpha, "CVaR tail level or quantile level");
  app.add_option("--lambda", f.lambda, "Regularization weight (quantile, svm)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tau", f.tau, "l1 weight (portfolios) or l1/l2 split (quantile)")
      ->check(CLI::NonNegativeNumber);
  app.add_option("--tau1", f.tau1, "SVM l1 weight")->check(CLI::NonNegativeNumber);
  app.add_option("--tau2", f.tau2, "SVM l2 weight")->check(CLI::NonNegativeNumber);
  app.add_option("--box-lower", f.box_lower, "Lower bound on asset weights");
  app.add_option("--box-upper", f.box_upper, "Upper bound on asset weights");
  app.add_option("--benchmark", f.benchmark, "Expected-return floor for portfolios");
  app.add_option("--tol", f.tol, "Termination tolerance")->check(CLI::PositiveNumber);
  app.add_option("--max-outer", f.max_outer, "Outer iteration limit")->check(CLI::NonNegativeNumber);
  app.add_option("--max-inner", f.max_inner, "Newton iterations per sub-problem")
      ->check(CLI::PositiveNumber);
  app.add_option("--warmstart", f.warmstart, "Warm-start variant")
      ->check(CLI::IsMember({"auto", "diagonal", "proxlinear", "none"}));
  app.add_option("--output", f.output, "Report format")->check(CLI::IsMember({"text", "json"}));

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadFlags;
  }

  ProblemData problem;
  try {
    problem = build(f);
  } catch (const BadFlag& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  } catch (const io::LoadError& e) {
    err << "error: " << e.what() << '\n';
    return kExitLoadError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadFlags;
  }

  SolverOptions opts;
  opts.pmm.tol = f.tol;
  opts.pmm.schedule.max_outer = f.max_outer;
  opts.pmm.max_inner = f.max_inner;
  opts.warm_start = warm_start_from_string(f.warmstart);

  const SolveResult r = solve(problem, opts);
  if (f.output == "json") {
    out << report_to_json(r.report, 2) << '\n';
  } else {
    out << report_to_text(r.report);
  }
  return r.report.status == SolveStatus::kOptimal ? kExitOk : kExitNotConverged;
}

}  // namespace pwlqp
