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

#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "pwlqp/io.hpp"
#include "support/random_problem.hpp"

namespace pwlqp::io {
namespace {

TEST(ReturnsCsv, HeaderAndIndexColumn) {
  std::istringstream in("A,B,index\n0.01,0.02,0.5\n-0.01,0.03,0.7\n");
  const auto ds = parse_returns_csv(in);
  EXPECT_EQ(ds.samples(), 2);
  EXPECT_EQ(ds.assets(), 2);
  EXPECT_EQ(ds.scenarios(1, 1), 0.03);
  ASSERT_TRUE(ds.benchmark.has_value());
  EXPECT_DOUBLE_EQ(*ds.benchmark, 0.6);
}

TEST(ReturnsCsv, NoHeader) {
  std::istringstream in("1,2\r\n\n3,4\n");
  const auto ds = parse_returns_csv(in);
  EXPECT_EQ(ds.samples(), 2);
  EXPECT_FALSE(ds.benchmark.has_value());
  EXPECT_DOUBLE_EQ(ds.return_floor(), 2.5);
}

TEST(ReturnsCsv, ErrorsCarryLineNumbers) {
  std::istringstream ragged("a,b\n1,2\n3\n");
  try {
    parse_returns_csv(ragged, "r.csv");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 3u);
    EXPECT_NE(std::string(e.what()).find("r.csv:3"), std::string::npos);
  }
  std::istringstream bad("1,2\n3,x\n");
  try {
    parse_returns_csv(bad);
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
  std::istringstream empty("a,b\n");
  EXPECT_THROW(parse_returns_csv(empty), LoadError);
}

TEST(Svmlight, ParseAndRoundTrip) {
  std::istringstream in("# comment\n+1 1:0.5 3:2\n-1 2:1.5  # tail\n\n1\n");
  const auto ds = parse_svmlight(in, true);
  EXPECT_EQ(ds.samples(), 3);
  EXPECT_EQ(ds.dim(), 3);
  EXPECT_EQ(ds.features.coeff(0, 2), 2.0);
  EXPECT_EQ(ds.targets[1], -1.0);

  std::ostringstream out;
  write_svmlight(out, ds);
  std::istringstream again(out.str());
  const auto back = parse_svmlight(again, true);
  EXPECT_EQ(Mat(back.features), Mat(ds.features));
  EXPECT_EQ(back.targets, ds.targets);
}

TEST(Svmlight, Errors) {
  std::istringstream label("2 1:1\n");
  EXPECT_THROW(parse_svmlight(label, true), LoadError);
  std::istringstream order("1 2:1 1:1\n");
  EXPECT_THROW(parse_svmlight(order), LoadError);
  std::istringstream zero("1 0:1\n");
  EXPECT_THROW(parse_svmlight(zero), LoadError);
  std::istringstream pair("1 3\n");
  try {
    parse_svmlight(pair, false, "f");
    FAIL();
  } catch (const LoadError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(ProblemJson, RoundTrip) {
  std::mt19937_64 rng(1);
  for (int t = 0; t < 50; ++t) {
    ProblemData p = testing_support::random_problem(rng);
    p.a_u[0] = kInf;
    p.const_offset = 0.25;
    const ProblemData q = problem_from_json(problem_to_json(p));
    EXPECT_EQ(q.c, p.c);
    EXPECT_EQ(Mat(q.Q), Mat(p.Q));
    EXPECT_EQ(Mat(q.C), Mat(p.C));
    EXPECT_EQ(Mat(q.A), Mat(p.A));
    EXPECT_EQ(q.d, p.d);
    EXPECT_EQ(q.b, p.b);
    EXPECT_EQ(q.D, p.D);
    EXPECT_EQ(q.a_l, p.a_l);
    EXPECT_EQ(q.a_u, p.a_u);
    EXPECT_EQ(q.const_offset, 0.25);
  }
}

TEST(ProblemJson, DefaultsAndNullBounds) {
  const ProblemData p = problem_from_json(R"({"c": [1, 2], "a_l": [0, null], "a_u": [null, "inf"]})");
  EXPECT_EQ(p.n(), 2);
  EXPECT_EQ(p.l(), 0);
  EXPECT_EQ(p.a_l[0], 0.0);
  EXPECT_EQ(p.a_l[1], -kInf);
  EXPECT_EQ(p.a_u[0], kInf);
  EXPECT_EQ(p.D, Vec::Zero(2));
}

TEST(ProblemJson, Errors) {
  EXPECT_THROW(problem_from_json("{"), LoadError);
  EXPECT_THROW(problem_from_json("{}"), LoadError);
  EXPECT_THROW(problem_from_json(R"({"c": [1], "Q": [[0, 1, 1.0]]})"), LoadError);
  EXPECT_THROW(problem_from_json(R"({"c": [1], "D": [-1]})"), LoadError);
  EXPECT_THROW(problem_from_json(R"({"c": ["x"]})"), LoadError);
}

TEST(Files, LoadFromDiskIsDeterministic) {
  const auto dir = std::filesystem::temp_directory_path() / "pwlqp_io_test";
  std::filesystem::create_directories(dir);
  const auto path = (dir / "r.csv").string();
  {
    std::ofstream f(path);
    f << "x,y\n0.1,0.2\n0.3,-0.4\n";
  }
  const auto a = load_returns_csv(path), b = load_returns_csv(path);
  EXPECT_EQ(a.scenarios, b.scenarios);
  EXPECT_THROW(load_returns_csv((dir / "missing.csv").string()), LoadError);
  std::filesystem::remove_all(dir);
}

}  // namespace
}  // namespace pwlqp::io
