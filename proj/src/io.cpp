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

#include "pwlqp/io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <optional>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

namespace pwlqp::io {

LoadError::LoadError(const std::string& source, std::size_t line, const std::string& what)
    : std::runtime_error(line ? source + ":" + std::to_string(line) + ": " + what
                              : source + ": " + what),
      line_(line) {}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<double> parse_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  if (s.empty()) return std::nullopt;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
  return v;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

std::ifstream open(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw LoadError(path, 0, "cannot open file");
  return in;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char ch) { return static_cast<char>(std::tolower(ch)); });
  return out;
}

}  // namespace

models::ReturnsDataset parse_returns_csv(std::istream& in, const std::string& source) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t lineno = 0;
  std::size_t width = 0;
  bool index_column = false;
  bool first = true;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    const auto cells = split(line, ',');
    std::vector<double> values;
    values.reserve(cells.size());
    std::size_t bad = 0;
    bool any_bad = false;
    for (std::size_t j = 0; j < cells.size(); ++j) {
      const auto v = parse_double(cells[j]);
      if (!v) {
        if (!any_bad) bad = j;
        any_bad = true;
        continue;
      }
      values.push_back(*v);
    }
    if (first) {
      first = false;
      width = cells.size();
      if (any_bad) {
        index_column = lower(trim(cells.back())) == "index";
        continue;
      }
    }
    if (cells.size() != width) {
      throw LoadError(source, lineno,
                      "expected " + std::to_string(width) + " columns, got " +
                          std::to_string(cells.size()));
    }
    if (any_bad) {
      throw LoadError(source, lineno,
                      "non-numeric cell in column " + std::to_string(bad + 1) + ": '" +
                          std::string(trim(cells[bad])) + "'");
    }
    for (std::size_t j = 0; j < values.size(); ++j) {
      if (!std::isfinite(values[j])) {
        throw LoadError(source, lineno, "non-finite cell in column " + std::to_string(j + 1));
      }
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) throw LoadError(source, lineno, "no data rows");
  const Index assets = static_cast<Index>(width) - (index_column ? 1 : 0);
  if (assets < 1) throw LoadError(source, 1, "no asset columns");

  models::ReturnsDataset ds;
  ds.scenarios.resize(static_cast<Index>(rows.size()), assets);
  double bench = 0.0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (Index j = 0; j < assets; ++j) ds.scenarios(static_cast<Index>(i), j) = rows[i][j];
    if (index_column) bench += rows[i].back();
  }
  if (index_column) ds.benchmark = bench / static_cast<double>(rows.size());
  return ds;
}

models::ReturnsDataset load_returns_csv(const std::string& path) {
  auto in = open(path);
  return parse_returns_csv(in, path);
}

models::LabeledDataset parse_svmlight(std::istream& in, bool binary_labels,
                                      const std::string& source) {
  std::vector<Triplet> entries;
  std::vector<double> labels;
  Index dim = 0;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string_view body(line);
    if (const auto hash = body.find('#'); hash != std::string_view::npos) body = body.substr(0, hash);
    body = trim(body);
    if (body.empty()) continue;

    std::istringstream tokens{std::string(body)};
    std::string tok;
    tokens >> tok;
    const auto label = parse_double(tok);
    if (!label || !std::isfinite(*label)) throw LoadError(source, lineno, "bad label '" + tok + "'");
    if (binary_labels && *label != 1.0 && *label != -1.0) {
      throw LoadError(source, lineno, "label " + tok + " is not +1 or -1");
    }
    const Index row = static_cast<Index>(labels.size());
    labels.push_back(*label);
    long long last = 0;
    while (tokens >> tok) {
      const auto colon = tok.find(':');
      if (colon == std::string::npos) throw LoadError(source, lineno, "malformed pair '" + tok + "'");
      long long idx = 0;
      const char* b = tok.data();
      const auto [ptr, ec] = std::from_chars(b, b + colon, idx);
      if (ec != std::errc() || ptr != b + colon || idx < 1) {
        throw LoadError(source, lineno, "bad feature index in '" + tok + "'");
      }
      const auto val = parse_double(std::string_view(tok).substr(colon + 1));
      if (!val || !std::isfinite(*val)) throw LoadError(source, lineno, "bad value in '" + tok + "'");
      if (idx <= last) throw LoadError(source, lineno, "feature indices must be ascending");
      last = idx;
      dim = std::max<Index>(dim, static_cast<Index>(idx));
      entries.emplace_back(row, static_cast<Index>(idx - 1), *val);
    }
  }
  models::LabeledDataset ds;
  ds.features = SpMatRow(static_cast<Index>(labels.size()), dim);
  ds.features.setFromTriplets(entries.begin(), entries.end());
  ds.targets = Eigen::Map<const Vec>(labels.data(), static_cast<Index>(labels.size()));
  return ds;
}

models::LabeledDataset load_svmlight(const std::string& path, bool binary_labels) {
  auto in = open(path);
  return parse_svmlight(in, binary_labels, path);
}

void write_svmlight(std::ostream& out, const models::LabeledDataset& ds) {
  const auto old = out.precision(17);
  for (Index i = 0; i < ds.samples(); ++i) {
    out << ds.targets[i];
    for (SpMatRow::InnerIterator it(ds.features, i); it; ++it) {
      out << ' ' << it.col() + 1 << ':' << it.value();
    }
    out << '\n';
  }
  out.precision(old);
}

namespace {

using nlohmann::json;

double read_number(const json& j, const std::string& source, const std::string& field,
                   double null_value) {
  if (j.is_null()) return null_value;
  if (j.is_number()) return j.get<double>();
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    if (s == "inf" || s == "+inf") return kInf;
    if (s == "-inf") return -kInf;
  }
  throw LoadError(source, 0, "field '" + field + "' has a non-numeric entry");
}

Vec read_vec(const json& root, const std::string& field, const std::string& source,
             double null_value = std::nan("")) {
  const json& j = root.at(field);
  if (!j.is_array()) throw LoadError(source, 0, "field '" + field + "' must be an array");
  Vec v(static_cast<Index>(j.size()));
  for (std::size_t i = 0; i < j.size(); ++i) {
    v[static_cast<Index>(i)] = read_number(j[i], source, field, null_value);
  }
  return v;
}

SpMat read_triplets(const json& root, const std::string& field, Index rows, Index cols,
                    const std::string& source) {
  SpMat M(rows, cols);
  if (!root.contains(field)) return M;
  const json& j = root.at(field);
  if (!j.is_array()) throw LoadError(source, 0, "field '" + field + "' must be an array");
  std::vector<Triplet> t;
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 3 || !e[0].is_number_integer() || !e[1].is_number_integer() ||
        !e[2].is_number()) {
      throw LoadError(source, 0, "field '" + field + "' entries must be [row, col, value]");
    }
    const auto r = e[0].get<long long>();
    const auto c = e[1].get<long long>();
    if (r < 0 || r >= rows || c < 0 || c >= cols) {
      throw LoadError(source, 0,
                      "field '" + field + "' entry (" + std::to_string(r) + ", " +
                          std::to_string(c) + ") outside " + std::to_string(rows) + "x" +
                          std::to_string(cols));
    }
    t.emplace_back(static_cast<Index>(r), static_cast<Index>(c), e[2].get<double>());
  }
  M.setFromTriplets(t.begin(), t.end());
  return M;
}

json write_number(double v) {
  if (std::isfinite(v)) return v;
  if (std::isnan(v)) return "nan";
  return v > 0 ? "inf" : "-inf";
}

json write_vec(const Vec& v) {
  json out = json::array();
  for (Index i = 0; i < v.size(); ++i) out.push_back(write_number(v[i]));
  return out;
}

json write_triplets(const SpMat& M) {
  json out = json::array();
  for (Index j = 0; j < M.outerSize(); ++j) {
    for (SpMat::InnerIterator it(M, j); it; ++it) out.push_back({it.row(), it.col(), it.value()});
  }
  return out;
}

}  // namespace

ProblemData problem_from_json(const std::string& text, const std::string& source) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::parse_error& e) {
    throw LoadError(source, 0, e.what());
  }
  if (!root.is_object()) throw LoadError(source, 0, "top level must be an object");
  if (!root.contains("c")) throw LoadError(source, 0, "missing required field 'c'");

  ProblemData p;
  p.c = read_vec(root, "c", source);
  const Index n = p.c.size();
  p.d = root.contains("d") ? read_vec(root, "d", source) : Vec();
  p.b = root.contains("b") ? read_vec(root, "b", source) : Vec();
  const Index l = p.d.size(), m = p.b.size();
  p.Q = read_triplets(root, "Q", n, n, source);
  p.C = read_triplets(root, "C", l, n, source);
  p.A = read_triplets(root, "A", m, n, source);
  p.D = root.contains("D") ? read_vec(root, "D", source) : Vec::Zero(n);
  p.a_l = root.contains("a_l") ? read_vec(root, "a_l", source, -kInf) : Vec::Constant(n, -kInf);
  p.a_u = root.contains("a_u") ? read_vec(root, "a_u", source, kInf) : Vec::Constant(n, kInf);
  if (root.contains("const_offset")) {
    p.const_offset = read_number(root["const_offset"], source, "const_offset", 0.0);
  }
  const auto issues = validate(p);
  if (!issues.empty()) {
    std::string msg = "invalid problem:";
    for (const auto& i : issues) msg += " [" + i.field + "] " + i.message + ";";
    throw LoadError(source, 0, msg);
  }
  return p;
}

ProblemData load_problem_json(const std::string& path) {
  auto in = open(path);
  std::stringstream buf;
  buf << in.rdbuf();
  return problem_from_json(buf.str(), path);
}

std::string problem_to_json(const ProblemData& p, int indent) {
  json root;
  root["c"] = write_vec(p.c);
  root["Q"] = write_triplets(p.Q);
  root["C"] = write_triplets(p.C);
  root["d"] = write_vec(p.d);
  root["A"] = write_triplets(p.A);
  root["b"] = write_vec(p.b);
  root["D"] = write_vec(p.D);
  root["a_l"] = write_vec(p.a_l);
  root["a_u"] = write_vec(p.a_u);
  root["const_offset"] = p.const_offset;
  return root.dump(indent);
}

}  // namespace pwlqp::io
