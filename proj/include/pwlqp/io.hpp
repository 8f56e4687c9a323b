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

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "pwlqp/models.hpp"
#include "pwlqp/problem.hpp"

namespace pwlqp::io {

/// Malformed or unreadable input. `line` is 1-based, 0 when not tied to a line.
class LoadError : public std::runtime_error {
 public:
  LoadError(const std::string& source, std::size_t line, const std::string& what);
  std::size_t line() const { return line_; }

 private:
  std::size_t line_;
};

/// Comma-separated returns, one row per time point. A first row containing
/// any non-numeric cell is a header; a last header column named "index"
/// becomes the benchmark series and its mean the return floor.
models::ReturnsDataset parse_returns_csv(std::istream& in, const std::string& source = "<stream>");
models::ReturnsDataset load_returns_csv(const std::string& path);

/// svmlight / LIBSVM text: "label idx:val ..." with 1-based, strictly
/// ascending indices. Blank lines and '#' comments are skipped. With
/// `binary_labels`, any label other than +1/-1 is an error.
models::LabeledDataset parse_svmlight(std::istream& in, bool binary_labels = false,
                                      const std::string& source = "<stream>");
models::LabeledDataset load_svmlight(const std::string& path, bool binary_labels = false);
void write_svmlight(std::ostream& out, const models::LabeledDataset& ds);

/// JSON problem container. Dense vectors are arrays; sparse matrices are
/// arrays of zero-based [row, col, value] triplets. Infinite bounds are null
/// (meaning unbounded on that side) or the strings "inf" / "-inf". Sizes come
/// from c (n), d (l) and b (m); every field except c is optional.
ProblemData problem_from_json(const std::string& text, const std::string& source = "<string>");
ProblemData load_problem_json(const std::string& path);
std::string problem_to_json(const ProblemData& p, int indent = -1);

}  // namespace pwlqp::io
