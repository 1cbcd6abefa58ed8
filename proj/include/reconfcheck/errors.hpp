/*
 * Copyright (c) 2026, The reconfcheck Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#ifndef RECONFCHECK_ERRORS_HPP_
#define RECONFCHECK_ERRORS_HPP_

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace reconf {

struct ParseError : std::runtime_error {
  ParseError(const std::string& msg, std::size_t line, std::size_t column)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) +
                           ": " + msg),
        line(line),
        column(column) {}

  std::size_t line;
  std::size_t column;
};

/// A parsed model that breaks structural invariants.
struct InvalidModel : std::runtime_error {
  explicit InvalidModel(std::vector<std::string> v)
      : std::runtime_error("invalid model: " +
                           (v.empty() ? std::string("?") : v.front())),
        violations(std::move(v)) {}

  std::vector<std::string> violations;
};

/// An operation or identifier that cannot be resolved against the loaded
/// recipes and models.
struct ResolutionError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Raised by configuration-property evaluation for ill-formed properties;
/// never used to signal falsity.
struct EvalError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace reconf

#endif  // RECONFCHECK_ERRORS_HPP_
