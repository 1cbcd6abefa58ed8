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

#ifndef RECONFCHECK_REPORT_HPP_
#define RECONFCHECK_REPORT_HPP_

#include <optional>
#include <string>
#include <string_view>

#include "reconfcheck/checker.hpp"

namespace reconf {

/// The outcome of one `check` run, as written by the command line tool.
struct Report {
  std::string formula;  // printed formula
  std::string path;     // printed path
  Verdict verdict;
  CheckStats stats;
};

/// Verdict name: "holds", "fails" or "unknown".
const char* verdict_name(const Verdict& v);

/// JSON text of `r`; the schema is described in docs/report-schema.md.
std::string report_to_json(const Report& r, int indent = 2);

/// Parses report_to_json output. Throws std::invalid_argument on schema
/// violations and ParseError/InvalidModel on malformed embedded texts.
Report report_from_json(std::string_view text);

/// Human-readable rendering.
std::string report_to_text(const Report& r);

}  // namespace reconf

#endif  // RECONFCHECK_REPORT_HPP_
