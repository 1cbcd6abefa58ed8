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

#ifndef RECONFCHECK_PATHSPEC_HPP_
#define RECONFCHECK_PATHSPEC_HPP_

#include <compare>
#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace reconf {

/**
 * A reconfiguration path: a finite sequence of operation names, optionally
 * followed by one group repeated forever.
 *
 *   path := NAME* [ "(" NAME+ ")" "+" ]
 *
 * `#` starts a line comment.
 */
struct PathExpr {
  std::vector<std::string> prefix;
  std::vector<std::string> cycle;  // empty: finite path

  bool is_finite() const { return cycle.empty(); }
  bool operator==(const PathExpr&) const = default;
};

/// Parses and checks every name with `is_known` (pass nullptr to skip).
PathExpr parse_path(std::string_view text,
                    const std::function<bool(const std::string&)>& is_known);
std::string print_path(const PathExpr& p);

struct StateId {
  std::size_t index = 0;
  auto operator<=>(const StateId&) const = default;
};

struct Transition {
  std::string label;
  StateId target;
};

/**
 * Deterministic lasso automaton. States are numbered along the path, so the
 * numbering is the reachability order; the only transition that does not go
 * to the next state leaves q_max and returns to back_target.
 */
class PathAutomaton {
 public:
  explicit PathAutomaton(const PathExpr& p);

  std::size_t size() const { return transitions_.size(); }
  StateId initial() const { return StateId{0}; }
  StateId q_max() const { return StateId{size() - 1}; }
  std::optional<StateId> back_target() const { return back_target_; }
  bool has_cycle() const { return back_target_.has_value(); }
  const PathExpr& path() const { return path_; }

  /// The unique outgoing transition; empty at the terminal state of a finite
  /// path. Throws std::out_of_range for unknown states.
  std::optional<Transition> succ(StateId q) const;

  /// The order on states: q reaches q2 through pairwise-distinct states
  /// without taking the transition out of q_max.
  bool precedes(StateId q, StateId q2) const;

  /// Operation labels along the path from `q` to the end of one traversal,
  /// followed by the repeated group; the path that remains when standing
  /// at `q`.
  PathExpr residual_from(StateId q) const;

  /// States of the form q_i on the path, for printing: "q3".
  static std::string name(StateId q) { return "q" + std::to_string(q.index); }

 private:
  PathExpr path_;
  std::vector<std::optional<Transition>> transitions_;
  std::optional<StateId> back_target_;
};

PathAutomaton build_automaton(const PathExpr& p);

enum class Mark { Unchecked, Again, Checked };

/// Per-state marks of one traversal; fresh maps are all unchecked.
class MarkMap {
 public:
  explicit MarkMap(std::size_t states) : marks_(states, Mark::Unchecked) {}

  Mark get(StateId q) const { return marks_.at(q.index); }
  void set(StateId q, Mark m) { marks_.at(q.index) = m; }
  std::size_t size() const { return marks_.size(); }

 private:
  std::vector<Mark> marks_;
};

}  // namespace reconf

#endif  // RECONFCHECK_PATHSPEC_HPP_
