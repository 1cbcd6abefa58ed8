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

#ifndef RECONFCHECK_ORACLE_HPP_
#define RECONFCHECK_ORACLE_HPP_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "reconfcheck/ftpl.hpp"
#include "reconfcheck/model.hpp"
#include "reconfcheck/pathspec.hpp"
#include "reconfcheck/reconfig.hpp"

// Brute-force semantics: materialize the configuration sequence of a path and
// evaluate formulas by direct quantification. Slow on purpose.
namespace reconf::oracle {

inline constexpr std::size_t kDefaultMaxRounds = 64;

struct LassoEntry {
  StateId state;
  ComponentModel model;
  std::string incoming;  // label of the transition that produced it
};

/**
 * An explored configuration sequence. With `period_start` = j, the
 * configuration that would follow the last entry (via `closing_label`) is
 * entry j again, so the sequence continues as entries j.. forever.
 * Without it, the sequence is either the complete finite path or was cut
 * at the round budget (`truncated`). When entries were folded with
 * parameter values erased (`params_erased`), events also compare
 * configurations that way: an entry then stands for configurations whose
 * parameter values differ between rounds.
 */
struct ConcreteLasso {
  std::vector<LassoEntry> configs;
  std::optional<std::size_t> period_start;
  std::string closing_label;
  bool truncated = false;
  bool params_erased = false;
};

/**
 * Applies transitions from (q0, c0) until a terminal state, a repeated
 * (state, model) pair, or `max_rounds` traversals of the cycle. With
 * `ignore_params`, pairs are compared with parameter values erased.
 */
ConcreteLasso unfold_to_lasso(const PathAutomaton& a, const OperationTable& ops,
                              const ComponentModel& c0,
                              std::size_t max_rounds = kDefaultMaxRounds,
                              bool ignore_params = false);

/// Truth of `f` on the sequence; empty when a truncated sequence does not
/// determine it.
std::optional<bool> oracle_eval(const ftpl::Formula& f, const ConcreteLasso& l);

/**
 * Second strategy: copies the period out explicitly and quantifies over a
 * window of prefix + two periods from each position. Defined for complete
 * or periodic sequences only.
 */
std::optional<bool> oracle_eval_naive(const ftpl::Formula& f,
                                      const ConcreteLasso& l);

}  // namespace reconf::oracle

#endif  // RECONFCHECK_ORACLE_HPP_
