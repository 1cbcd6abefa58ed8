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

#ifndef RECONFCHECK_CHECKER_HPP_
#define RECONFCHECK_CHECKER_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reconfcheck/cp.hpp"
#include "reconfcheck/ftpl.hpp"
#include "reconfcheck/model.hpp"
#include "reconfcheck/pathspec.hpp"
#include "reconfcheck/reconfig.hpp"

namespace reconf {

struct WitnessStep {
  StateId state;
  std::string label;   // incoming transition; empty for the first step
  std::string digest;  // model_digest of the configuration
  bool operator==(const WitnessStep&) const = default;
};

/// The configurations from the start of the path up to a violation.
struct TraceWitness {
  std::vector<WitnessStep> steps;
  std::size_t violation_index = 0;
  std::string violated;
  bool operator==(const TraceWitness&) const = default;
};

enum class UnknownReason { StepBudgetExhausted, NonIdempotentCycle };

const char* to_string(UnknownReason r);

struct Holds {};

struct Fails {
  TraceWitness witness;
};

/**
 * No verdict. `residual` is the rest of the path from `reached`; checking
 * `resume` on it (when present) decides the original formula.
 */
struct Unknown {
  UnknownReason reason = UnknownReason::StepBudgetExhausted;
  PathExpr residual;
  ComponentModel reached;
  std::optional<ftpl::Formula> resume;
};

using Verdict = std::variant<Holds, Fails, Unknown>;

struct CheckOptions {
  std::optional<std::size_t> max_steps;  // transitions explored from c0
  bool ignore_params = false;
  bool oracle_crosscheck = false;
  /// Further models whose component ids and parameters properties may name,
  /// e.g. the original model when resuming from a reached configuration.
  std::vector<ComponentModel> context;
};

struct CheckStats {
  std::size_t automaton_states = 0;
  std::size_t transitions = 0;  // applied along the explored path
  std::size_t instances = 0;
  std::size_t max_instance_transitions = 0;
  std::optional<bool> idempotent_cycle;
  bool ignore_params = false;
  bool marks = true;  // false: walked without mark-based termination
  std::optional<bool> oracle;  // truth according to the brute-force oracle
};

/**
 * Whether configurations may be compared with parameter values erased when
 * checking `f`: when forced, or when no property of `f` reads a parameter
 * and no normal/exceptional event of `f` names an operation whose effect can
 * depend on parameter values (a recipe with a set step, or one removing and
 * re-adding the same component). With `a`, events on operations that label
 * no transition of `a` never occur and are skipped.
 */
bool effective_ignore_params(const ftpl::Formula& f, const OperationTable& ops,
                             bool forced, const PathAutomaton* a = nullptr);

/**
 * All component ids and parameter classes that may appear on paths from
 * `c0`: those of c0 and of every add step of every recipe.
 */
cp::Vocabulary vocabulary_for(const ComponentModel& c0,
                              const OperationTable& ops);

/// Checks names in `f` and `a` against `ops` and the vocabulary. Throws
/// ResolutionError or EvalError.
void resolve_names(const ftpl::Formula& f, const PathAutomaton& a,
                   const OperationTable& ops, const cp::Vocabulary& vocab);

/**
 * Decides whether the path from `c0` along `a` satisfies `f`. Without
 * `max_steps`, a cyclic path whose repeated group is not idempotent at its
 * entry configuration yields Unknown.
 */
Verdict check(const ftpl::Formula& f, const PathAutomaton& a,
              const ComponentModel& c0, const CheckOptions& opts,
              const OperationTable& ops, CheckStats* stats = nullptr);

enum class Outcome { Holds, Fails, Exhausted };

/**
 * The operator functions, run from one starting point. Each operator
 * invocation owns a fresh mark map. With `use_marks` the walk stops at the
 * first revisited state; otherwise it runs until the budget is spent.
 *
 * When the automaton has a cycle and marks are used, the functions walk a
 * copy whose cycle is unrolled once; states reported back use the original
 * numbering.
 */
class LassoChecker {
 public:
  struct Cursor {
    StateId state;  // in the walked automaton
    std::size_t position = 0;
  };
  using PathCheck = std::function<Outcome(const Cursor&)>;

  LassoChecker(const PathAutomaton& a, const OperationTable& ops, StateId start,
               ComponentModel c, std::optional<std::size_t> max_steps,
               bool use_marks, const cp::Vocabulary* vocab = nullptr);

  Outcome evaluate(const ftpl::Formula& f);
  Outcome check_after(const ftpl::EventSpec& e, const ftpl::Formula& inner);
  Outcome check_before(const ftpl::EventSpec& e, const ftpl::Trace& t);
  Outcome check_always(const cp::Property& p);
  Outcome check_eventually(const cp::Property& p);

  /// Set after Fails.
  const std::optional<TraceWitness>& witness() const { return witness_; }
  /// Set after Exhausted, when the formula can be resumed.
  const std::optional<ftpl::Formula>& resume() const { return resume_; }

  /// Last explored configuration and its state (original numbering).
  StateId reached_state() const;
  const ComponentModel& reached_model() const;

  std::size_t transitions() const { return transitions_; }
  std::size_t instances() const { return instances_; }
  std::size_t max_instance_transitions() const { return max_instance_; }
  /// Transitions taken by each operator instance, in creation order.
  const std::vector<std::size_t>& instance_transitions() const {
    return per_instance_;
  }
  bool unrolled() const { return unrolled_.has_value(); }

 private:
  struct Entry {
    StateId state;     // walked automaton
    StateId original;  // input automaton
    std::string label;
    std::shared_ptr<const ComponentModel> model;
  };
  struct Instance;

  PathCheck compile(const ftpl::Formula& f);
  Outcome after_impl(const ftpl::EventSpec& e, const PathCheck& inner,
                     bool inner_monotone, const ftpl::Formula* inner_f,
                     const Cursor& start);
  Outcome before_impl(const ftpl::EventSpec& e, const ftpl::Trace& t,
                      const Cursor& start);
  Outcome always_impl(const cp::Property& p, const Cursor& start);
  Outcome eventually_impl(const cp::Property& p, const Cursor& start);

  enum class Step { Moved, Terminal, Exhausted };
  Step advance(Cursor& cur, Instance& inst);
  const PathAutomaton& walked() const;
  StateId original_of(StateId q) const;
  const ComponentModel& model_at(std::size_t position) const;
  void materialize(std::size_t position);
  bool holds(const cp::Property& p, std::size_t position) const;
  void fail_at(std::size_t position, std::string violated);

  const PathAutomaton& input_;
  std::optional<PathAutomaton> unrolled_;
  const OperationTable& ops_;
  std::optional<std::size_t> max_steps_;
  bool use_marks_;
  const cp::Vocabulary* vocab_;

  std::vector<Entry> trace_;
  std::optional<TraceWitness> witness_;
  std::optional<ftpl::Formula> resume_;
  std::size_t transitions_ = 0;
  std::size_t instances_ = 0;
  std::size_t max_instance_ = 0;
  std::vector<std::size_t> per_instance_;
};

}  // namespace reconf

#endif  // RECONFCHECK_CHECKER_HPP_
