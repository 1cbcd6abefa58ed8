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

#ifndef RECONFCHECK_TESTS_GEN_HPP_
#define RECONFCHECK_TESTS_GEN_HPP_

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "reconfcheck/checker.hpp"
#include "reconfcheck/cp.hpp"
#include "reconfcheck/ftpl.hpp"
#include "reconfcheck/model.hpp"
#include "reconfcheck/pathspec.hpp"
#include "reconfcheck/reconfig.hpp"

// Hand-rolled random generators. Every generator draws from one mt19937_64
// seeded by the caller so failures replay.
namespace reconf::testgen {

using Rng = std::mt19937_64;

inline constexpr std::uint64_t kSeed = 0x5eed2026u;

bool coin(Rng& rng, double p = 0.5);
std::size_t pick(Rng& rng, std::size_t n);  // uniform in [0, n)
std::int64_t range(Rng& rng, std::int64_t lo, std::int64_t hi);  // inclusive

template <class T>
const T& choose(Rng& rng, const std::vector<T>& v) {
  return v.at(pick(rng, v.size()));
}

/**
 * Component templates shared by the models and recipes of one random
 * instance, so that adds, binds and property atoms refer to consistent
 * ports and parameters. "A" is the only possible composite and has no
 * parameters; the others are leaves.
 */
struct Universe {
  std::vector<Component> templates;  // lifecycle Started, no contains

  const Component& get(const std::string& id) const;
  std::vector<std::string> ids() const;
  /// All (output, input) endpoint pairs with equal port classes.
  std::vector<Binding> possible_bindings() const;
};

Universe random_universe(Rng& rng);

Value random_value(Rng& rng, ParamClass cls);

/// A valid model with at most five components.
ComponentModel random_model(Rng& rng, const Universe& u);

Primitive random_primitive(Rng& rng, const Universe& u);
/// Only add-component, remove-component, bind and unbind.
Primitive random_topological(Rng& rng, const Universe& u, int kind);

/// Between one and three recipes named R0, R1...
RecipeSet random_recipes(Rng& rng, const Universe& u);

/// Labels are `run` and the recipe names.
PathExpr random_path(Rng& rng, const RecipeSet& recipes, bool allow_finite = true);

/// Properties naming only components and parameters of `vocab`.
cp::Property random_property(Rng& rng, const cp::Vocabulary& vocab, int depth = 2);

ftpl::Formula random_formula(Rng& rng, const cp::Vocabulary& vocab,
                             const RecipeSet& recipes, int depth = 2);

/// One randomized checking problem.
struct Instance {
  Universe universe;
  ComponentModel model;
  RecipeSet recipes;
  PathExpr path;
  ftpl::Formula formula = ftpl::Trace{};
};

Instance random_instance(Rng& rng);

/// Largest per-instance transition count seen relative to 2|Q|, over every
/// checked instance of the test process.
struct TerminationLedger {
  std::size_t checks = 0;
  std::size_t violations = 0;
  std::size_t worst_transitions = 0;
  std::size_t worst_states = 0;

  void record(const CheckStats& s);
};

TerminationLedger& termination_ledger();

}  // namespace reconf::testgen

#endif  // RECONFCHECK_TESTS_GEN_HPP_
