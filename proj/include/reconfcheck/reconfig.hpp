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

#ifndef RECONFCHECK_RECONFIG_HPP_
#define RECONFCHECK_RECONFIG_HPP_

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "reconfcheck/model.hpp"

namespace reconf {

/// Integer expression over the current configuration's int parameters.
struct IntExpr;
using IntExprPtr = std::shared_ptr<const IntExpr>;

struct IntLiteral {
  std::int64_t value = 0;
  bool operator==(const IntLiteral&) const = default;
};
struct ParamRef {
  std::string component;
  std::string param;
  bool operator==(const ParamRef&) const = default;
};
struct BinaryExpr {
  char op = '+';  // one of + - *
  IntExprPtr lhs, rhs;
  bool operator==(const BinaryExpr& o) const;
};

struct IntExpr {
  std::variant<IntLiteral, ParamRef, BinaryExpr> v;
  bool operator==(const IntExpr&) const = default;
};

IntExprPtr make_literal(std::int64_t v);
IntExprPtr make_param_ref(std::string component, std::string param);
IntExprPtr make_binary(char op, IntExprPtr lhs, IntExprPtr rhs);

/// Empty when a referenced parameter is missing, not an int, or the
/// arithmetic overflows.
std::optional<std::int64_t> evaluate(const IntExpr& e, const ComponentModel& m);

// Primitive reconfiguration operations.

struct AddComponent {
  Component component;          // inserted stopped
  std::string parent;           // optional contains edge
  bool operator==(const AddComponent&) const = default;
};
struct RemoveComponent {
  std::string id;
  bool operator==(const RemoveComponent&) const = default;
};
struct Bind {
  Binding binding;
  bool operator==(const Bind&) const = default;
};
struct Unbind {
  Binding binding;
  bool operator==(const Unbind&) const = default;
};
struct SetParam {
  std::string component;
  std::string param;
  IntExprPtr value;
  bool operator==(const SetParam& o) const;
};
struct Stop {
  std::string id;
  bool operator==(const Stop&) const = default;
};
struct Start {
  std::string id;
  bool operator==(const Start&) const = default;
};

using Primitive = std::variant<AddComponent, RemoveComponent, Bind, Unbind,
                               SetParam, Stop, Start>;

/// add-component, remove-component, bind and unbind.
bool is_topological(const Primitive& p);

/// A named composite operation: primitives applied left to right.
struct Recipe {
  std::string name;
  std::vector<Primitive> steps;
  bool operator==(const Recipe&) const = default;
};

using RecipeSet = std::map<std::string, Recipe>;

struct Run {
  bool operator==(const Run&) const = default;
};

using EvolutionOperation = std::variant<Run, Primitive, Recipe>;

inline constexpr const char* kRunLabel = "run";

struct ApplicationOutcome {
  ComponentModel result;
  bool changed = false;
};

/**
 * Applies one primitive. Inapplicable operations (adding an existing id,
 * removing an absent one, duplicate or ill-typed bindings, missing
 * parameters...) return the input unchanged; so does any candidate result
 * that would break a structural invariant.
 */
ApplicationOutcome apply_primitive(const Primitive& op, const ComponentModel& m);

ApplicationOutcome apply_evolution(const EvolutionOperation& op,
                                   const ComponentModel& m);

/// Composes `ops` left to right.
ComponentModel apply_sequence(const std::vector<EvolutionOperation>& ops,
                              const ComponentModel& m);

/**
 * With F the left-to-right composition of `ops`, whether F(F(m)) equals F(m).
 * `ignore_params` compares with all parameter values erased.
 */
bool is_idempotent_sequence(const std::vector<EvolutionOperation>& ops,
                            const ComponentModel& m, bool ignore_params);

/// Resolves transition labels: recipe names plus `run`.
class OperationTable {
 public:
  OperationTable() = default;
  explicit OperationTable(RecipeSet recipes);

  bool contains(const std::string& name) const;
  /// Throws ResolutionError for unknown names.
  const EvolutionOperation& resolve(const std::string& name) const;
  const RecipeSet& recipes() const { return recipes_; }

 private:
  RecipeSet recipes_;
  std::map<std::string, EvolutionOperation> ops_;
};

}  // namespace reconf

#endif  // RECONFCHECK_RECONFIG_HPP_
