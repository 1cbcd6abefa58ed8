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

#ifndef RECONFCHECK_CP_HPP_
#define RECONFCHECK_CP_HPP_

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "reconfcheck/model.hpp"

namespace reconf {

namespace detail {
class TokenStream;
}

/**
 * Configuration properties: first-order formulas over one configuration.
 *
 * Concrete syntax (keywords are reserved inside properties):
 *
 *   cp      := implies
 *   implies := or [ "=>" implies ]
 *   or      := and { "or" and }
 *   and     := unary { "and" unary }
 *   unary   := "not" unary | "(" cp ")" | quant | atom
 *   quant   := ("forall" | "exists") VAR "in" ("components" | "bindings") ":" cp
 *   atom    := "true" | "false"
 *            | "component" "(" C ")" | "started" "(" C ")"
 *            | "bound" "(" C "." PORT "," C "." PORT ")"
 *            | "sub" "(" C "," C ")"                       child, parent
 *            | "param" "(" C "." NAME ")" RELOP literal
 *            | "class" "(" VAR ")" "=" NAME
 *            | "present" "(" VAR ")"
 *            | ("from" | "to") "(" VAR ")" "=" C            binding variables
 *
 * C is a component id or a component variable bound by an enclosing
 * quantifier over `components`.
 */
namespace cp {

enum class RelOp { Lt, Le, Eq, Ne, Ge, Gt };
enum class Domain { Components, Bindings };
enum class Quantifier { Forall, Exists };
enum class BindingEnd { From, To };

const char* to_string(RelOp op);

/// A component position: ground id, or a variable bound to a component.
struct CompRef {
  std::string name;
  bool is_var = false;

  bool operator==(const CompRef&) const = default;
};

struct Node;
using NodePtr = std::shared_ptr<const Node>;

struct TrueAtom {
  bool operator==(const TrueAtom&) const = default;
};
struct FalseAtom {
  bool operator==(const FalseAtom&) const = default;
};
struct ComponentPresent {
  CompRef component;
  bool operator==(const ComponentPresent&) const = default;
};
struct Started {
  CompRef component;
  bool operator==(const Started&) const = default;
};
struct Bound {
  CompRef out_component;
  std::string out_port;
  CompRef in_component;
  std::string in_port;
  bool operator==(const Bound&) const = default;
};
struct Subcomponent {
  CompRef child;
  CompRef parent;
  bool operator==(const Subcomponent&) const = default;
};
struct ParamCmp {
  CompRef component;
  std::string param;
  RelOp op = RelOp::Eq;
  Value literal;
  bool operator==(const ParamCmp&) const = default;
};
/// Component class for component variables, port class for bindings.
struct ClassIs {
  std::string var;
  std::string cls;
  bool operator==(const ClassIs&) const = default;
};
struct VarPresent {
  std::string var;
  bool operator==(const VarPresent&) const = default;
};
struct EndpointIs {
  std::string var;
  BindingEnd end = BindingEnd::From;
  CompRef component;
  bool operator==(const EndpointIs&) const = default;
};
struct Not {
  NodePtr arg;
  bool operator==(const Not& o) const;
};
struct And {
  NodePtr lhs, rhs;
  bool operator==(const And& o) const;
};
struct Or {
  NodePtr lhs, rhs;
  bool operator==(const Or& o) const;
};
struct Implies {
  NodePtr lhs, rhs;
  bool operator==(const Implies& o) const;
};
struct Quant {
  Quantifier kind = Quantifier::Forall;
  std::string var;
  Domain domain = Domain::Components;
  NodePtr body;
  bool operator==(const Quant& o) const;
};

struct Node {
  std::variant<TrueAtom, FalseAtom, ComponentPresent, Started, Bound,
               Subcomponent, ParamCmp, ClassIs, VarPresent, EndpointIs, Not,
               And, Or, Implies, Quant>
      v;

  bool operator==(const Node&) const = default;
};

/// Immutable, cheaply copyable handle to a property tree.
class Property {
 public:
  Property();  // true
  explicit Property(NodePtr root) : root_(std::move(root)) {}

  const Node& root() const { return *root_; }
  const NodePtr& ptr() const { return root_; }

  bool operator==(const Property& o) const { return *root_ == *o.root_; }

 private:
  NodePtr root_;
};

template <class T>
Property make(T node) {
  return Property(std::make_shared<const Node>(Node{std::move(node)}));
}

Property parse(std::string_view text);
/// Parses a property from an already-open token stream (used by formulas).
Property parse(detail::TokenStream& ts);
std::string print(const Property& p);

/**
 * Identifiers a property may name: every component id that can occur along
 * the paths being checked, with its parameter classes.
 */
struct Vocabulary {
  std::map<std::string, std::map<std::string, ParamClass>> components;

  void add(const Component& c);
  void add(const ComponentModel& m);
};

/**
 * Truth of `p` on `m`. Ground atoms naming absent components are false.
 * Throws EvalError when `vocab` is given and a ground atom names an unknown
 * component, or when a parameter comparison is ill-sorted or names a
 * parameter the (present) component lacks.
 */
bool eval(const Property& p, const ComponentModel& m,
          const Vocabulary* vocab = nullptr);

/// Checks every ground identifier of `p` against `vocab`; throws EvalError.
void resolve(const Property& p, const Vocabulary& vocab);

bool mentions_params(const Property& p);

}  // namespace cp
}  // namespace reconf

#endif  // RECONFCHECK_CP_HPP_
