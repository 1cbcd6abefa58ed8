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

#ifndef RECONFCHECK_MODEL_HPP_
#define RECONFCHECK_MODEL_HPP_

#include <compare>
#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace reconf {

/**
 * Parameter values are restricted to three classes. Class names of ports and
 * components are free-form strings compared by equality only.
 */
enum class ParamClass { Int, String, Bool };

using Value = std::variant<std::int64_t, std::string, bool>;

ParamClass class_of(const Value& v);
const char* to_string(ParamClass cls);
std::string to_string(const Value& v);

struct Param {
  ParamClass cls = ParamClass::Int;
  Value value = std::int64_t{0};

  bool operator==(const Param&) const = default;
};

enum class Lifecycle { Started, Stopped };

struct Component {
  std::string id;
  std::string cls;
  std::map<std::string, Param> params;
  std::map<std::string, std::string> inputs;   // port -> class
  std::map<std::string, std::string> outputs;  // port -> class
  std::set<std::string> contains;
  Lifecycle lifecycle = Lifecycle::Started;

  bool is_composite() const { return !contains.empty(); }

  bool operator==(const Component&) const = default;
};

/// Output endpoint first, input endpoint second.
struct Binding {
  std::string out_component;
  std::string out_port;
  std::string in_component;
  std::string in_port;

  auto operator<=>(const Binding&) const = default;
};

struct Delegation {
  std::string composite;
  std::string composite_port;
  std::string inner;
  std::string inner_port;

  auto operator<=>(const Delegation&) const = default;
};

/// One configuration of the architecture.
struct ComponentModel {
  std::string name;
  std::map<std::string, Component> components;
  std::set<Binding> bindings;
  std::set<Delegation> delegations;

  const Component* find(const std::string& id) const;
  Component* find(const std::string& id);
  bool has(const std::string& id) const { return components.count(id) != 0; }

  /// The composite containing `id`, or empty.
  std::string parent_of(const std::string& id) const;

  bool operator==(const ComponentModel&) const = default;
};

/// Returns one human-readable line per broken structural invariant.
std::vector<std::string> validate_model(const ComponentModel& m);

/// Structural identity. Containers are ordered, so member order never matters.
bool model_equal(const ComponentModel& a, const ComponentModel& b);

/// Copy of `m` with every parameter value reset to its class default.
ComponentModel erase_param_values(const ComponentModel& m);

}  // namespace reconf

#endif  // RECONFCHECK_MODEL_HPP_
