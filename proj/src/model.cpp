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

#include "reconfcheck/model.hpp"

#include <sstream>

namespace reconf {

ParamClass class_of(const Value& v) {
  switch (v.index()) {
    case 0: return ParamClass::Int;
    case 1: return ParamClass::String;
    default: return ParamClass::Bool;
  }
}

const char* to_string(ParamClass cls) {
  switch (cls) {
    case ParamClass::Int: return "int";
    case ParamClass::String: return "string";
    case ParamClass::Bool: return "bool";
  }
  return "?";
}

std::string to_string(const Value& v) {
  if (auto i = std::get_if<std::int64_t>(&v)) return std::to_string(*i);
  if (auto b = std::get_if<bool>(&v)) return *b ? "true" : "false";
  std::string out = "\"";
  for (char c : std::get<std::string>(v)) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\t': out += "\\t"; break;
      default: out += c;
    }
  }
  out += '"';
  return out;
}

const Component* ComponentModel::find(const std::string& id) const {
  auto it = components.find(id);
  return it == components.end() ? nullptr : &it->second;
}

Component* ComponentModel::find(const std::string& id) {
  auto it = components.find(id);
  return it == components.end() ? nullptr : &it->second;
}

std::string ComponentModel::parent_of(const std::string& id) const {
  for (const auto& [pid, c] : components) {
    if (c.contains.count(id)) return pid;
  }
  return {};
}

namespace {

std::string endpoint(const std::string& c, const std::string& p) {
  return c + "." + p;
}

std::string describe(const Binding& b) {
  return "binding " + endpoint(b.out_component, b.out_port) + " -> " +
         endpoint(b.in_component, b.in_port);
}

std::string describe(const Delegation& d) {
  return "delegation " + endpoint(d.composite, d.composite_port) + " -> " +
         endpoint(d.inner, d.inner_port);
}

// Port class and direction (true = input) if the port exists.
bool lookup_port(const Component& c, const std::string& port, std::string& cls,
                 bool& is_input) {
  if (auto it = c.inputs.find(port); it != c.inputs.end()) {
    cls = it->second;
    is_input = true;
    return true;
  }
  if (auto it = c.outputs.find(port); it != c.outputs.end()) {
    cls = it->second;
    is_input = false;
    return true;
  }
  return false;
}

void check_component(const Component& c, std::vector<std::string>& out) {
  if (c.cls.empty()) out.push_back("component " + c.id + ": missing class");
  for (const auto& [name, p] : c.params) {
    if (c.inputs.count(name) || c.outputs.count(name)) {
      out.push_back("component " + c.id + ": name '" + name +
                    "' used for both a parameter and a port");
    }
    if (class_of(p.value) != p.cls) {
      out.push_back("component " + c.id + ": parameter '" + name +
                    "' value does not match its class " + to_string(p.cls));
    }
  }
  for (const auto& [name, cls] : c.inputs) {
    if (c.outputs.count(name)) {
      out.push_back("component " + c.id + ": port '" + name +
                    "' is both an input and an output");
    }
  }
  if (c.is_composite() && !c.params.empty()) {
    out.push_back("component " + c.id + ": composite has parameters");
  }
}

}  // namespace

std::vector<std::string> validate_model(const ComponentModel& m) {
  std::vector<std::string> out;
  std::map<std::string, std::string> parent;

  for (const auto& [id, c] : m.components) {
    if (id != c.id) {
      out.push_back("component " + id + ": stored under a different id '" +
                    c.id + "'");
    }
    check_component(c, out);
    for (const auto& child : c.contains) {
      if (!m.has(child)) {
        out.push_back("component " + id + ": contains unknown component " +
                      child);
        continue;
      }
      auto [it, fresh] = parent.emplace(child, id);
      if (!fresh) {
        out.push_back("component " + child + ": has two parents (" +
                      it->second + ", " + id + ")");
      }
    }
  }

  // With at most one parent each, a cycle shows up as a parent chain that
  // revisits a node.
  for (const auto& [id, c] : m.components) {
    std::set<std::string> seen{id};
    for (auto it = parent.find(id); it != parent.end();
         it = parent.find(it->second)) {
      if (!seen.insert(it->second).second) {
        out.push_back("component " + id +
                      ": subcomponent relation has a cycle");
        break;
      }
    }
  }

  std::set<std::pair<std::string, std::string>> bound_inputs;
  for (const auto& b : m.bindings) {
    const Component* src = m.find(b.out_component);
    const Component* dst = m.find(b.in_component);
    if (!src || !dst) {
      out.push_back(describe(b) + ": unknown component");
      continue;
    }
    auto o = src->outputs.find(b.out_port);
    auto i = dst->inputs.find(b.in_port);
    if (o == src->outputs.end()) {
      out.push_back(describe(b) + ": " + b.out_port + " is not an output of " +
                    b.out_component);
    }
    if (i == dst->inputs.end()) {
      out.push_back(describe(b) + ": " + b.in_port + " is not an input of " +
                    b.in_component);
    }
    if (o != src->outputs.end() && i != dst->inputs.end() &&
        o->second != i->second) {
      out.push_back(describe(b) + ": port classes differ (" + o->second +
                    " vs " + i->second + ")");
    }
    if (!bound_inputs.emplace(b.in_component, b.in_port).second) {
      out.push_back(describe(b) + ": input endpoint already bound");
    }
  }

  for (const auto& d : m.delegations) {
    const Component* comp = m.find(d.composite);
    const Component* inner = m.find(d.inner);
    if (!comp || !inner) {
      out.push_back(describe(d) + ": unknown component");
      continue;
    }
    if (!comp->contains.count(d.inner)) {
      out.push_back(describe(d) + ": " + d.inner + " is not contained in " +
                    d.composite);
    }
    std::string cls_outer, cls_inner;
    bool in_outer = false, in_inner = false;
    bool has_outer = lookup_port(*comp, d.composite_port, cls_outer, in_outer);
    bool has_inner = lookup_port(*inner, d.inner_port, cls_inner, in_inner);
    if (!has_outer || !has_inner) {
      out.push_back(describe(d) + ": unknown port");
    } else if (cls_outer != cls_inner || in_outer != in_inner) {
      out.push_back(describe(d) + ": ports differ in class or direction");
    }
  }
  return out;
}

bool model_equal(const ComponentModel& a, const ComponentModel& b) {
  return a == b;
}

ComponentModel erase_param_values(const ComponentModel& m) {
  ComponentModel out = m;
  for (auto& [id, c] : out.components) {
    for (auto& [name, p] : c.params) {
      switch (p.cls) {
        case ParamClass::Int: p.value = std::int64_t{0}; break;
        case ParamClass::String: p.value = std::string{}; break;
        case ParamClass::Bool: p.value = false; break;
      }
    }
  }
  return out;
}

}  // namespace reconf
