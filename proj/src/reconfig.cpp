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

#include "reconfcheck/reconfig.hpp"

#include "reconfcheck/errors.hpp"

namespace reconf {

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

bool BinaryExpr::operator==(const BinaryExpr& o) const {
  return op == o.op && *lhs == *o.lhs && *rhs == *o.rhs;
}

bool SetParam::operator==(const SetParam& o) const {
  return component == o.component && param == o.param && *value == *o.value;
}

IntExprPtr make_literal(std::int64_t v) {
  return std::make_shared<const IntExpr>(IntExpr{IntLiteral{v}});
}

IntExprPtr make_param_ref(std::string component, std::string param) {
  return std::make_shared<const IntExpr>(
      IntExpr{ParamRef{std::move(component), std::move(param)}});
}

IntExprPtr make_binary(char op, IntExprPtr lhs, IntExprPtr rhs) {
  return std::make_shared<const IntExpr>(
      IntExpr{BinaryExpr{op, std::move(lhs), std::move(rhs)}});
}

std::optional<std::int64_t> evaluate(const IntExpr& e, const ComponentModel& m) {
  return std::visit(
      overloaded{
          [](const IntLiteral& l) -> std::optional<std::int64_t> {
            return l.value;
          },
          [&](const ParamRef& r) -> std::optional<std::int64_t> {
            const Component* c = m.find(r.component);
            if (!c) return std::nullopt;
            auto it = c->params.find(r.param);
            if (it == c->params.end() || it->second.cls != ParamClass::Int) {
              return std::nullopt;
            }
            return std::get<std::int64_t>(it->second.value);
          },
          [&](const BinaryExpr& b) -> std::optional<std::int64_t> {
            auto l = evaluate(*b.lhs, m);
            auto r = evaluate(*b.rhs, m);
            if (!l || !r) return std::nullopt;
            std::int64_t out = 0;
            bool overflow = false;
            switch (b.op) {
              case '+': overflow = __builtin_add_overflow(*l, *r, &out); break;
              case '-': overflow = __builtin_sub_overflow(*l, *r, &out); break;
              case '*': overflow = __builtin_mul_overflow(*l, *r, &out); break;
              default: return std::nullopt;
            }
            if (overflow) return std::nullopt;
            return out;
          },
      },
      e.v);
}

bool is_topological(const Primitive& p) {
  return std::holds_alternative<AddComponent>(p) ||
         std::holds_alternative<RemoveComponent>(p) ||
         std::holds_alternative<Bind>(p) || std::holds_alternative<Unbind>(p);
}

namespace {

// Each returns the candidate result, or nullopt when the precondition fails.

std::optional<ComponentModel> add_component(const AddComponent& op,
                                            const ComponentModel& m) {
  if (m.has(op.component.id)) return std::nullopt;
  ComponentModel out = m;
  Component c = op.component;
  c.lifecycle = Lifecycle::Stopped;
  if (!op.parent.empty()) {
    Component* parent = out.find(op.parent);
    if (!parent) return std::nullopt;
    parent->contains.insert(c.id);
  }
  out.components.emplace(c.id, std::move(c));
  return out;
}

std::optional<ComponentModel> remove_component(const RemoveComponent& op,
                                               const ComponentModel& m) {
  if (!m.has(op.id)) return std::nullopt;
  ComponentModel out = m;
  // Stopped first; removal then drops every link that touches it.
  out.find(op.id)->lifecycle = Lifecycle::Stopped;
  std::erase_if(out.bindings, [&](const Binding& b) {
    return b.out_component == op.id || b.in_component == op.id;
  });
  std::erase_if(out.delegations, [&](const Delegation& d) {
    return d.composite == op.id || d.inner == op.id;
  });
  for (auto& [id, c] : out.components) c.contains.erase(op.id);
  out.components.erase(op.id);
  return out;
}

std::optional<ComponentModel> bind(const Bind& op, const ComponentModel& m) {
  const Binding& b = op.binding;
  const Component* src = m.find(b.out_component);
  const Component* dst = m.find(b.in_component);
  if (!src || !dst) return std::nullopt;
  auto o = src->outputs.find(b.out_port);
  auto i = dst->inputs.find(b.in_port);
  if (o == src->outputs.end() || i == dst->inputs.end()) return std::nullopt;
  if (o->second != i->second) return std::nullopt;
  for (const auto& existing : m.bindings) {
    if (existing.in_component == b.in_component &&
        existing.in_port == b.in_port) {
      return std::nullopt;
    }
  }
  ComponentModel out = m;
  out.bindings.insert(b);
  return out;
}

std::optional<ComponentModel> unbind(const Unbind& op, const ComponentModel& m) {
  if (!m.bindings.count(op.binding)) return std::nullopt;
  ComponentModel out = m;
  out.bindings.erase(op.binding);
  return out;
}

std::optional<ComponentModel> set_param(const SetParam& op,
                                        const ComponentModel& m) {
  const Component* c = m.find(op.component);
  if (!c) return std::nullopt;
  auto it = c->params.find(op.param);
  if (it == c->params.end() || it->second.cls != ParamClass::Int) {
    return std::nullopt;
  }
  auto value = evaluate(*op.value, m);
  if (!value) return std::nullopt;
  ComponentModel out = m;
  out.find(op.component)->params.at(op.param).value = *value;
  return out;
}

std::optional<ComponentModel> set_lifecycle(const std::string& id,
                                            Lifecycle state,
                                            const ComponentModel& m) {
  if (!m.has(id)) return std::nullopt;
  ComponentModel out = m;
  out.find(id)->lifecycle = state;
  return out;
}

}  // namespace

ApplicationOutcome apply_primitive(const Primitive& op, const ComponentModel& m) {
  std::optional<ComponentModel> candidate = std::visit(
      overloaded{
          [&](const AddComponent& p) { return add_component(p, m); },
          [&](const RemoveComponent& p) { return remove_component(p, m); },
          [&](const Bind& p) { return bind(p, m); },
          [&](const Unbind& p) { return unbind(p, m); },
          [&](const SetParam& p) { return set_param(p, m); },
          [&](const Stop& p) {
            return set_lifecycle(p.id, Lifecycle::Stopped, m);
          },
          [&](const Start& p) {
            return set_lifecycle(p.id, Lifecycle::Started, m);
          },
      },
      op);
  if (!candidate || !validate_model(*candidate).empty()) return {m, false};
  bool changed = !model_equal(*candidate, m);
  return {std::move(*candidate), changed};
}

ApplicationOutcome apply_evolution(const EvolutionOperation& op,
                                   const ComponentModel& m) {
  ComponentModel result = std::visit(
      overloaded{
          [&](const Run&) {
            ComponentModel out = m;
            for (auto& [id, c] : out.components) {
              c.lifecycle = Lifecycle::Started;
            }
            return out;
          },
          [&](const Primitive& p) { return apply_primitive(p, m).result; },
          [&](const Recipe& r) {
            ComponentModel cur = m;
            for (const auto& step : r.steps) {
              cur = apply_primitive(step, cur).result;
            }
            return cur;
          },
      },
      op);
  bool changed = !model_equal(result, m);
  return {std::move(result), changed};
}

ComponentModel apply_sequence(const std::vector<EvolutionOperation>& ops,
                              const ComponentModel& m) {
  ComponentModel cur = m;
  for (const auto& op : ops) cur = apply_evolution(op, cur).result;
  return cur;
}

bool is_idempotent_sequence(const std::vector<EvolutionOperation>& ops,
                            const ComponentModel& m, bool ignore_params) {
  ComponentModel once = apply_sequence(ops, m);
  ComponentModel twice = apply_sequence(ops, once);
  if (ignore_params) {
    return model_equal(erase_param_values(once), erase_param_values(twice));
  }
  return model_equal(once, twice);
}

OperationTable::OperationTable(RecipeSet recipes) : recipes_(std::move(recipes)) {
  ops_.emplace(kRunLabel, Run{});
  for (const auto& [name, r] : recipes_) {
    if (name == kRunLabel) {
      throw ResolutionError("'run' is reserved and cannot name a recipe");
    }
    ops_.emplace(name, r);
  }
}

bool OperationTable::contains(const std::string& name) const {
  return name == kRunLabel || ops_.count(name) != 0;
}

const EvolutionOperation& OperationTable::resolve(const std::string& name) const {
  static const EvolutionOperation kRun = Run{};
  if (name == kRunLabel) return kRun;
  auto it = ops_.find(name);
  if (it == ops_.end()) throw ResolutionError("unknown operation '" + name + "'");
  return it->second;
}

}  // namespace reconf
