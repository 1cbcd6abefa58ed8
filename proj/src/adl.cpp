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

#include "reconfcheck/adl.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <tuple>

#include "lexer.hpp"
#include "reconfcheck/errors.hpp"

namespace reconf::adl {

using detail::Token;
using detail::TokenKind;
using detail::TokenStream;

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

TokenStream open(std::string_view text) {
  return TokenStream(detail::tokenize(text, detail::kSlashComments));
}

ParamClass parse_param_class(TokenStream& ts) {
  if (ts.accept_keyword("int")) return ParamClass::Int;
  if (ts.accept_keyword("string")) return ParamClass::String;
  if (ts.accept_keyword("bool")) return ParamClass::Bool;
  ts.fail("expected int, string or bool");
}

Value parse_literal(TokenStream& ts, ParamClass cls) {
  const Token& tok = ts.peek();
  switch (cls) {
    case ParamClass::Int:
      return ts.expect_int(true);
    case ParamClass::String:
      if (tok.kind != TokenKind::String) ts.fail("expected string literal");
      return ts.next().text;
    case ParamClass::Bool:
      if (ts.accept_keyword("true")) return true;
      if (ts.accept_keyword("false")) return false;
      ts.fail("expected true or false");
  }
  ts.fail("bad literal");
}

// `allow_state` is false inside recipe `add` steps.
Component parse_component(TokenStream& ts, bool allow_state) {
  Component c;
  if (!ts.accept_keyword("component") && !ts.accept_keyword("composite")) {
    ts.fail("expected 'component' or 'composite'");
  }
  const Token& id_tok = ts.peek();
  c.id = ts.expect_ident("component id");
  c.lifecycle = allow_state ? Lifecycle::Started : Lifecycle::Stopped;
  bool have_class = false, have_state = false;
  ts.expect_punct("{");
  while (!ts.accept_punct("}")) {
    const Token& kw = ts.peek();
    auto port_or_param_name = [&](const std::string& name) {
      if (c.inputs.count(name) || c.outputs.count(name) ||
          c.params.count(name)) {
        ts.fail_at(kw, "component " + c.id + ": '" + name +
                           "' declared twice");
      }
    };
    if (ts.accept_keyword("class")) {
      if (have_class) ts.fail_at(kw, "component " + c.id + ": class given twice");
      c.cls = ts.expect_ident("class name");
      have_class = true;
    } else if (ts.accept_keyword("input") || ts.accept_keyword("output")) {
      bool input = kw.text == "input";
      std::string name = ts.expect_ident("port name");
      port_or_param_name(name);
      ts.expect_punct(":");
      std::string cls = ts.expect_ident("port class");
      (input ? c.inputs : c.outputs).emplace(name, cls);
    } else if (ts.accept_keyword("param")) {
      std::string name = ts.expect_ident("parameter name");
      port_or_param_name(name);
      ts.expect_punct(":");
      Param p;
      p.cls = parse_param_class(ts);
      ts.expect_punct("=");
      p.value = parse_literal(ts, p.cls);
      c.params.emplace(name, std::move(p));
    } else if (ts.accept_keyword("contains")) {
      const Token& child = ts.peek();
      if (!c.contains.insert(ts.expect_ident("component id")).second) {
        ts.fail_at(child, "component " + c.id + ": duplicate contains");
      }
    } else if (ts.accept_keyword("state")) {
      if (!allow_state) {
        ts.fail_at(kw, "added components always start stopped; 'state' not allowed");
      }
      if (have_state) ts.fail_at(kw, "component " + c.id + ": state given twice");
      have_state = true;
      if (ts.accept_keyword("started")) {
        c.lifecycle = Lifecycle::Started;
      } else if (ts.accept_keyword("stopped")) {
        c.lifecycle = Lifecycle::Stopped;
      } else {
        ts.fail("expected 'started' or 'stopped'");
      }
    } else {
      ts.fail("unexpected " + detail::describe(kw) + " in component body");
    }
  }
  if (!have_class) ts.fail_at(id_tok, "component " + c.id + " has no class");
  return c;
}

std::pair<std::string, std::string> parse_endpoint(TokenStream& ts) {
  std::string comp = ts.expect_ident("component id");
  ts.expect_punct(".");
  std::string port = ts.expect_ident("port name");
  return {comp, port};
}

Binding parse_binding_tail(TokenStream& ts) {
  auto [oc, op] = parse_endpoint(ts);
  ts.expect_punct("->");
  auto [ic, ip] = parse_endpoint(ts);
  return Binding{oc, op, ic, ip};
}

IntExprPtr parse_int_expr(TokenStream& ts);

IntExprPtr parse_factor(TokenStream& ts) {
  if (ts.accept_punct("(")) {
    IntExprPtr e = parse_int_expr(ts);
    ts.expect_punct(")");
    return e;
  }
  if (ts.accept_keyword("param")) {
    ts.expect_punct("(");
    auto [comp, param] = parse_endpoint(ts);
    ts.expect_punct(")");
    return make_param_ref(comp, param);
  }
  return make_literal(ts.expect_int(true));
}

IntExprPtr parse_term(TokenStream& ts) {
  IntExprPtr lhs = parse_factor(ts);
  while (ts.accept_punct("*")) lhs = make_binary('*', lhs, parse_factor(ts));
  return lhs;
}

IntExprPtr parse_int_expr(TokenStream& ts) {
  IntExprPtr lhs = parse_term(ts);
  for (;;) {
    if (ts.accept_punct("+")) {
      lhs = make_binary('+', lhs, parse_term(ts));
    } else if (ts.accept_punct("-")) {
      lhs = make_binary('-', lhs, parse_term(ts));
    } else {
      return lhs;
    }
  }
}

Primitive parse_step(TokenStream& ts) {
  const Token& kw = ts.peek();
  if (ts.accept_keyword("add")) {
    AddComponent a;
    a.component = parse_component(ts, false);
    if (ts.accept_keyword("in")) a.parent = ts.expect_ident("component id");
    return a;
  }
  if (ts.accept_keyword("remove")) {
    ts.expect_keyword("component");
    return RemoveComponent{ts.expect_ident("component id")};
  }
  if (ts.accept_keyword("bind")) return Bind{parse_binding_tail(ts)};
  if (ts.accept_keyword("unbind")) return Unbind{parse_binding_tail(ts)};
  if (ts.accept_keyword("set")) {
    SetParam s;
    std::tie(s.component, s.param) = parse_endpoint(ts);
    ts.expect_punct(":=");
    s.value = parse_int_expr(ts);
    return s;
  }
  if (ts.accept_keyword("stop")) return Stop{ts.expect_ident("component id")};
  if (ts.accept_keyword("start")) return Start{ts.expect_ident("component id")};
  ts.fail("expected a step but found " + detail::describe(kw));
}

void print_component(const Component& c, const std::string& indent,
                     bool with_state, std::string& out) {
  out += indent + (c.is_composite() ? "composite " : "component ") + c.id +
         " {\n";
  std::string in = indent + "  ";
  out += in + "class " + c.cls + "\n";
  for (const auto& [name, cls] : c.inputs) {
    out += in + "input " + name + " : " + cls + "\n";
  }
  for (const auto& [name, cls] : c.outputs) {
    out += in + "output " + name + " : " + cls + "\n";
  }
  for (const auto& [name, p] : c.params) {
    out += in + "param " + name + " : " + to_string(p.cls) + " = " +
           to_string(p.value) + "\n";
  }
  for (const auto& child : c.contains) out += in + "contains " + child + "\n";
  if (with_state) {
    out += in + "state " +
           (c.lifecycle == Lifecycle::Started ? "started" : "stopped") + "\n";
  }
  out += indent + "}";
}

std::string print_binding(const Binding& b) {
  return b.out_component + "." + b.out_port + " -> " + b.in_component + "." +
         b.in_port;
}

void print_expr(const IntExpr& e, bool top, std::string& out) {
  std::visit(overloaded{
                 [&](const IntLiteral& l) { out += std::to_string(l.value); },
                 [&](const ParamRef& r) {
                   out += "param(" + r.component + "." + r.param + ")";
                 },
                 [&](const BinaryExpr& b) {
                   if (!top) out += '(';
                   print_expr(*b.lhs, false, out);
                   out += ' ';
                   out += b.op;
                   out += ' ';
                   print_expr(*b.rhs, false, out);
                   if (!top) out += ')';
                 },
             },
             e.v);
}

}  // namespace

ComponentModel parse_model_unchecked(std::string_view text) {
  TokenStream ts = open(text);
  ComponentModel m;
  ts.expect_keyword("model");
  m.name = ts.expect_ident("model name");
  ts.expect_punct("{");
  while (!ts.accept_punct("}")) {
    const Token& kw = ts.peek();
    if (ts.is_keyword("component") || ts.is_keyword("composite")) {
      Component c = parse_component(ts, true);
      std::string id = c.id;
      if (!m.components.emplace(id, std::move(c)).second) {
        ts.fail_at(kw, "duplicate component '" + id + "'");
      }
    } else if (ts.accept_keyword("bind")) {
      if (!m.bindings.insert(parse_binding_tail(ts)).second) {
        ts.fail_at(kw, "duplicate binding");
      }
    } else if (ts.accept_keyword("delegate")) {
      Binding b = parse_binding_tail(ts);
      Delegation d{b.out_component, b.out_port, b.in_component, b.in_port};
      if (!m.delegations.insert(d).second) {
        ts.fail_at(kw, "duplicate delegation");
      }
    } else {
      ts.fail("expected component, bind or delegate but found " +
              detail::describe(kw));
    }
  }
  if (!ts.at_end()) ts.fail("trailing input after model");
  return m;
}

ComponentModel parse_model(std::string_view text) {
  ComponentModel m = parse_model_unchecked(text);
  auto violations = validate_model(m);
  if (!violations.empty()) throw InvalidModel(std::move(violations));
  return m;
}

std::string print_model(const ComponentModel& m) {
  std::string out = "model " + m.name + " {\n";
  for (const auto& [id, c] : m.components) {
    print_component(c, "  ", true, out);
    out += '\n';
  }
  for (const auto& b : m.bindings) out += "  bind " + print_binding(b) + "\n";
  for (const auto& d : m.delegations) {
    out += "  delegate " + d.composite + "." + d.composite_port + " -> " +
           d.inner + "." + d.inner_port + "\n";
  }
  out += "}\n";
  return out;
}

RecipeSet parse_recipes(std::string_view text) {
  TokenStream ts = open(text);
  RecipeSet out;
  while (!ts.at_end()) {
    ts.expect_keyword("op");
    const Token& name_tok = ts.peek();
    Recipe r;
    r.name = ts.expect_ident("operation name");
    if (r.name == kRunLabel) ts.fail_at(name_tok, "'run' is reserved");
    ts.expect_punct("{");
    while (!ts.accept_punct("}")) r.steps.push_back(parse_step(ts));
    if (r.steps.empty()) ts.fail_at(name_tok, "operation " + r.name + " has no steps");
    std::string name = r.name;
    if (!out.emplace(name, std::move(r)).second) {
      ts.fail_at(name_tok, "duplicate operation '" + name + "'");
    }
  }
  return out;
}

std::string print_int_expr(const IntExpr& e) {
  std::string out;
  print_expr(e, true, out);
  return out;
}

std::string print_primitive(const Primitive& p) {
  return std::visit(
      overloaded{
          [](const AddComponent& a) {
            std::string out = "add ";
            print_component(a.component, "", false, out);
            if (!a.parent.empty()) out += " in " + a.parent;
            return out;
          },
          [](const RemoveComponent& r) { return "remove component " + r.id; },
          [](const Bind& b) { return "bind " + print_binding(b.binding); },
          [](const Unbind& b) { return "unbind " + print_binding(b.binding); },
          [](const SetParam& s) {
            return "set " + s.component + "." + s.param +
                   " := " + print_int_expr(*s.value);
          },
          [](const Stop& s) { return "stop " + s.id; },
          [](const Start& s) { return "start " + s.id; },
      },
      p);
}

std::string print_recipes(const RecipeSet& recipes) {
  std::string out;
  bool first = true;
  for (const auto& [name, r] : recipes) {
    if (!first) out += '\n';
    first = false;
    out += "op " + name + " {\n";
    for (const auto& step : r.steps) {
      std::string text = print_primitive(step);
      std::string indented = "  ";
      for (char ch : text) {
        indented += ch;
        if (ch == '\n') indented += "  ";
      }
      out += indented + "\n";
    }
    out += "}\n";
  }
  return out;
}

std::string model_digest(const ComponentModel& m) {
  std::string text = print_model(m);
  unsigned char md[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(text.data(), text.size(), md, &len, EVP_sha256(), nullptr);
  std::string hex;
  char buf[3];
  for (unsigned int i = 0; i < 8 && i < len; ++i) {
    std::snprintf(buf, sizeof buf, "%02x", md[i]);
    hex += buf;
  }
  return hex;
}

}  // namespace reconf::adl
