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

#include "reconfcheck/cp.hpp"

#include <vector>

#include "lexer.hpp"
#include "reconfcheck/errors.hpp"

namespace reconf::cp {

using detail::TokenKind;
using detail::TokenStream;

const char* to_string(RelOp op) {
  switch (op) {
    case RelOp::Lt: return "<";
    case RelOp::Le: return "<=";
    case RelOp::Eq: return "=";
    case RelOp::Ne: return "!=";
    case RelOp::Ge: return ">=";
    case RelOp::Gt: return ">";
  }
  return "?";
}

bool Not::operator==(const Not& o) const { return *arg == *o.arg; }
bool And::operator==(const And& o) const {
  return *lhs == *o.lhs && *rhs == *o.rhs;
}
bool Or::operator==(const Or& o) const {
  return *lhs == *o.lhs && *rhs == *o.rhs;
}
bool Implies::operator==(const Implies& o) const {
  return *lhs == *o.lhs && *rhs == *o.rhs;
}
bool Quant::operator==(const Quant& o) const {
  return kind == o.kind && var == o.var && domain == o.domain &&
         *body == *o.body;
}

Property::Property() : root_(std::make_shared<const Node>(Node{TrueAtom{}})) {}

// ---------------------------------------------------------------------------
// Parsing

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

NodePtr node(auto n) { return std::make_shared<const Node>(Node{std::move(n)}); }

class Parser {
 public:
  explicit Parser(TokenStream& ts) : ts_(ts) {}

  NodePtr parse_implies() {
    NodePtr lhs = parse_or();
    if (ts_.accept_punct("=>")) return node(Implies{lhs, parse_implies()});
    return lhs;
  }

 private:
  NodePtr parse_or() {
    NodePtr lhs = parse_and();
    while (ts_.accept_keyword("or")) lhs = node(Or{lhs, parse_and()});
    return lhs;
  }

  NodePtr parse_and() {
    NodePtr lhs = parse_unary();
    while (ts_.accept_keyword("and")) lhs = node(And{lhs, parse_unary()});
    return lhs;
  }

  NodePtr parse_unary() {
    if (ts_.accept_keyword("not")) return node(Not{parse_unary()});
    if (ts_.accept_punct("(")) {
      NodePtr inner = parse_implies();
      ts_.expect_punct(")");
      return inner;
    }
    if (ts_.is_keyword("forall") || ts_.is_keyword("exists")) {
      return parse_quant();
    }
    return parse_atom();
  }

  NodePtr parse_quant() {
    Quant q;
    q.kind = ts_.next().text == "forall" ? Quantifier::Forall
                                         : Quantifier::Exists;
    q.var = ts_.expect_ident("variable name");
    ts_.expect_keyword("in");
    if (ts_.accept_keyword("components")) {
      q.domain = Domain::Components;
    } else if (ts_.accept_keyword("bindings")) {
      q.domain = Domain::Bindings;
    } else {
      ts_.fail("expected 'components' or 'bindings'");
    }
    ts_.expect_punct(":");
    scope_.emplace_back(q.var, q.domain);
    q.body = parse_implies();
    scope_.pop_back();
    return node(std::move(q));
  }

  const Domain* lookup(const std::string& name) const {
    for (auto it = scope_.rbegin(); it != scope_.rend(); ++it) {
      if (it->first == name) return &it->second;
    }
    return nullptr;
  }

  CompRef parse_comp_ref() {
    const auto& tok = ts_.peek();
    std::string name = ts_.expect_ident("component");
    const Domain* d = lookup(name);
    if (d && *d != Domain::Components) {
      ts_.fail_at(tok, "binding variable '" + name + "' used as a component");
    }
    return CompRef{name, d != nullptr};
  }

  std::string parse_var(bool bindings_only) {
    const auto& tok = ts_.peek();
    std::string name = ts_.expect_ident("variable");
    const Domain* d = lookup(name);
    if (!d) ts_.fail_at(tok, "unbound variable '" + name + "'");
    if (bindings_only && *d != Domain::Bindings) {
      ts_.fail_at(tok, "'" + name + "' is not a binding variable");
    }
    return name;
  }

  RelOp parse_relop() {
    static const std::pair<const char*, RelOp> kOps[] = {
        {"<=", RelOp::Le}, {">=", RelOp::Ge}, {"!=", RelOp::Ne},
        {"<", RelOp::Lt},  {">", RelOp::Gt},  {"=", RelOp::Eq}};
    for (auto [text, op] : kOps) {
      if (ts_.accept_punct(text)) return op;
    }
    ts_.fail("expected comparison operator");
  }

  Value parse_literal() {
    const auto& tok = ts_.peek();
    if (tok.kind == TokenKind::String) return ts_.next().text;
    if (ts_.accept_keyword("true")) return true;
    if (ts_.accept_keyword("false")) return false;
    return ts_.expect_int(true);
  }

  NodePtr parse_atom() {
    const auto& tok = ts_.peek();
    if (tok.kind != TokenKind::Ident) {
      ts_.fail("expected property but found " + detail::describe(tok));
    }
    std::string kw = ts_.next().text;
    if (kw == "true") return node(TrueAtom{});
    if (kw == "false") return node(FalseAtom{});

    ts_.expect_punct("(");
    NodePtr out;
    if (kw == "component" || kw == "started") {
      CompRef c = parse_comp_ref();
      ts_.expect_punct(")");
      out = kw == "component" ? node(ComponentPresent{c}) : node(Started{c});
    } else if (kw == "bound") {
      Bound b;
      b.out_component = parse_comp_ref();
      ts_.expect_punct(".");
      b.out_port = ts_.expect_ident("port");
      ts_.expect_punct(",");
      b.in_component = parse_comp_ref();
      ts_.expect_punct(".");
      b.in_port = ts_.expect_ident("port");
      ts_.expect_punct(")");
      out = node(std::move(b));
    } else if (kw == "sub") {
      Subcomponent s;
      s.child = parse_comp_ref();
      ts_.expect_punct(",");
      s.parent = parse_comp_ref();
      ts_.expect_punct(")");
      out = node(std::move(s));
    } else if (kw == "param") {
      ParamCmp p;
      p.component = parse_comp_ref();
      ts_.expect_punct(".");
      p.param = ts_.expect_ident("parameter");
      ts_.expect_punct(")");
      const auto& op_tok = ts_.peek();
      p.op = parse_relop();
      p.literal = parse_literal();
      if (class_of(p.literal) == ParamClass::Bool && p.op != RelOp::Eq &&
          p.op != RelOp::Ne) {
        ts_.fail_at(op_tok, "booleans only support = and !=");
      }
      out = node(std::move(p));
    } else if (kw == "class") {
      ClassIs c;
      c.var = parse_var(false);
      ts_.expect_punct(")");
      ts_.expect_punct("=");
      c.cls = ts_.expect_ident("class name");
      out = node(std::move(c));
    } else if (kw == "present") {
      VarPresent v{parse_var(false)};
      ts_.expect_punct(")");
      out = node(std::move(v));
    } else if (kw == "from" || kw == "to") {
      EndpointIs e;
      e.var = parse_var(true);
      e.end = kw == "from" ? BindingEnd::From : BindingEnd::To;
      ts_.expect_punct(")");
      ts_.expect_punct("=");
      e.component = parse_comp_ref();
      out = node(std::move(e));
    } else {
      ts_.fail_at(tok, "unknown property atom '" + kw + "'");
    }
    return out;
  }

  TokenStream& ts_;
  std::vector<std::pair<std::string, Domain>> scope_;
};

}  // namespace

Property parse(TokenStream& ts) { return Property(Parser(ts).parse_implies()); }

Property parse(std::string_view text) {
  TokenStream ts(detail::tokenize(text, detail::kSlashComments));
  Property p = parse(ts);
  if (!ts.at_end()) ts.fail("unexpected " + detail::describe(ts.peek()));
  return p;
}

// ---------------------------------------------------------------------------
// Printing

namespace {

void print_node(const Node& n, std::string& out) {
  auto binary = [&](const NodePtr& l, const char* op, const NodePtr& r) {
    out += '(';
    print_node(*l, out);
    out += ' ';
    out += op;
    out += ' ';
    print_node(*r, out);
    out += ')';
  };
  std::visit(
      overloaded{
          [&](const TrueAtom&) { out += "true"; },
          [&](const FalseAtom&) { out += "false"; },
          [&](const ComponentPresent& a) {
            out += "component(" + a.component.name + ")";
          },
          [&](const Started& a) { out += "started(" + a.component.name + ")"; },
          [&](const Bound& a) {
            out += "bound(" + a.out_component.name + "." + a.out_port + ", " +
                   a.in_component.name + "." + a.in_port + ")";
          },
          [&](const Subcomponent& a) {
            out += "sub(" + a.child.name + ", " + a.parent.name + ")";
          },
          [&](const ParamCmp& a) {
            out += "param(" + a.component.name + "." + a.param + ") " +
                   to_string(a.op) + " " + reconf::to_string(a.literal);
          },
          [&](const ClassIs& a) { out += "class(" + a.var + ") = " + a.cls; },
          [&](const VarPresent& a) { out += "present(" + a.var + ")"; },
          [&](const EndpointIs& a) {
            out += (a.end == BindingEnd::From ? "from(" : "to(") + a.var +
                   ") = " + a.component.name;
          },
          [&](const Not& a) {
            out += "not ";
            print_node(*a.arg, out);
          },
          [&](const And& a) { binary(a.lhs, "and", a.rhs); },
          [&](const Or& a) { binary(a.lhs, "or", a.rhs); },
          [&](const Implies& a) { binary(a.lhs, "=>", a.rhs); },
          [&](const Quant& a) {
            out += a.kind == Quantifier::Forall ? "(forall " : "(exists ";
            out += a.var;
            out += a.domain == Domain::Components ? " in components: "
                                                  : " in bindings: ";
            print_node(*a.body, out);
            out += ')';
          },
      },
      n.v);
}

}  // namespace

std::string print(const Property& p) {
  std::string out;
  print_node(p.root(), out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

void Vocabulary::add(const Component& c) {
  auto& params = components[c.id];
  for (const auto& [name, p] : c.params) params.emplace(name, p.cls);
}

void Vocabulary::add(const ComponentModel& m) {
  for (const auto& [id, c] : m.components) add(c);
}

namespace {

using Binder = std::variant<std::string, Binding>;

struct Env {
  std::vector<std::pair<std::string, Binder>> frames;

  const Binder& get(const std::string& var) const {
    for (auto it = frames.rbegin(); it != frames.rend(); ++it) {
      if (it->first == var) return it->second;
    }
    throw EvalError("unbound variable '" + var + "'");
  }
};

template <class T>
bool compare(const T& a, RelOp op, const T& b) {
  switch (op) {
    case RelOp::Lt: return a < b;
    case RelOp::Le: return a <= b;
    case RelOp::Eq: return a == b;
    case RelOp::Ne: return a != b;
    case RelOp::Ge: return a >= b;
    case RelOp::Gt: return a > b;
  }
  return false;
}

class Evaluator {
 public:
  Evaluator(const ComponentModel& m, const Vocabulary* vocab)
      : m_(m), vocab_(vocab) {}

  bool eval(const Node& n) {
    return std::visit(
        overloaded{
            [&](const TrueAtom&) { return true; },
            [&](const FalseAtom&) { return false; },
            [&](const ComponentPresent& a) {
              return m_.has(component(a.component));
            },
            [&](const Started& a) {
              const Component* c = m_.find(component(a.component));
              return c && c->lifecycle == Lifecycle::Started;
            },
            [&](const Bound& a) {
              Binding b{component(a.out_component), a.out_port,
                        component(a.in_component), a.in_port};
              return m_.bindings.count(b) != 0;
            },
            [&](const Subcomponent& a) {
              std::string child = component(a.child);
              const Component* p = m_.find(component(a.parent));
              return p && p->contains.count(child) != 0;
            },
            [&](const ParamCmp& a) { return param_cmp(a); },
            [&](const ClassIs& a) {
              const Binder& b = env_.get(a.var);
              if (auto id = std::get_if<std::string>(&b)) {
                const Component* c = m_.find(*id);
                return c && c->cls == a.cls;
              }
              const Binding& bd = std::get<Binding>(b);
              const Component* c = m_.find(bd.out_component);
              if (!c) return false;
              auto it = c->outputs.find(bd.out_port);
              return it != c->outputs.end() && it->second == a.cls;
            },
            [&](const VarPresent& a) {
              const Binder& b = env_.get(a.var);
              if (auto id = std::get_if<std::string>(&b)) return m_.has(*id);
              return m_.bindings.count(std::get<Binding>(b)) != 0;
            },
            [&](const EndpointIs& a) {
              const auto* bd = std::get_if<Binding>(&env_.get(a.var));
              if (!bd) throw EvalError("'" + a.var + "' is not a binding");
              const std::string& end = a.end == BindingEnd::From
                                           ? bd->out_component
                                           : bd->in_component;
              return end == component(a.component);
            },
            [&](const Not& a) { return !eval(*a.arg); },
            [&](const And& a) { return eval(*a.lhs) && eval(*a.rhs); },
            [&](const Or& a) { return eval(*a.lhs) || eval(*a.rhs); },
            [&](const Implies& a) { return !eval(*a.lhs) || eval(*a.rhs); },
            [&](const Quant& a) { return quant(a); },
        },
        n.v);
  }

 private:
  std::string component(const CompRef& r) {
    if (r.is_var) {
      const auto* id = std::get_if<std::string>(&env_.get(r.name));
      if (!id) throw EvalError("'" + r.name + "' is not a component variable");
      return *id;
    }
    if (vocab_ && !vocab_->components.count(r.name)) {
      throw EvalError("unknown component '" + r.name + "'");
    }
    return r.name;
  }

  bool param_cmp(const ParamCmp& a) {
    const Component* c = m_.find(component(a.component));
    if (!c) return false;
    auto it = c->params.find(a.param);
    if (it == c->params.end()) {
      if (a.component.is_var) return false;
      throw EvalError("component " + c->id + " has no parameter '" + a.param +
                      "'");
    }
    const Param& p = it->second;
    if (p.cls != class_of(a.literal)) {
      throw EvalError("parameter " + c->id + "." + a.param + " is " +
                      to_string(p.cls) + ", compared with a " +
                      to_string(class_of(a.literal)) + " literal");
    }
    switch (p.cls) {
      case ParamClass::Int:
        return compare(std::get<std::int64_t>(p.value), a.op,
                       std::get<std::int64_t>(a.literal));
      case ParamClass::String:
        return compare(std::get<std::string>(p.value), a.op,
                       std::get<std::string>(a.literal));
      case ParamClass::Bool:
        return compare(std::get<bool>(p.value), a.op, std::get<bool>(a.literal));
    }
    return false;
  }

  bool quant(const Quant& q) {
    bool forall = q.kind == Quantifier::Forall;
    auto visit_one = [&](Binder value) {
      env_.frames.emplace_back(q.var, std::move(value));
      bool r = eval(*q.body);
      env_.frames.pop_back();
      return r;
    };
    if (q.domain == Domain::Components) {
      for (const auto& [id, c] : m_.components) {
        if (visit_one(id) != forall) return !forall;
      }
    } else {
      for (const auto& b : m_.bindings) {
        if (visit_one(b) != forall) return !forall;
      }
    }
    return forall;
  }

  const ComponentModel& m_;
  const Vocabulary* vocab_;
  Env env_;
};

void resolve_node(const Node& n, const Vocabulary& vocab) {
  auto ground = [&](const CompRef& r) {
    if (!r.is_var && !vocab.components.count(r.name)) {
      throw EvalError("unknown component '" + r.name + "'");
    }
  };
  std::visit(
      overloaded{
          [&](const ComponentPresent& a) { ground(a.component); },
          [&](const Started& a) { ground(a.component); },
          [&](const Bound& a) {
            ground(a.out_component);
            ground(a.in_component);
          },
          [&](const Subcomponent& a) {
            ground(a.child);
            ground(a.parent);
          },
          [&](const ParamCmp& a) {
            ground(a.component);
            if (a.component.is_var) return;
            const auto& params = vocab.components.at(a.component.name);
            auto it = params.find(a.param);
            if (it == params.end()) {
              throw EvalError("unknown parameter " + a.component.name + "." +
                              a.param);
            }
            if (it->second != class_of(a.literal)) {
              throw EvalError("parameter " + a.component.name + "." + a.param +
                              " is " + to_string(it->second) +
                              ", compared with a " +
                              to_string(class_of(a.literal)) + " literal");
            }
          },
          [&](const EndpointIs& a) { ground(a.component); },
          [&](const Not& a) { resolve_node(*a.arg, vocab); },
          [&](const And& a) {
            resolve_node(*a.lhs, vocab);
            resolve_node(*a.rhs, vocab);
          },
          [&](const Or& a) {
            resolve_node(*a.lhs, vocab);
            resolve_node(*a.rhs, vocab);
          },
          [&](const Implies& a) {
            resolve_node(*a.lhs, vocab);
            resolve_node(*a.rhs, vocab);
          },
          [&](const Quant& a) { resolve_node(*a.body, vocab); },
          [&](const auto&) {},
      },
      n.v);
}

bool node_mentions_params(const Node& n) {
  return std::visit(
      overloaded{
          [](const ParamCmp&) { return true; },
          [](const Not& a) { return node_mentions_params(*a.arg); },
          [](const And& a) {
            return node_mentions_params(*a.lhs) || node_mentions_params(*a.rhs);
          },
          [](const Or& a) {
            return node_mentions_params(*a.lhs) || node_mentions_params(*a.rhs);
          },
          [](const Implies& a) {
            return node_mentions_params(*a.lhs) || node_mentions_params(*a.rhs);
          },
          [](const Quant& a) { return node_mentions_params(*a.body); },
          [](const auto&) { return false; },
      },
      n.v);
}

}  // namespace

bool eval(const Property& p, const ComponentModel& m, const Vocabulary* vocab) {
  return Evaluator(m, vocab).eval(p.root());
}

void resolve(const Property& p, const Vocabulary& vocab) {
  resolve_node(p.root(), vocab);
}

bool mentions_params(const Property& p) { return node_mentions_params(p.root()); }

}  // namespace reconf::cp
