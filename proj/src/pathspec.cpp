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

#include "reconfcheck/pathspec.hpp"

#include <set>
#include <stdexcept>

#include "lexer.hpp"

namespace reconf {

using detail::TokenKind;
using detail::TokenStream;

PathExpr parse_path(std::string_view text,
                    const std::function<bool(const std::string&)>& is_known) {
  TokenStream ts(detail::tokenize(text, detail::kHashComments));
  PathExpr out;
  auto name = [&]() {
    const auto& tok = ts.peek();
    std::string n = ts.expect_ident("operation name");
    if (is_known && !is_known(n)) ts.fail_at(tok, "unknown operation '" + n + "'");
    return n;
  };

  while (ts.peek().kind == TokenKind::Ident) out.prefix.push_back(name());
  if (ts.accept_punct("(")) {
    while (ts.peek().kind == TokenKind::Ident) out.cycle.push_back(name());
    if (out.cycle.empty()) ts.fail("empty repetition group");
    ts.expect_punct(")");
    ts.expect_punct("+");
    if (!ts.at_end()) {
      ts.fail("the repeated group must end the path");
    }
  }
  if (!ts.at_end()) ts.fail("unexpected " + detail::describe(ts.peek()));
  return out;
}

std::string print_path(const PathExpr& p) {
  std::string out;
  for (const auto& n : p.prefix) {
    if (!out.empty()) out += ' ';
    out += n;
  }
  if (!p.cycle.empty()) {
    if (!out.empty()) out += ' ';
    out += '(';
    for (std::size_t i = 0; i < p.cycle.size(); ++i) {
      if (i) out += ' ';
      out += p.cycle[i];
    }
    out += ")+";
  }
  return out;
}

PathAutomaton::PathAutomaton(const PathExpr& p) : path_(p) {
  std::vector<std::string> labels = p.prefix;
  labels.insert(labels.end(), p.cycle.begin(), p.cycle.end());

  if (p.is_finite()) {
    transitions_.resize(labels.size() + 1);
    for (std::size_t i = 0; i < labels.size(); ++i) {
      transitions_[i] = Transition{labels[i], StateId{i + 1}};
    }
    return;
  }

  transitions_.resize(labels.size());
  for (std::size_t i = 0; i + 1 < labels.size(); ++i) {
    transitions_[i] = Transition{labels[i], StateId{i + 1}};
  }
  back_target_ = StateId{p.prefix.size()};
  transitions_.back() = Transition{labels.back(), *back_target_};
}

PathAutomaton build_automaton(const PathExpr& p) { return PathAutomaton(p); }

std::optional<Transition> PathAutomaton::succ(StateId q) const {
  if (q.index >= transitions_.size()) {
    throw std::out_of_range("unknown state " + name(q));
  }
  return transitions_[q.index];
}

bool PathAutomaton::precedes(StateId q, StateId q2) const {
  // Walk forward from q without taking the transition back into the cycle.
  StateId cur = q;
  std::set<StateId> seen{q};
  while (cur != q_max()) {
    auto t = succ(cur);
    if (!t) return false;
    cur = t->target;
    if (cur == q2) return true;
    if (!seen.insert(cur).second) return false;
  }
  return false;
}

PathExpr PathAutomaton::residual_from(StateId q) const {
  if (q.index >= size()) throw std::out_of_range("unknown state " + name(q));
  PathExpr out;
  const auto& prefix = path_.prefix;
  if (q.index < prefix.size()) {
    out.prefix.assign(prefix.begin() + static_cast<std::ptrdiff_t>(q.index),
                      prefix.end());
    out.cycle = path_.cycle;
    return out;
  }
  if (path_.is_finite()) return out;  // terminal state
  std::size_t k = q.index - prefix.size();
  out.prefix.assign(path_.cycle.begin() + static_cast<std::ptrdiff_t>(k),
                    path_.cycle.end());
  if (k == 0) out.prefix.clear();
  out.cycle = path_.cycle;
  return out;
}

}  // namespace reconf
