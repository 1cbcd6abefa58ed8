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

#include "reconfcheck/oracle.hpp"

#include <cassert>
#include <map>
#include <utility>

namespace reconf::oracle {

using ftpl::After;
using ftpl::Before;
using ftpl::Formula;
using ftpl::Trace;
using ftpl::TraceKind;

ConcreteLasso unfold_to_lasso(const PathAutomaton& a, const OperationTable& ops,
                              const ComponentModel& c0, std::size_t max_rounds,
                              bool ignore_params) {
  ConcreteLasso l;
  l.params_erased = ignore_params;
  auto key = [&](const ComponentModel& m) {
    return ignore_params ? erase_param_values(m) : m;
  };
  std::map<StateId, std::vector<std::size_t>> seen;
  std::vector<ComponentModel> keys;

  l.configs.push_back({a.initial(), c0, ""});
  keys.push_back(key(c0));
  seen[a.initial()].push_back(0);
  std::size_t rounds = 0;

  for (;;) {
    const LassoEntry& cur = l.configs.back();
    auto t = a.succ(cur.state);
    if (!t) return l;
    ComponentModel next = apply_evolution(ops.resolve(t->label), cur.model).result;
    if (t->target <= cur.state) ++rounds;

    ComponentModel k = key(next);
    for (std::size_t j : seen[t->target]) {
      if (keys[j] == k) {
        l.period_start = j;
        l.closing_label = t->label;
        return l;
      }
    }
    seen[t->target].push_back(l.configs.size());
    keys.push_back(std::move(k));
    l.configs.push_back({t->target, std::move(next), t->label});
    if (rounds >= max_rounds) {
      l.truncated = true;
      return l;
    }
  }
}

namespace {

enum class Tv { False, True, Unknown };

bool event_on(const ConcreteLasso& l, const ComponentModel& prev, const ComponentModel& next,
              const std::string& label, const ftpl::EventSpec& e, std::size_t position) {
  if (!l.params_erased) return ftpl::event_holds(prev, next, label, e, position);
  return ftpl::event_holds(erase_param_values(prev), erase_param_values(next), label, e,
                           position);
}

std::optional<bool> to_optional(Tv v) {
  if (v == Tv::Unknown) return std::nullopt;
  return v == Tv::True;
}

// Evaluation on the folded sequence. Positions are entry indices; the
// successor of the last entry is the period start, if any.
class FoldedEval {
 public:
  explicit FoldedEval(const ConcreteLasso& l) : l_(l) {}

  Tv eval(const Formula& f, std::size_t i) {
    auto key = std::make_pair(&f, i);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    Tv r = std::visit([&](const auto& g) { return eval_node(g, i); }, f.v());
    memo_[key] = r;
    return r;
  }

 private:
  std::size_t n() const { return l_.configs.size(); }

  std::optional<std::size_t> next(std::size_t p) const {
    if (p + 1 < n()) return p + 1;
    return l_.period_start;
  }

  const std::string& label(std::size_t p, std::size_t q) const {
    return q == p + 1 ? l_.configs[q].incoming : l_.closing_label;
  }

  bool event(const ftpl::EventSpec& e, std::size_t p, std::size_t q) const {
    return event_on(l_, l_.configs[p].model, l_.configs[q].model, label(p, q), e, 1);
  }

  bool cp(const cp::Property& prop, std::size_t p) {
    auto key = std::make_pair(static_cast<const void*>(prop.ptr().get()), p);
    if (auto it = cp_memo_.find(key); it != cp_memo_.end()) return it->second;
    bool r = cp::eval(prop, l_.configs[p].model);
    cp_memo_[key] = r;
    return r;
  }

  // Positions reachable from i, each once, in path order.
  std::vector<std::size_t> reach(std::size_t i) const {
    std::vector<std::size_t> out{i};
    std::vector<bool> seen(n(), false);
    seen[i] = true;
    for (auto p = next(i); p && !seen[*p]; p = next(*p)) {
      seen[*p] = true;
      out.push_back(*p);
    }
    return out;
  }

  // The undetermined outcome of a truncated sequence.
  Tv open() const { return l_.truncated ? Tv::Unknown : Tv::True; }

  Tv eval_node(const Trace& t, std::size_t i) {
    for (std::size_t p : reach(i)) {
      bool v = cp(t.property, p);
      if (t.kind == TraceKind::Always && !v) return Tv::False;
      if (t.kind == TraceKind::Eventually && v) return Tv::True;
    }
    if (t.kind == TraceKind::Always) return open();
    return l_.truncated ? Tv::Unknown : Tv::False;
  }

  Tv eval_node(const After& a, std::size_t i) {
    Tv acc = Tv::True;
    for (std::size_t p : reach(i)) {
      auto q = next(p);
      if (!q || !event(a.event, p, *q)) continue;
      Tv v = eval(*a.inner, *q);
      if (v == Tv::False) return Tv::False;
      if (v == Tv::Unknown) acc = Tv::Unknown;
    }
    if (acc == Tv::True) return open();
    return acc;
  }

  // Walks twice the sequence length so every event of the period is also
  // seen once the running segment status is final.
  Tv eval_node(const Before& b, std::size_t i) {
    bool always = b.trace.kind == TraceKind::Always;
    bool status = always;
    std::size_t p = i;
    for (std::size_t steps = 0; steps <= 2 * n(); ++steps) {
      bool v = cp(b.trace.property, p);
      status = always ? (status && v) : (status || v);
      // A satisfied eventually-segment stays satisfied for every later event.
      if (!always && status) return Tv::True;
      auto q = next(p);
      if (!q) return open();
      if (event(b.event, p, *q) && !status) return Tv::False;
      p = *q;
    }
    return Tv::True;
  }

  const ConcreteLasso& l_;
  std::map<std::pair<const Formula*, std::size_t>, Tv> memo_;
  std::map<std::pair<const void*, std::size_t>, bool> cp_memo_;
};

std::size_t depth(const Formula& f) {
  if (auto a = std::get_if<After>(&f.v())) return 1 + depth(*a->inner);
  return 1;
}

// Evaluation on an explicitly unrolled copy of the sequence.
class NaiveEval {
 public:
  NaiveEval(const ConcreteLasso& l, std::size_t nesting) : l_(l) {
    std::size_t n = l.configs.size();
    if (!l.period_start) {
      window_ = n;
      for (std::size_t k = 0; k < n; ++k) seq_.push_back(k);
      return;
    }
    std::size_t period = n - *l.period_start;
    window_ = n + 2 * period;
    std::size_t len = (nesting + 1) * window_ + 1;
    for (std::size_t k = 0; k < len; ++k) {
      seq_.push_back(k < n ? k : *l.period_start + (k - n) % period);
    }
  }

  bool eval(const Formula& f, std::size_t i) {
    return std::visit([&](const auto& g) { return eval_node(g, i); }, f.v());
  }

 private:
  std::size_t end(std::size_t i) const {
    return std::min(seq_.size(), i + window_);
  }

  const ComponentModel& model(std::size_t k) const {
    return l_.configs[seq_[k]].model;
  }

  const std::string& label(std::size_t k) const {
    std::size_t cur = seq_[k];
    std::size_t prev = seq_[k - 1];
    return cur == prev + 1 ? l_.configs[cur].incoming : l_.closing_label;
  }

  bool event(const ftpl::EventSpec& e, std::size_t k) const {
    return event_on(l_, model(k - 1), model(k), label(k), e, k);
  }

  bool eval_node(const Trace& t, std::size_t i) {
    for (std::size_t k = i; k < end(i); ++k) {
      bool v = cp::eval(t.property, model(k));
      if (t.kind == TraceKind::Always && !v) return false;
      if (t.kind == TraceKind::Eventually && v) return true;
    }
    return t.kind == TraceKind::Always;
  }

  bool eval_node(const After& a, std::size_t i) {
    for (std::size_t k = i + 1; k < end(i); ++k) {
      if (event(a.event, k) && !eval(*a.inner, k)) return false;
    }
    return true;
  }

  bool eval_node(const Before& b, std::size_t i) {
    for (std::size_t k = i + 1; k < end(i); ++k) {
      if (!event(b.event, k)) continue;
      bool always = b.trace.kind == TraceKind::Always;
      bool seg = always;
      for (std::size_t s = i; s < k; ++s) {
        bool v = cp::eval(b.trace.property, model(s));
        seg = always ? (seg && v) : (seg || v);
      }
      if (!seg) return false;
    }
    return true;
  }

  const ConcreteLasso& l_;
  std::vector<std::size_t> seq_;
  std::size_t window_ = 0;
};

}  // namespace

std::optional<bool> oracle_eval(const Formula& f, const ConcreteLasso& l) {
  assert(!l.configs.empty());
  FoldedEval ev(l);
  return to_optional(ev.eval(f, 0));
}

std::optional<bool> oracle_eval_naive(const Formula& f, const ConcreteLasso& l) {
  if (l.truncated) return std::nullopt;
  NaiveEval ev(l, depth(f));
  return ev.eval(f, 0);
}

}  // namespace reconf::oracle
