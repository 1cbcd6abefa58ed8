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

#include "reconfcheck/checker.hpp"

#include <algorithm>
#include <cassert>
#include <future>
#include <set>

#include "reconfcheck/adl.hpp"
#include "reconfcheck/errors.hpp"
#include "reconfcheck/oracle.hpp"

namespace reconf {

using ftpl::After;
using ftpl::Before;
using ftpl::Formula;
using ftpl::Trace;
using ftpl::TraceKind;

const char* to_string(UnknownReason r) {
  switch (r) {
    case UnknownReason::StepBudgetExhausted: return "step-budget-exhausted";
    case UnknownReason::NonIdempotentCycle: return "non-idempotent-cycle";
  }
  return "?";
}

namespace {

// Whether the changed/unchanged outcome of `op` may differ between two
// configurations that agree up to parameter values.
bool reads_param_values(const EvolutionOperation& op) {
  const auto* r = std::get_if<Recipe>(&op);
  const auto* p = std::get_if<Primitive>(&op);
  std::vector<Primitive> steps;
  if (r) steps = r->steps;
  if (p) steps.push_back(*p);
  std::set<std::string> removed;
  for (const auto& s : steps) {
    if (std::holds_alternative<SetParam>(s)) return true;
    if (auto rm = std::get_if<RemoveComponent>(&s)) removed.insert(rm->id);
    if (auto add = std::get_if<AddComponent>(&s)) {
      if (removed.count(add->component.id)) return true;
    }
  }
  return false;
}

void collect_events(const Formula& f, std::vector<ftpl::EventSpec>& out) {
  if (auto a = std::get_if<After>(&f.v())) {
    out.push_back(a->event);
    collect_events(*a->inner, out);
  } else if (auto b = std::get_if<Before>(&f.v())) {
    out.push_back(b->event);
  }
}

}  // namespace

bool effective_ignore_params(const Formula& f, const OperationTable& ops,
                             bool forced, const PathAutomaton* a) {
  if (forced) return true;
  if (ftpl::mentions_params(f)) return false;
  std::set<std::string> labels;
  if (a) {
    for (std::size_t i = 0; i < a->size(); ++i) {
      if (auto t = a->succ(StateId{i})) labels.insert(t->label);
    }
  }
  std::vector<ftpl::EventSpec> events;
  collect_events(f, events);
  for (const auto& e : events) {
    if (e.modality == ftpl::Modality::Terminates) continue;
    if (a && !labels.count(e.op)) continue;
    if (ops.contains(e.op) && reads_param_values(ops.resolve(e.op))) return false;
  }
  return true;
}

cp::Vocabulary vocabulary_for(const ComponentModel& c0,
                              const OperationTable& ops) {
  cp::Vocabulary v;
  v.add(c0);
  for (const auto& [name, recipe] : ops.recipes()) {
    for (const auto& step : recipe.steps) {
      if (auto add = std::get_if<AddComponent>(&step)) v.add(add->component);
    }
  }
  return v;
}

void resolve_names(const Formula& f, const PathAutomaton& a,
                   const OperationTable& ops, const cp::Vocabulary& vocab) {
  for (const auto& op : ftpl::event_operations(f)) {
    if (!ops.contains(op)) {
      throw ResolutionError("unknown operation '" + op + "' in formula");
    }
  }
  for (const auto* part : {&a.path().prefix, &a.path().cycle}) {
    for (const auto& label : *part) ops.resolve(label);
  }
  ftpl::for_each_property(f, [&](const cp::Property& p) { cp::resolve(p, vocab); });
}

// ---------------------------------------------------------------------------
// LassoChecker

struct LassoChecker::Instance {
  std::size_t id;
  MarkMap marks;
  std::size_t transitions = 0;
};

LassoChecker::LassoChecker(const PathAutomaton& a, const OperationTable& ops,
                           StateId start, ComponentModel c,
                           std::optional<std::size_t> max_steps, bool use_marks,
                           const cp::Vocabulary* vocab)
    : input_(a), ops_(ops), max_steps_(max_steps), use_marks_(use_marks),
      vocab_(vocab) {
  if (start.index >= a.size()) {
    throw std::out_of_range("unknown state " + PathAutomaton::name(start));
  }
  if (use_marks_ && a.has_cycle()) {
    // Entry idempotence only makes the configurations periodic from the
    // second traversal of the cycle on; walk a copy with one extra copy of it.
    PathExpr p;
    p.prefix = a.path().prefix;
    p.prefix.insert(p.prefix.end(), a.path().cycle.begin(), a.path().cycle.end());
    p.cycle = a.path().cycle;
    unrolled_.emplace(p);
  }
  trace_.push_back(
      Entry{start, start, "", std::make_shared<const ComponentModel>(std::move(c))});
}

const PathAutomaton& LassoChecker::walked() const {
  return unrolled_ ? *unrolled_ : input_;
}

StateId LassoChecker::original_of(StateId q) const {
  if (!unrolled_ || q.index < input_.size()) return q;
  return StateId{input_.back_target()->index + (q.index - input_.size())};
}

const ComponentModel& LassoChecker::model_at(std::size_t position) const {
  return *trace_.at(position).model;
}

StateId LassoChecker::reached_state() const { return trace_.back().original; }

const ComponentModel& LassoChecker::reached_model() const {
  return *trace_.back().model;
}

bool LassoChecker::holds(const cp::Property& p, std::size_t position) const {
  return cp::eval(p, model_at(position), vocab_);
}

void LassoChecker::materialize(std::size_t position) {
  while (trace_.size() <= position) {
    const Entry& last = trace_.back();
    auto t = walked().succ(last.state);
    if (!t) throw std::logic_error("materializing past the end of a finite path");
    auto next = apply_evolution(ops_.resolve(t->label), *last.model).result;
    trace_.push_back(Entry{t->target, original_of(t->target), t->label,
                           std::make_shared<const ComponentModel>(std::move(next))});
  }
}

LassoChecker::Step LassoChecker::advance(Cursor& cur, Instance& inst) {
  auto t = walked().succ(cur.state);
  if (!t) return Step::Terminal;
  std::size_t np = cur.position + 1;
  if (np >= trace_.size()) {
    if (max_steps_ && np > *max_steps_) return Step::Exhausted;
    materialize(np);
    ++transitions_;
  }
  assert(trace_[np].state == t->target);
  ++inst.transitions;
  per_instance_[inst.id] = inst.transitions;
  max_instance_ = std::max(max_instance_, inst.transitions);
  // Each walked state is left at most once per instance.
  assert(!use_marks_ || inst.transitions <= walked().size());
  cur = Cursor{t->target, np};
  return Step::Moved;
}

void LassoChecker::fail_at(std::size_t position, std::string violated) {
  if (witness_) return;
  materialize(position);
  TraceWitness w;
  for (std::size_t k = 0; k <= position; ++k) {
    w.steps.push_back(
        WitnessStep{trace_[k].original, trace_[k].label, adl::model_digest(*trace_[k].model)});
  }
  w.violation_index = position;
  w.violated = std::move(violated);
  witness_ = std::move(w);
}

namespace {

// Every state walked by an instance between `from` and `to` carries a mark.
template <class TraceVec>
bool walked_marked(const TraceVec& trace, const MarkMap& marks,
                   std::size_t from, std::size_t to) {
  for (std::size_t k = from; k < to; ++k) {
    if (marks.get(trace[k].state) == Mark::Unchecked) return false;
  }
  return true;
}

std::string event_text(const ftpl::EventSpec& e) {
  return e.op + " " + ftpl::to_string(e.modality);
}

}  // namespace

Outcome LassoChecker::after_impl(const ftpl::EventSpec& e, const PathCheck& inner,
                                 bool inner_monotone, const Formula* inner_f,
                                 const Cursor& start) {
  Instance inst{instances_++, MarkMap(walked().size())};
  per_instance_.push_back(0);
  Cursor cur = start;
  for (;;) {
    if (use_marks_) {
      // The rest of the path repeats transitions already scanned.
      if (inst.marks.get(cur.state) == Mark::Again) return Outcome::Holds;
      inst.marks.set(cur.state, Mark::Again);
      assert(walked_marked(trace_, inst.marks, start.position, cur.position));
    }
    Cursor prev = cur;
    switch (advance(cur, inst)) {
      case Step::Terminal: return Outcome::Holds;
      case Step::Exhausted:
        resume_ = ftpl::make_after(e, *inner_f);
        return Outcome::Exhausted;
      case Step::Moved: break;
    }
    if (!ftpl::event_holds(model_at(prev.position), model_at(cur.position),
                           trace_[cur.position].label, e,
                           cur.position - start.position)) {
      continue;
    }
    switch (inner(cur)) {
      case Outcome::Fails: return Outcome::Fails;
      case Outcome::Exhausted:
        if (!inner_monotone) resume_.reset();
        return Outcome::Exhausted;
      case Outcome::Holds:
        // Later occurrences start later suffixes of one that satisfies a
        // suffix-monotone formula.
        if (inner_monotone) return Outcome::Holds;
        break;
    }
  }
}

Outcome LassoChecker::always_impl(const cp::Property& p, const Cursor& start) {
  Instance inst{instances_++, MarkMap(walked().size())};
  per_instance_.push_back(0);
  Cursor cur = start;
  for (;;) {
    if (!holds(p, cur.position)) {
      fail_at(cur.position, "always [" + cp::print(p) + "]");
      return Outcome::Fails;
    }
    if (use_marks_) {
      if (inst.marks.get(cur.state) == Mark::Checked) return Outcome::Holds;
      inst.marks.set(cur.state, Mark::Checked);
      assert(walked_marked(trace_, inst.marks, start.position, cur.position));
    }
    switch (advance(cur, inst)) {
      case Step::Terminal: return Outcome::Holds;
      case Step::Exhausted:
        resume_ = Formula(Trace{TraceKind::Always, p});
        return Outcome::Exhausted;
      case Step::Moved: break;
    }
  }
}

Outcome LassoChecker::eventually_impl(const cp::Property& p, const Cursor& start) {
  Instance inst{instances_++, MarkMap(walked().size())};
  per_instance_.push_back(0);
  Cursor cur = start;
  auto never = [&] {
    fail_at(cur.position, "eventually [" + cp::print(p) + "]");
    return Outcome::Fails;
  };
  for (;;) {
    if (holds(p, cur.position)) return Outcome::Holds;
    if (use_marks_) {
      if (inst.marks.get(cur.state) == Mark::Checked) return never();
      inst.marks.set(cur.state, Mark::Checked);
    }
    switch (advance(cur, inst)) {
      case Step::Terminal: return never();
      case Step::Exhausted:
        resume_ = Formula(Trace{TraceKind::Eventually, p});
        return Outcome::Exhausted;
      case Step::Moved: break;
    }
  }
}

Outcome LassoChecker::before_impl(const ftpl::EventSpec& e, const Trace& t,
                                  const Cursor& start) {
  Instance inst{instances_++, MarkMap(walked().size())};
  per_instance_.push_back(0);
  const bool always = t.kind == TraceKind::Always;
  // Whether the segment from `start` to the current position satisfies `t`.
  bool status = always;
  std::vector<std::size_t> first_visit(walked().size(), 0);
  std::vector<std::size_t> events;
  auto violated = [&] {
    return "before " + event_text(e) + " " +
           (always ? "always [" : "eventually [") + cp::print(t.property) + "]";
  };
  Cursor cur = start;
  for (;;) {
    bool v = holds(t.property, cur.position);
    status = always ? (status && v) : (status || v);
    if (!always && status) return Outcome::Holds;
    if (use_marks_) {
      if (inst.marks.get(cur.state) == Mark::Checked) {
        // The configurations from the first visit repeat with period
        // `len`; a loop event meets the final segment status one period on.
        if (status) return Outcome::Holds;
        std::size_t from = first_visit[cur.state.index];
        std::size_t len = cur.position - from;
        for (std::size_t k : events) {
          if (k > from) {
            fail_at(k + len, violated());
            return Outcome::Fails;
          }
        }
        return Outcome::Holds;
      }
      inst.marks.set(cur.state, Mark::Checked);
      first_visit[cur.state.index] = cur.position;
    }
    Cursor prev = cur;
    switch (advance(cur, inst)) {
      case Step::Terminal: return Outcome::Holds;
      case Step::Exhausted:
        if (always && !status) {
          resume_ = Formula(Before{e, Trace{TraceKind::Always, cp::make(cp::FalseAtom{})}});
        } else {
          resume_ = Formula(Before{e, t});
        }
        return Outcome::Exhausted;
      case Step::Moved: break;
    }
    if (ftpl::event_holds(model_at(prev.position), model_at(cur.position),
                          trace_[cur.position].label, e,
                          cur.position - start.position)) {
      if (!status) {
        fail_at(cur.position, violated());
        return Outcome::Fails;
      }
      events.push_back(cur.position);
    }
  }
}

LassoChecker::PathCheck LassoChecker::compile(const Formula& f) {
  if (auto a = std::get_if<After>(&f.v())) {
    PathCheck inner = compile(*a->inner);
    bool mono = ftpl::suffix_monotone(*a->inner);
    return [this, a = *a, inner, mono](const Cursor& c) {
      return after_impl(a.event, inner, mono, a.inner.get(), c);
    };
  }
  if (auto b = std::get_if<Before>(&f.v())) {
    return [this, b = *b](const Cursor& c) { return before_impl(b.event, b.trace, c); };
  }
  const auto& t = std::get<Trace>(f.v());
  if (t.kind == TraceKind::Always) {
    return [this, p = t.property](const Cursor& c) { return always_impl(p, c); };
  }
  return [this, p = t.property](const Cursor& c) { return eventually_impl(p, c); };
}

Outcome LassoChecker::evaluate(const Formula& f) {
  return compile(f)(Cursor{trace_.front().state, 0});
}

Outcome LassoChecker::check_after(const ftpl::EventSpec& e, const Formula& inner) {
  return evaluate(ftpl::make_after(e, inner));
}

Outcome LassoChecker::check_before(const ftpl::EventSpec& e, const Trace& t) {
  return before_impl(e, t, Cursor{trace_.front().state, 0});
}

Outcome LassoChecker::check_always(const cp::Property& p) {
  return always_impl(p, Cursor{trace_.front().state, 0});
}

Outcome LassoChecker::check_eventually(const cp::Property& p) {
  return eventually_impl(p, Cursor{trace_.front().state, 0});
}

// ---------------------------------------------------------------------------

Verdict check(const Formula& f, const PathAutomaton& a, const ComponentModel& c0,
              const CheckOptions& opts, const OperationTable& ops,
              CheckStats* stats) {
  if (auto problems = validate_model(c0); !problems.empty()) {
    throw InvalidModel(std::move(problems));
  }
  cp::Vocabulary vocab = vocabulary_for(c0, ops);
  for (const auto& m : opts.context) vocab.add(m);
  resolve_names(f, a, ops, vocab);

  CheckStats st;
  st.automaton_states = a.size();
  st.ignore_params = effective_ignore_params(f, ops, opts.ignore_params, &a);

  std::future<std::optional<bool>> oracle_result;
  if (opts.oracle_crosscheck) {
    // Folding modulo parameters is only sound when the formula allows it.
    bool fold = effective_ignore_params(f, ops, false, &a);
    oracle_result = std::async(std::launch::async, [&a, &ops, &c0, &f, fold] {
      auto lasso = oracle::unfold_to_lasso(a, ops, c0, oracle::kDefaultMaxRounds, fold);
      return oracle::oracle_eval(f, lasso);
    });
  }
  auto done = [&](Verdict v) {
    if (oracle_result.valid()) st.oracle = oracle_result.get();
    if (stats) *stats = st;
    return v;
  };

  bool use_marks = true;
  if (a.has_cycle()) {
    std::vector<EvolutionOperation> prefix, cycle;
    for (const auto& n : a.path().prefix) prefix.push_back(ops.resolve(n));
    for (const auto& n : a.path().cycle) cycle.push_back(ops.resolve(n));
    ComponentModel entry = apply_sequence(prefix, c0);
    st.idempotent_cycle = is_idempotent_sequence(cycle, entry, st.ignore_params);
    if (!*st.idempotent_cycle) {
      if (!opts.max_steps) {
        return done(Unknown{UnknownReason::NonIdempotentCycle, a.path(), c0, f});
      }
      use_marks = false;
    }
  }
  st.marks = use_marks;

  LassoChecker lc(a, ops, a.initial(), c0, opts.max_steps, use_marks, &vocab);
  Outcome out = lc.evaluate(f);
  st.transitions = lc.transitions();
  st.instances = lc.instances();
  st.max_instance_transitions = lc.max_instance_transitions();

  switch (out) {
    case Outcome::Holds: return done(Holds{});
    case Outcome::Fails: return done(Fails{*lc.witness()});
    case Outcome::Exhausted: break;
  }
  return done(Unknown{UnknownReason::StepBudgetExhausted,
                      a.residual_from(lc.reached_state()), lc.reached_model(),
                      lc.resume()});
}

}  // namespace reconf
