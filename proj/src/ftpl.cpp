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

#include "reconfcheck/ftpl.hpp"

#include "lexer.hpp"

namespace reconf::ftpl {

using detail::TokenStream;

const char* to_string(Modality m) {
  switch (m) {
    case Modality::Normal: return "normal";
    case Modality::Exceptional: return "exceptional";
    case Modality::Terminates: return "terminates";
  }
  return "?";
}

bool After::operator==(const After& o) const {
  return event == o.event && *inner == *o.inner;
}

Formula make_after(EventSpec e, Formula inner) {
  return After{std::move(e), std::make_shared<const Formula>(std::move(inner))};
}

namespace {

EventSpec parse_event(TokenStream& ts) {
  EventSpec e;
  e.op = ts.expect_ident("operation name");
  const auto& tok = ts.peek();
  if (ts.accept_keyword("normal")) {
    e.modality = Modality::Normal;
  } else if (ts.accept_keyword("exceptional")) {
    e.modality = Modality::Exceptional;
  } else if (ts.accept_keyword("terminates")) {
    e.modality = Modality::Terminates;
  } else {
    ts.fail_at(tok, "unknown event modality " + detail::describe(tok) +
                        " (expected normal, exceptional or terminates)");
  }
  return e;
}

Trace parse_trace(TokenStream& ts) {
  Trace t;
  if (ts.accept_keyword("always")) {
    t.kind = TraceKind::Always;
  } else if (ts.accept_keyword("eventually")) {
    t.kind = TraceKind::Eventually;
  } else {
    ts.fail("expected 'always' or 'eventually' but found " +
            detail::describe(ts.peek()));
  }
  ts.expect_punct("[");
  t.property = cp::parse(ts);
  ts.expect_punct("]");
  return t;
}

Formula parse_temp(TokenStream& ts) {
  if (ts.accept_keyword("after")) {
    EventSpec e = parse_event(ts);
    return make_after(std::move(e), parse_temp(ts));
  }
  if (ts.accept_keyword("before")) {
    EventSpec e = parse_event(ts);
    return Before{std::move(e), parse_trace(ts)};
  }
  return parse_trace(ts);
}

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::string print_event(const EventSpec& e) {
  return e.op + " " + to_string(e.modality);
}

std::string print_trace(const Trace& t) {
  return std::string(t.kind == TraceKind::Always ? "always [" : "eventually [") +
         cp::print(t.property) + "]";
}

}  // namespace

Formula parse_formula(std::string_view text) {
  TokenStream ts(detail::tokenize(text, detail::kSlashComments |
                                            detail::kHashComments));
  Formula f = parse_temp(ts);
  if (!ts.at_end()) ts.fail("unexpected " + detail::describe(ts.peek()));
  return f;
}

std::string print_formula(const Formula& f) {
  return std::visit(
      overloaded{
          [](const After& a) {
            return "after " + print_event(a.event) + " " +
                   print_formula(*a.inner);
          },
          [](const Before& b) {
            return "before " + print_event(b.event) + " " +
                   print_trace(b.trace);
          },
          [](const Trace& t) { return print_trace(t); },
      },
      f.v());
}

bool event_holds(const ComponentModel& prev, const ComponentModel& next,
                 const std::string& label, const EventSpec& e,
                 std::size_t position) {
  if (position == 0 || label != e.op) return false;
  bool same = model_equal(prev, next);
  switch (e.modality) {
    case Modality::Normal: return !same;
    case Modality::Exceptional: return same;
    case Modality::Terminates: return true;
  }
  return false;
}

void for_each_property(const Formula& f,
                       const std::function<void(const cp::Property&)>& fn) {
  std::visit(overloaded{
                 [&](const After& a) { for_each_property(*a.inner, fn); },
                 [&](const Before& b) { fn(b.trace.property); },
                 [&](const Trace& t) { fn(t.property); },
             },
             f.v());
}

bool mentions_params(const Formula& f) {
  bool any = false;
  for_each_property(f, [&](const cp::Property& p) {
    any = any || cp::mentions_params(p);
  });
  return any;
}

std::set<std::string> event_operations(const Formula& f) {
  std::set<std::string> out;
  const Formula* cur = &f;
  for (;;) {
    if (auto a = std::get_if<After>(&cur->v())) {
      out.insert(a->event.op);
      cur = a->inner.get();
      continue;
    }
    if (auto b = std::get_if<Before>(&cur->v())) out.insert(b->event.op);
    return out;
  }
}

bool suffix_monotone(const Formula& f) {
  return std::visit(overloaded{
                        [](const After&) { return true; },
                        [](const Before& b) {
                          return b.trace.kind == TraceKind::Always;
                        },
                        [](const Trace& t) {
                          return t.kind == TraceKind::Always;
                        },
                    },
                    f.v());
}

}  // namespace reconf::ftpl
