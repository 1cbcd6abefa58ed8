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

#ifndef RECONFCHECK_FTPL_HPP_
#define RECONFCHECK_FTPL_HPP_

#include <cstddef>
#include <functional>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>

#include "reconfcheck/cp.hpp"
#include "reconfcheck/model.hpp"

/**
 * Temporal properties over reconfiguration paths.
 *
 *   formula := "after" event formula | "before" event trace | trace
 *   trace   := ("always" | "eventually") "[" cp "]"
 *   event   := NAME ("normal" | "exceptional" | "terminates")
 */
namespace reconf::ftpl {

enum class Modality { Normal, Exceptional, Terminates };

const char* to_string(Modality m);

struct EventSpec {
  std::string op;
  Modality modality = Modality::Normal;
  bool operator==(const EventSpec&) const = default;
};

enum class TraceKind { Always, Eventually };

struct Trace {
  TraceKind kind = TraceKind::Always;
  cp::Property property;
  bool operator==(const Trace&) const = default;
};

class Formula;

struct After {
  EventSpec event;
  std::shared_ptr<const Formula> inner;
  bool operator==(const After& o) const;
};

struct Before {
  EventSpec event;
  Trace trace;
  bool operator==(const Before&) const = default;
};

class Formula {
 public:
  using Variant = std::variant<After, Before, Trace>;

  Formula(Trace t) : v_(std::move(t)) {}  // NOLINT(google-explicit-constructor)
  Formula(Before b) : v_(std::move(b)) {}  // NOLINT(google-explicit-constructor)
  Formula(After a) : v_(std::move(a)) {}   // NOLINT(google-explicit-constructor)

  const Variant& v() const { return v_; }
  bool operator==(const Formula&) const = default;

 private:
  Variant v_;
};

Formula make_after(EventSpec e, Formula inner);

Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);

/**
 * Event satisfaction at `position` of a path, where `prev` and `next` are
 * the configurations before and after the transition labelled `label`.
 * No event holds at position 0.
 */
bool event_holds(const ComponentModel& prev, const ComponentModel& next,
                 const std::string& label, const EventSpec& e,
                 std::size_t position);

/// True when some configuration property of `f` compares a parameter.
bool mentions_params(const Formula& f);

/// Operation names used in the events of `f`.
std::set<std::string> event_operations(const Formula& f);

/// Visits every configuration property in `f`.
void for_each_property(const Formula& f,
                       const std::function<void(const cp::Property&)>& fn);

/**
 * Whether truth on a suffix carries over to every later suffix. Holds for
 * `after` of anything, `always`, and `before` with an `always` trace; fails
 * for `eventually` and `before ... eventually`.
 */
bool suffix_monotone(const Formula& f);

}  // namespace reconf::ftpl

#endif  // RECONFCHECK_FTPL_HPP_
