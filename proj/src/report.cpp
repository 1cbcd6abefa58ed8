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

#include "reconfcheck/report.hpp"

#include <sstream>
#include <stdexcept>

#include <json.hpp>

#include "reconfcheck/adl.hpp"

namespace reconf {

using nlohmann::json;

namespace {

const std::string kSchema = "reconfcheck-report/1";

json optional_bool(const std::optional<bool>& b) {
  return b ? json(*b) : json(nullptr);
}

std::optional<bool> read_optional_bool(const json& j, const char* key) {
  const json& v = j.at(key);
  if (v.is_null()) return std::nullopt;
  return v.get<bool>();
}

void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument("report: " + what);
}

StateId parse_state(const std::string& s) {
  require(s.size() > 1 && s[0] == 'q', "bad state name '" + s + "'");
  std::size_t used = 0;
  unsigned long long v = std::stoull(s.substr(1), &used);
  require(used == s.size() - 1, "bad state name '" + s + "'");
  return StateId{static_cast<std::size_t>(v)};
}

UnknownReason parse_reason(const std::string& s) {
  if (s == to_string(UnknownReason::StepBudgetExhausted)) {
    return UnknownReason::StepBudgetExhausted;
  }
  if (s == to_string(UnknownReason::NonIdempotentCycle)) {
    return UnknownReason::NonIdempotentCycle;
  }
  throw std::invalid_argument("report: unknown reason '" + s + "'");
}

}  // namespace

const char* verdict_name(const Verdict& v) {
  if (std::holds_alternative<Holds>(v)) return "holds";
  if (std::holds_alternative<Fails>(v)) return "fails";
  return "unknown";
}

std::string report_to_json(const Report& r, int indent) {
  json j;
  j["schema"] = kSchema;
  j["formula"] = r.formula;
  j["path"] = r.path;
  j["verdict"] = verdict_name(r.verdict);
  j["witness"] = nullptr;
  j["reason"] = nullptr;
  j["residual_path"] = nullptr;
  j["reached_model"] = nullptr;
  j["resume_formula"] = nullptr;
  if (auto f = std::get_if<Fails>(&r.verdict)) {
    json steps = json::array();
    for (const auto& s : f->witness.steps) {
      steps.push_back(
          {{"state", PathAutomaton::name(s.state)}, {"label", s.label}, {"digest", s.digest}});
    }
    j["witness"] = {{"steps", steps},
                    {"violation_index", f->witness.violation_index},
                    {"violated", f->witness.violated}};
  }
  if (auto u = std::get_if<Unknown>(&r.verdict)) {
    j["reason"] = to_string(u->reason);
    j["residual_path"] = print_path(u->residual);
    j["reached_model"] = adl::print_model(u->reached);
    if (u->resume) j["resume_formula"] = ftpl::print_formula(*u->resume);
  }
  const CheckStats& s = r.stats;
  j["stats"] = {{"automaton_states", s.automaton_states},
                {"transitions", s.transitions},
                {"instances", s.instances},
                {"max_instance_transitions", s.max_instance_transitions},
                {"idempotent_cycle", optional_bool(s.idempotent_cycle)},
                {"ignore_params", s.ignore_params},
                {"marks", s.marks}};
  j["oracle"] = optional_bool(s.oracle);
  return j.dump(indent);
}

Report report_from_json(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
  try {
    require(j.is_object(), "not an object");
    require(j.at("schema") == kSchema, "unsupported schema");
    Report r;
    r.formula = j.at("formula").get<std::string>();
    r.path = j.at("path").get<std::string>();
    std::string verdict = j.at("verdict").get<std::string>();
    if (verdict == "holds") {
      r.verdict = Holds{};
    } else if (verdict == "fails") {
      const json& w = j.at("witness");
      TraceWitness tw;
      for (const auto& s : w.at("steps")) {
        tw.steps.push_back(WitnessStep{parse_state(s.at("state").get<std::string>()),
                                       s.at("label").get<std::string>(),
                                       s.at("digest").get<std::string>()});
      }
      tw.violation_index = w.at("violation_index").get<std::size_t>();
      tw.violated = w.at("violated").get<std::string>();
      require(tw.violation_index + 1 == tw.steps.size(),
              "violation index does not end the witness");
      r.verdict = Fails{std::move(tw)};
    } else if (verdict == "unknown") {
      Unknown u;
      u.reason = parse_reason(j.at("reason").get<std::string>());
      u.residual = parse_path(j.at("residual_path").get<std::string>(), nullptr);
      u.reached = adl::parse_model(j.at("reached_model").get<std::string>());
      if (!j.at("resume_formula").is_null()) {
        u.resume = ftpl::parse_formula(j.at("resume_formula").get<std::string>());
      }
      r.verdict = std::move(u);
    } else {
      throw std::invalid_argument("report: unknown verdict '" + verdict + "'");
    }
    const json& s = j.at("stats");
    r.stats.automaton_states = s.at("automaton_states").get<std::size_t>();
    r.stats.transitions = s.at("transitions").get<std::size_t>();
    r.stats.instances = s.at("instances").get<std::size_t>();
    r.stats.max_instance_transitions = s.at("max_instance_transitions").get<std::size_t>();
    r.stats.idempotent_cycle = read_optional_bool(s, "idempotent_cycle");
    r.stats.ignore_params = s.at("ignore_params").get<bool>();
    r.stats.marks = s.at("marks").get<bool>();
    r.stats.oracle = read_optional_bool(j, "oracle");
    return r;
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("report: ") + e.what());
  }
}

std::string report_to_text(const Report& r) {
  std::ostringstream out;
  out << "verdict: " << verdict_name(r.verdict) << "\n";
  if (auto f = std::get_if<Fails>(&r.verdict)) {
    out << "violated: " << f->witness.violated << "\n";
    out << "witness:\n";
    for (std::size_t k = 0; k < f->witness.steps.size(); ++k) {
      const auto& s = f->witness.steps[k];
      out << "  " << k << " " << PathAutomaton::name(s.state) << " "
          << (s.label.empty() ? "-" : s.label) << " " << s.digest
          << (k == f->witness.violation_index ? "  <- violation" : "") << "\n";
    }
  }
  if (auto u = std::get_if<Unknown>(&r.verdict)) {
    out << "reason: " << to_string(u->reason) << "\n";
    out << "residual path: " << print_path(u->residual) << "\n";
    if (u->resume) out << "resume formula: " << ftpl::print_formula(*u->resume) << "\n";
    out << "reached model:\n" << adl::print_model(u->reached);
  }
  out << "transitions: " << r.stats.transitions << "\n";
  if (r.stats.oracle) {
    out << "oracle: " << (*r.stats.oracle ? "holds" : "fails") << "\n";
  }
  return out.str();
}

}  // namespace reconf
