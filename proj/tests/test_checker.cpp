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

#include <doctest.h>

#include "reconfcheck/adl.hpp"
#include "reconfcheck/checker.hpp"
#include "reconfcheck/errors.hpp"
#include "reconfcheck/oracle.hpp"
#include "support/samples.hpp"

using namespace reconf;

namespace {

struct Case {
  ComponentModel model;
  OperationTable ops;
  PathAutomaton automaton;

  Case(const std::string& model_text, const std::string& ops_text, const std::string& path)
      : model(adl::parse_model(model_text)),
        ops(adl::parse_recipes(ops_text)),
        automaton(parse_path(path, nullptr)) {}

  Verdict run(const std::string& formula, CheckOptions opts = {}) const {
    return check(ftpl::parse_formula(formula), automaton, model, opts, ops);
  }

  std::optional<bool> oracle(const std::string& formula) const {
    auto f = ftpl::parse_formula(formula);
    auto l = oracle::unfold_to_lasso(automaton, ops, model, 64,
                                     effective_ignore_params(f, ops, false));
    return oracle::oracle_eval(f, l);
  }
};

Case http(const std::string& path_file) {
  return Case(samples::read("http.arch"), samples::read("http.ops"), samples::read(path_file));
}

const char* kCacheFormula =
    "after AddCacheHandler normal always [bound(CacheHandler.cache, RequestHandler.getCache)]";

const char* kSwitchModel = R"(
  model Switch {
    component X { class K param p : int = 0 state stopped }
  })";

const char* kSwitchOps = R"(
  op AddY { add component Y { class K } }
  op RemYStartX { remove component Y start X }
  op Touch { start Z }
  op SetOne { set X.p := 1 }
  op SetZero { set X.p := 0 }
  op Poke { start X }
)";

}  // namespace

TEST_SUITE("checker") {
  TEST_CASE("cache stays connected on the server path") {
    CheckStats stats;
    Case c = http("server.rp");
    Verdict v = check(samples::cache_connected_formula(), c.automaton, c.model, {}, c.ops, &stats);
    CHECK(std::holds_alternative<Holds>(v));
    CHECK(stats.idempotent_cycle == true);
    CHECK(stats.ignore_params);
    CHECK(stats.max_instance_transitions <= 2 * stats.automaton_states);
  }

  TEST_CASE("re-entering after the removal still holds") {
    CHECK(std::holds_alternative<Holds>(http("reenter_q1prime.rp").run(kCacheFormula)));
  }

  TEST_CASE("re-entering before the removal fails at the removal") {
    CheckStats stats;
    Case c = http("reenter_q1.rp");
    Verdict v = check(samples::cache_connected_formula(), c.automaton, c.model, {}, c.ops, &stats);
    const auto* f = std::get_if<Fails>(&v);
    REQUIRE(f);
    const TraceWitness& w = f->witness;
    CHECK(w.violation_index == 9);
    REQUIRE(w.steps.size() == 10);
    CHECK(w.steps[9].state == StateId{2});
    CHECK(w.steps[9].label == "RemoveCacheHandler");
    CHECK(w.steps[0].label.empty());
    // Digests computed independently over the dumped configurations.
    CHECK(w.steps[0].digest == "25eb6521f1c273bb");
    CHECK(w.steps[2].digest == "e0c91b4e3d41c46b");
    CHECK(w.steps[3].digest == "0e2dd9faee14efae");
    CHECK(w.steps[8].digest == "29b6740240425b46");
    CHECK(w.steps[9].digest == "e0c91b4e3d41c46b");
    CHECK(w.violated.find("always") != std::string::npos);
    CHECK(stats.max_instance_transitions <= 2 * stats.automaton_states);
  }

  TEST_CASE("after an event that never occurs") {
    Case c(kSwitchModel, kSwitchOps, "SetOne SetZero SetOne");
    CHECK(std::holds_alternative<Holds>(c.run("after AddY normal always [false]")));
  }

  TEST_CASE("inner check starts right after the first add") {
    Case c = http("server.rp");
    LassoChecker lc(c.automaton, c.ops, c.automaton.initial(), c.model, std::nullopt, true);
    Outcome out = lc.check_after({"AddCacheHandler", ftpl::Modality::Normal},
                                 ftpl::parse_formula("always [false]"));
    CHECK(out == Outcome::Fails);
    REQUIRE(lc.witness());
    CHECK(lc.witness()->violation_index == 3);
    CHECK(lc.witness()->steps.back().state == StateId{3});
    CHECK(lc.witness()->steps.back().digest == "0e2dd9faee14efae");
  }

  TEST_CASE("exceptional add never fires when the add succeeds") {
    Case c = http("server.rp");
    const char* f = "after AddCacheHandler exceptional always [false]";
    CHECK(std::holds_alternative<Holds>(c.run(f)));
    CHECK(c.oracle(f) == true);
  }

  TEST_CASE("always") {
    Case dev = http("deviation_set.rp");
    CHECK(std::holds_alternative<Holds>(dev.run("always [true]")));
    CHECK(std::holds_alternative<Holds>(dev.run("always [param(RequestHandler.deviation) < 100]")));
  }

  TEST_CASE("always from the configuration after the add") {
    Case c = http("server.rp");
    ComponentModel c2 = c.model;
    for (const char* n : {"run", "RemoveCacheHandler", "AddCacheHandler"}) {
      c2 = apply_evolution(c.ops.resolve(n), c2).result;
    }
    LassoChecker lc(c.automaton, c.ops, StateId{3}, c2, std::nullopt, true);
    CHECK(lc.check_always(cp::parse(samples::kCacheConnected)) == Outcome::Holds);
    // Two traversals of the five-state cycle, then the revisit stops.
    CHECK(lc.max_instance_transitions() == 2 * 5);
    CHECK(lc.max_instance_transitions() <= 2 * c.automaton.size());
  }

  TEST_CASE("before") {
    Case c = http("server.rp");
    CHECK(std::holds_alternative<Holds>(
        c.run("before DeleteFileServer normal always [component(RequestHandler)]")));
    CHECK(std::holds_alternative<Holds>(c.run("before DeviationUp normal always [false]")));
    Verdict v = c.run(std::string("before AddCacheHandler normal always [") +
                      samples::kCacheConnected + "]");
    const auto* f = std::get_if<Fails>(&v);
    REQUIRE(f);
    CHECK(f->witness.violation_index == 3);
    CHECK(f->witness.steps.back().label == "AddCacheHandler");
  }

  TEST_CASE("eventually") {
    Case c = http("server.rp");
    CheckStats stats;
    Verdict now = check(ftpl::parse_formula(std::string("eventually [") +
                                            samples::kCacheConnected + "]"),
                        c.automaton, c.model, {}, c.ops, &stats);
    CHECK(std::holds_alternative<Holds>(now));
    CHECK(stats.transitions == 0);
    CHECK(std::holds_alternative<Fails>(c.run("eventually [false]")));
    CHECK(std::holds_alternative<Holds>(c.run("eventually [component(FileServer2)]")));
    CHECK(std::holds_alternative<Fails>(c.run("eventually [not started(HttpServer)]")));
  }

  TEST_CASE("increment cycle needs a bound") {
    Case c = http("deviation_up.rp");
    const char* f = "always [param(RequestHandler.deviation) < 100]";
    Verdict unbounded = c.run(f);
    const auto* u = std::get_if<Unknown>(&unbounded);
    REQUIRE(u);
    CHECK(u->reason == UnknownReason::NonIdempotentCycle);
    CHECK(u->residual == c.automaton.path());
    CHECK(u->reached == c.model);

    CheckOptions fifty;
    fifty.max_steps = 50;
    Verdict bounded = c.run(f, fifty);
    const auto* fails = std::get_if<Fails>(&bounded);
    REQUIRE(fails);
    CHECK(fails->witness.violation_index == 50);

    CheckOptions short_budget;
    short_budget.max_steps = 49;
    Verdict cut = c.run(f, short_budget);
    const auto* cu = std::get_if<Unknown>(&cut);
    REQUIRE(cu);
    CHECK(cu->reason == UnknownReason::StepBudgetExhausted);
    CHECK(std::get<std::int64_t>(
              cu->reached.components.at("RequestHandler").params.at("deviation").value) == 99);
  }

  TEST_CASE("bounded run reports the unexplored suffix") {
    Case c = http("server.rp");
    CheckOptions opts;
    opts.max_steps = 4;
    Verdict v = c.run(kCacheFormula, opts);
    const auto* u = std::get_if<Unknown>(&v);
    REQUIRE(u);
    CHECK(print_path(u->residual) ==
          "run AddFileServer DurationValidityUp DeleteFileServer "
          "(MemorySizeUp run AddFileServer DurationValidityUp DeleteFileServer)+");
    CHECK(std::get<std::int64_t>(
              u->reached.components.at("CacheHandler").params.at("memorySize").value) == 110);
    REQUIRE(u->resume);
    CHECK(ftpl::print_formula(*u->resume) ==
          std::string("always [") + samples::kCacheConnected + "]");
    Verdict resumed =
        check(*u->resume, build_automaton(u->residual), u->reached, {}, c.ops);
    CHECK(std::holds_alternative<Holds>(resumed));
  }

  TEST_CASE("configurations repeat only from the second traversal") {
    // Entry idempotence holds, but X is started and Y present together only
    // on the second traversal.
    Case c(kSwitchModel, kSwitchOps, "(AddY RemYStartX)+");
    const char* f = "always [not (started(X) and component(Y))]";
    Verdict v = c.run(f);
    const auto* fails = std::get_if<Fails>(&v);
    REQUIRE(fails);
    CHECK(fails->witness.violation_index == 3);
    CHECK(fails->witness.steps.back().state == StateId{1});
    CHECK(c.oracle(f) == false);
  }

  TEST_CASE("after with a non-monotone inner formula scans every occurrence") {
    Case c(kSwitchModel, kSwitchOps, "Poke SetOne SetZero (Poke)+");
    const char* f = "after Poke terminates eventually [param(X.p) = 1]";
    CHECK(std::holds_alternative<Fails>(c.run(f)));
    CHECK(c.oracle(f) == false);
    // Only the first occurrence sees the parameter set.
    const char* g = "after Poke terminates eventually [param(X.p) = 0]";
    CHECK(std::holds_alternative<Holds>(c.run(g)));
  }

  TEST_CASE("before fails one period after a loop event") {
    Case c(kSwitchModel, kSwitchOps, "(Touch AddY RemYStartX)+");
    const char* f = "before Touch terminates always [not (started(X) and component(Y))]";
    Verdict v = c.run(f);
    const auto* fails = std::get_if<Fails>(&v);
    REQUIRE(fails);
    CHECK(fails->witness.violation_index == 7);
    CHECK(fails->witness.steps.back().label == "Touch");
    CHECK(fails->witness.steps.back().state == StateId{1});
    CHECK(c.oracle(f) == false);
  }

  TEST_CASE("without marks the walk runs to the budget") {
    Case c = http("server.rp");
    LassoChecker lc(c.automaton, c.ops, c.automaton.initial(), c.model, 30, false);
    CHECK(lc.check_always(cp::Property()) == Outcome::Exhausted);
    CHECK(lc.transitions() == 30);
    CHECK_FALSE(lc.unrolled());
    REQUIRE(lc.resume());
  }

  TEST_CASE("names are resolved before checking") {
    Case c = http("server.rp");
    CHECK_THROWS_AS(c.run("after Teleport normal always [true]"), ResolutionError);
    CHECK_THROWS_AS(c.run("always [component(Proxy)]"), EvalError);
    CHECK_THROWS_AS(c.run("always [param(CacheHandler.memorySize) = true]"), EvalError);
    // Components introduced by a recipe are known.
    CHECK_NOTHROW(c.run("always [component(FileServer2) or true]"));

    Case bad(kSwitchModel, kSwitchOps, "Fly");
    CHECK_THROWS_AS(bad.run("always [true]"), ResolutionError);
  }

  TEST_CASE("parameters are ignored only when the formula allows it") {
    OperationTable ops = samples::ops();
    CHECK(effective_ignore_params(samples::cache_connected_formula(), ops, false));
    CHECK_FALSE(effective_ignore_params(
        ftpl::parse_formula("always [param(CacheHandler.memorySize) > 0]"), ops, false));
    CHECK_FALSE(effective_ignore_params(
        ftpl::parse_formula("after MemorySizeUp exceptional always [true]"), ops, false));
    CHECK(effective_ignore_params(
        ftpl::parse_formula("after MemorySizeUp terminates always [true]"), ops, false));
    CHECK(effective_ignore_params(
        ftpl::parse_formula("always [param(CacheHandler.memorySize) > 0]"), ops, true));
    // An event on an operation absent from the path never occurs.
    PathAutomaton a(samples::path("server.rp"));
    auto absent = ftpl::parse_formula("before DeviationUp normal always [false]");
    CHECK_FALSE(effective_ignore_params(absent, ops, false));
    CHECK(effective_ignore_params(absent, ops, false, &a));
    CHECK_FALSE(effective_ignore_params(
        ftpl::parse_formula("after MemorySizeUp normal always [true]"), ops, false, &a));
  }

  TEST_CASE("invalid initial models are rejected") {
    Case c = http("server.rp");
    ComponentModel broken = adl::parse_model_unchecked(samples::read("broken.arch"));
    CHECK_THROWS_AS(check(ftpl::parse_formula("always [true]"), c.automaton, broken, {}, c.ops),
                    InvalidModel);
  }

  TEST_CASE("oracle cross-check is reported") {
    Case c = http("server.rp");
    CheckOptions opts;
    opts.oracle_crosscheck = true;
    CheckStats stats;
    Verdict v = check(samples::cache_connected_formula(), c.automaton, c.model, opts, c.ops, &stats);
    CHECK(std::holds_alternative<Holds>(v));
    CHECK(stats.oracle == true);
  }
}
