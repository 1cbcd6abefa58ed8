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

#include "support/suites.hpp"

#include <exception>

#include "reconfcheck/adl.hpp"
#include "reconfcheck/oracle.hpp"

namespace reconf::testgen {

void SuiteResult::fail(std::string msg) {
  ++failures;
  if (messages.size() < 5) messages.push_back(std::move(msg));
}

namespace {

std::vector<EvolutionOperation> resolve_all(const std::vector<std::string>& labels,
                                            const OperationTable& ops) {
  std::vector<EvolutionOperation> out;
  for (const auto& l : labels) out.push_back(ops.resolve(l));
  return out;
}

// Whether the cycle of `in` is idempotent at its entry configuration, in the
// comparison mode the checker uses for `in.formula`.
bool passes_gate(const Instance& in, const OperationTable& ops) {
  if (in.path.is_finite()) return false;
  PathAutomaton a(in.path);
  bool ignore = effective_ignore_params(in.formula, ops, false, &a);
  ComponentModel entry = apply_sequence(resolve_all(in.path.prefix, ops), in.model);
  return is_idempotent_sequence(resolve_all(in.path.cycle, ops), entry, ignore);
}

std::string describe(const Instance& in) {
  return "formula `" + ftpl::print_formula(in.formula) + "` path `" + print_path(in.path) +
         "`\n" + adl::print_model(in.model) + adl::print_recipes(in.recipes);
}

std::optional<bool> decided(const Verdict& v) {
  if (std::holds_alternative<Holds>(v)) return true;
  if (std::holds_alternative<Fails>(v)) return false;
  return std::nullopt;
}

Instance random_gated_instance(Rng& rng, OperationTable& ops) {
  for (;;) {
    Instance in = random_instance(rng);
    ops = OperationTable(in.recipes);
    if (passes_gate(in, ops)) return in;
  }
}

}  // namespace

SuiteResult model_roundtrips(Rng& rng, std::size_t n) {
  SuiteResult r;
  for (std::size_t i = 0; i < n; ++i) {
    Universe u = random_universe(rng);
    ComponentModel m = random_model(rng, u);
    ++r.cases;
    std::string text = adl::print_model(m);
    try {
      ComponentModel back = adl::parse_model(text);
      if (!model_equal(back, m) || adl::print_model(back) != text) {
        r.fail("model differs after round-trip:\n" + text);
      }
    } catch (const std::exception& e) {
      r.fail(std::string(e.what()) + "\n" + text);
    }
  }
  return r;
}

SuiteResult recipe_roundtrips(Rng& rng, std::size_t n) {
  SuiteResult r;
  for (std::size_t i = 0; i < n; ++i) {
    Universe u = random_universe(rng);
    RecipeSet recipes = random_recipes(rng, u);
    ++r.cases;
    std::string text = adl::print_recipes(recipes);
    try {
      if (adl::parse_recipes(text) != recipes) r.fail("recipes differ:\n" + text);
    } catch (const std::exception& e) {
      r.fail(std::string(e.what()) + "\n" + text);
    }
  }
  return r;
}

SuiteResult path_roundtrips(Rng& rng, std::size_t n) {
  SuiteResult r;
  for (std::size_t i = 0; i < n; ++i) {
    Universe u = random_universe(rng);
    RecipeSet recipes = random_recipes(rng, u);
    PathExpr p = random_path(rng, recipes);
    OperationTable ops(recipes);
    ++r.cases;
    std::string text = print_path(p);
    try {
      PathExpr back = parse_path(text, [&](const std::string& l) { return ops.contains(l); });
      if (!(back == p)) r.fail("path differs: " + text);
    } catch (const std::exception& e) {
      r.fail(std::string(e.what()) + ": " + text);
    }
  }
  return r;
}

SuiteResult formula_roundtrips(Rng& rng, std::size_t n) {
  SuiteResult r;
  while (r.cases < n) {
    Instance in = random_instance(rng);
    ++r.cases;
    std::string text = ftpl::print_formula(in.formula);
    try {
      ftpl::Formula back = ftpl::parse_formula(text);
      if (!(back == in.formula) || ftpl::print_formula(back) != text) {
        r.fail("formula differs: " + text);
      }
    } catch (const std::exception& e) {
      r.fail(std::string(e.what()) + ": " + text);
    }
  }
  return r;
}

SuiteResult topological_idempotence(Rng& rng, std::size_t n) {
  SuiteResult r;
  for (int kind = 0; kind < 4; ++kind) {
    for (std::size_t i = 0; i < n; ++i) {
      Universe u = random_universe(rng);
      ComponentModel m = random_model(rng, u);
      Primitive op = random_topological(rng, u, kind);
      ++r.cases;
      ComponentModel once = apply_primitive(op, m).result;
      ComponentModel twice = apply_primitive(op, once).result;
      if (!model_equal(once, twice)) {
        r.fail("not idempotent: " + adl::print_primitive(op) + "\n" + adl::print_model(m));
      } else if (!validate_model(once).empty()) {
        r.fail("invalid result of " + adl::print_primitive(op) + "\n" + adl::print_model(m));
      }
    }
  }
  return r;
}

SuiteResult commuting_pairs(Rng& rng, std::size_t n) {
  SuiteResult r;
  std::size_t attempts = 0;
  while (r.cases < n && attempts < 200 * n) {
    ++attempts;
    Universe u = random_universe(rng);
    Primitive f = random_topological(rng, u, static_cast<int>(pick(rng, 4)));
    Primitive g = random_topological(rng, u, static_cast<int>(pick(rng, 4)));
    std::vector<ComponentModel> sample;
    for (int k = 0; k < 3; ++k) sample.push_back(random_model(rng, u));

    auto ap = [](const Primitive& p, const ComponentModel& m) {
      return apply_primitive(p, m).result;
    };
    bool hypotheses = true;
    bool nontrivial = false;
    for (const auto& m : sample) {
      ComponentModel fm = ap(f, m);
      hypotheses = hypotheses && model_equal(ap(f, fm), fm) &&
                   model_equal(ap(g, ap(g, fm)), ap(g, fm)) &&
                   model_equal(ap(g, ap(f, fm)), ap(f, ap(g, fm)));
      nontrivial = nontrivial || !model_equal(ap(g, fm), m);
    }
    if (!hypotheses || !nontrivial) continue;

    ++r.cases;
    std::vector<EvolutionOperation> seq{f, g};
    for (const auto& m : sample) {
      ComponentModel once = ap(g, ap(f, m));
      ComponentModel twice = ap(g, ap(f, once));
      if (!model_equal(once, twice) || !is_idempotent_sequence(seq, m, false)) {
        r.fail("composition not idempotent: " + adl::print_primitive(f) + "; " +
               adl::print_primitive(g) + "\n" + adl::print_model(m));
      }
    }
  }
  return r;
}

SuiteResult oracle_equivalence(Rng& rng, std::size_t n) {
  SuiteResult r;
  while (r.cases < n) {
    OperationTable ops;
    Instance in = random_gated_instance(rng, ops);
    ++r.cases;
    try {
      PathAutomaton a(in.path);
      CheckStats stats;
      Verdict v = check(in.formula, a, in.model, {}, ops, &stats);
      termination_ledger().record(stats);
      if (stats.max_instance_transitions > 2 * stats.automaton_states) {
        r.fail("transition bound exceeded: " + describe(in));
      }
      auto got = decided(v);
      bool ignore = effective_ignore_params(in.formula, ops, false, &a);
      oracle::ConcreteLasso l =
          oracle::unfold_to_lasso(a, ops, in.model, oracle::kDefaultMaxRounds, ignore);
      auto want = oracle::oracle_eval(in.formula, l);
      auto naive = oracle::oracle_eval_naive(in.formula, l);
      if (!got) {
        r.fail("no verdict: " + describe(in));
      } else if (!want || *got != *want) {
        r.fail("checker " + std::string(*got ? "holds" : "fails") + " vs oracle " +
               (want ? (*want ? "holds" : "fails") : "undecided") + ": " + describe(in));
      } else if (naive && *naive != *want) {
        r.fail("naive oracle disagrees: " + describe(in));
      }
    } catch (const std::exception& e) {
      r.fail(std::string(e.what()) + ": " + describe(in));
    }
  }
  return r;
}

SuiteResult bounded_replay(Rng& rng, std::size_t n) {
  SuiteResult r;
  while (r.cases < n) {
    OperationTable ops;
    Instance in = random_gated_instance(rng, ops);
    ++r.cases;
    try {
      PathAutomaton a(in.path);
      CheckStats full_stats;
      auto full = decided(check(in.formula, a, in.model, {}, ops, &full_stats));
      termination_ledger().record(full_stats);

      CheckOptions opts;
      opts.max_steps = static_cast<std::size_t>(range(rng, 0, 12));
      CheckStats stats;
      Verdict v = check(in.formula, a, in.model, opts, ops, &stats);
      termination_ledger().record(stats);

      if (!full) {
        r.fail("no unbounded verdict: " + describe(in));
      } else if (std::holds_alternative<Fails>(v)) {
        if (*full) r.fail("bounded failure of a holding formula: " + describe(in));
      } else if (std::holds_alternative<Holds>(v)) {
        if (!*full) r.fail("bounded success of a failing formula: " + describe(in));
      } else {
        const auto& u = std::get<Unknown>(v);
        if (!u.resume) {
          ++r.skipped;  // no replayable remainder
          continue;
        }
        CheckOptions resume_opts;
        resume_opts.context.push_back(in.model);
        Verdict replay = check(*u.resume, PathAutomaton(u.residual), u.reached, resume_opts, ops);
        auto again = decided(replay);
        if (!again || *again != *full) {
          r.fail("replay of `" + ftpl::print_formula(*u.resume) + "` on `" +
                 print_path(u.residual) + "` differs: " + describe(in));
        }
      }
    } catch (const std::exception& e) {
      r.fail(std::string(e.what()) + ": " + describe(in));
    }
  }
  return r;
}

}  // namespace reconf::testgen
