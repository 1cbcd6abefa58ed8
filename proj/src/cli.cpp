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

#include "reconfcheck/cli.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "reconfcheck/adl.hpp"
#include "reconfcheck/checker.hpp"
#include "reconfcheck/errors.hpp"
#include "reconfcheck/report.hpp"

namespace reconf {

namespace fs = std::filesystem;

namespace {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
}

fs::path prepare_dir(const std::string& dir) {
  fs::path p(dir);
  std::error_code ec;
  fs::create_directories(p, ec);
  if (ec) throw UsageError("cannot create '" + dir + "': " + ec.message());
  return p;
}

std::string step_file(std::size_t k) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "step_%03zu.arch", k);
  return buf;
}

struct Inputs {
  std::string model_path;
  std::string ops_path;
  std::string path_path;
};

struct Loaded {
  ComponentModel model;
  OperationTable ops;
  PathExpr path;
};

// Files are read in order model, recipes, path; names in the path must be
// known recipes or `run`.
Loaded load(const Inputs& in, bool need_path) {
  Loaded l;
  l.model = adl::parse_model(read_file(in.model_path));
  if (!in.ops_path.empty()) l.ops = OperationTable(adl::parse_recipes(read_file(in.ops_path)));
  if (need_path) {
    const OperationTable& ops = l.ops;
    l.path = parse_path(read_file(in.path_path),
                        [&ops](const std::string& n) { return ops.contains(n); });
  }
  return l;
}

void add_inputs(CLI::App* cmd, Inputs& in, bool with_path) {
  cmd->add_option("--model", in.model_path, "Initial component model (.arch)")
      ->required();
  cmd->add_option("--ops", in.ops_path, "Reconfiguration recipes (.ops)");
  if (with_path) {
    cmd->add_option("--path", in.path_path, "Reconfiguration path (.rp)")->required();
  }
}

// Configurations reached by following `labels` from `c0`.
std::vector<ComponentModel> replay(const ComponentModel& c0, const OperationTable& ops,
                                   const std::vector<std::string>& labels) {
  std::vector<ComponentModel> out{c0};
  for (const auto& l : labels) {
    out.push_back(apply_evolution(ops.resolve(l), out.back()).result);
  }
  return out;
}

struct CheckArgs {
  Inputs in;
  std::string formula;
  std::string formula_file;
  std::vector<std::string> context;
  std::optional<std::size_t> max_steps;
  bool ignore_params = false;
  bool oracle = false;
  std::string dump_dir;
  bool json = false;
};

int do_check(const CheckArgs& a, std::ostream& out, std::ostream& err) {
  Loaded l = load(a.in, true);
  std::string text = a.formula_file.empty() ? a.formula : read_file(a.formula_file);
  ftpl::Formula f = ftpl::parse_formula(text);
  PathAutomaton aut = build_automaton(l.path);

  CheckOptions opts;
  opts.max_steps = a.max_steps;
  opts.ignore_params = a.ignore_params;
  opts.oracle_crosscheck = a.oracle;
  for (const auto& c : a.context) {
    opts.context.push_back(adl::parse_model_unchecked(read_file(c)));
  }
  CheckStats stats;
  Verdict v = check(f, aut, l.model, opts, l.ops, &stats);

  Report r{ftpl::print_formula(f), print_path(l.path), v, stats};
  if (a.json) {
    out << report_to_json(r) << "\n";
  } else {
    out << report_to_text(r);
  }

  if (a.oracle) {
    bool holds = std::holds_alternative<Holds>(v);
    bool decided = !std::holds_alternative<Unknown>(v);
    if (!stats.oracle) {
      err << "warning: oracle could not decide the formula within its round budget\n";
    } else if (decided && *stats.oracle != holds) {
      err << "warning: oracle disagrees with the checker (oracle: "
          << (*stats.oracle ? "holds" : "fails") << ")\n";
    }
  }

  if (!a.dump_dir.empty()) {
    fs::path dir = prepare_dir(a.dump_dir);
    if (auto fails = std::get_if<Fails>(&v)) {
      std::vector<std::string> labels;
      for (std::size_t k = 1; k < fails->witness.steps.size(); ++k) {
        labels.push_back(fails->witness.steps[k].label);
      }
      auto models = replay(l.model, l.ops, labels);
      for (std::size_t k = 0; k < models.size(); ++k) {
        write_file(dir / step_file(k), adl::print_model(models[k]));
      }
    } else if (auto u = std::get_if<Unknown>(&v)) {
      write_file(dir / "origin.arch", adl::print_model(l.model));
      write_file(dir / "reached.arch", adl::print_model(u->reached));
      write_file(dir / "residual.rp", print_path(u->residual) + "\n");
      if (u->resume) write_file(dir / "resume.ftpl", ftpl::print_formula(*u->resume) + "\n");
    }
  }

  if (std::holds_alternative<Holds>(v)) return kExitHolds;
  if (std::holds_alternative<Fails>(v)) return kExitFails;
  return kExitUnknown;
}

int do_simulate(const Inputs& in, std::size_t steps, const std::string& dump_dir,
                bool json_out, std::ostream& out) {
  Loaded l = load(in, true);
  PathAutomaton aut = build_automaton(l.path);
  std::vector<std::string> labels;
  std::vector<StateId> states{aut.initial()};
  for (std::size_t k = 0; k < steps; ++k) {
    auto t = aut.succ(states.back());
    if (!t) break;
    labels.push_back(t->label);
    states.push_back(t->target);
  }
  auto models = replay(l.model, l.ops, labels);

  std::optional<fs::path> dir;
  if (!dump_dir.empty()) dir = prepare_dir(dump_dir);
  nlohmann::json rows = nlohmann::json::array();
  for (std::size_t k = 0; k < models.size(); ++k) {
    std::string label = k ? labels[k - 1] : "";
    std::string digest = adl::model_digest(models[k]);
    if (dir) write_file(*dir / step_file(k), adl::print_model(models[k]));
    if (json_out) {
      rows.push_back({{"step", k}, {"state", PathAutomaton::name(states[k])},
                      {"label", label}, {"digest", digest}});
    } else {
      out << k << " " << PathAutomaton::name(states[k]) << " "
          << (label.empty() ? "-" : label) << " " << digest << "\n";
    }
  }
  if (json_out) out << rows.dump(2) << "\n";
  return 0;
}

int do_idempotence(const Inputs& in, bool json_out, std::ostream& out) {
  Loaded l = load(in, true);
  if (l.path.is_finite()) throw UsageError("the path has no repeated group");
  std::vector<EvolutionOperation> prefix, cycle;
  for (const auto& n : l.path.prefix) prefix.push_back(l.ops.resolve(n));
  for (const auto& n : l.path.cycle) cycle.push_back(l.ops.resolve(n));
  ComponentModel entry = apply_sequence(prefix, l.model);
  bool exact = is_idempotent_sequence(cycle, entry, false);
  bool structural = is_idempotent_sequence(cycle, entry, true);
  if (json_out) {
    nlohmann::json j{{"cycle", print_path(PathExpr{{}, l.path.cycle})},
                     {"idempotent", exact},
                     {"idempotent_ignoring_params", structural}};
    out << j.dump(2) << "\n";
  } else {
    out << "cycle: " << print_path(PathExpr{{}, l.path.cycle}) << "\n";
    out << "idempotent: " << (exact ? "yes" : "no") << "\n";
    out << "idempotent ignoring parameter values: " << (structural ? "yes" : "no")
        << "\n";
  }
  return exact ? 0 : 1;
}

int do_validate(const std::string& model_path, bool json_out, std::ostream& out) {
  ComponentModel m = adl::parse_model_unchecked(read_file(model_path));
  auto problems = validate_model(m);
  if (json_out) {
    out << nlohmann::json{{"valid", problems.empty()}, {"violations", problems}}.dump(2)
        << "\n";
  } else if (problems.empty()) {
    out << "valid\n";
  } else {
    out << problems.size() << " violation(s):\n";
    for (const auto& p : problems) out << "  " << p << "\n";
  }
  return problems.empty() ? 0 : kExitInvalidModel;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app{"Checks temporal properties of architecture reconfiguration paths",
               "reconfcheck"};
  app.require_subcommand(1);

  CheckArgs ca;
  auto* check_cmd = app.add_subcommand("check", "Check a formula along a path");
  add_inputs(check_cmd, ca.in, true);
  auto* f_inline = check_cmd->add_option("--formula", ca.formula, "Formula text");
  auto* f_file =
      check_cmd->add_option("--formula-file", ca.formula_file, "Formula file (.ftpl)");
  f_inline->excludes(f_file);
  check_cmd->add_option("--context", ca.context,
                        "Model whose component names the formula may use (repeatable)");
  check_cmd->add_option("--max-steps", ca.max_steps, "Bound on explored transitions");
  check_cmd->add_flag("--ignore-params", ca.ignore_params,
                      "Compare configurations without parameter values");
  check_cmd->add_flag("--oracle", ca.oracle, "Cross-check with the brute-force oracle");
  check_cmd->add_option("--dump-dir", ca.dump_dir, "Write witness or residual files here");
  check_cmd->add_flag("--json", ca.json, "Machine-readable report");

  Inputs sim_in;
  std::size_t sim_steps = 0;
  std::string sim_dump;
  bool sim_json = false;
  auto* sim_cmd = app.add_subcommand("simulate", "Apply N steps of a path");
  add_inputs(sim_cmd, sim_in, true);
  sim_cmd->add_option("--steps", sim_steps, "Transitions to apply")->required();
  sim_cmd->add_option("--dump-dir", sim_dump, "Write each configuration here");
  sim_cmd->add_flag("--json", sim_json, "Machine-readable output");

  Inputs idem_in;
  bool idem_json = false;
  auto* idem_cmd = app.add_subcommand("idempotence", "Idempotence of the repeated group");
  add_inputs(idem_cmd, idem_in, true);
  idem_cmd->add_flag("--json", idem_json, "Machine-readable output");

  std::string val_model;
  bool val_json = false;
  auto* val_cmd = app.add_subcommand("validate", "Check structural invariants of a model");
  val_cmd->add_option("--model", val_model, "Component model (.arch)")->required();
  val_cmd->add_flag("--json", val_json, "Machine-readable output");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream o, e2;
    int code = app.exit(e, o, e2);
    out << o.str();
    err << e2.str();
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (*check_cmd) {
      if (ca.formula.empty() && ca.formula_file.empty()) {
        throw UsageError("one of --formula or --formula-file is required");
      }
      return do_check(ca, out, err);
    }
    if (*sim_cmd) return do_simulate(sim_in, sim_steps, sim_dump, sim_json, out);
    if (*idem_cmd) return do_idempotence(idem_in, idem_json, out);
    return do_validate(val_model, val_json, out);
  } catch (const InvalidModel& e) {
    err << "error: " << e.what() << "\n";
    for (std::size_t i = 1; i < e.violations.size(); ++i) {
      err << "  " << e.violations[i] << "\n";
    }
    return kExitInvalidModel;
  } catch (const ParseError& e) {
    err << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ResolutionError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const EvalError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}

}  // namespace reconf
