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

#ifndef RECONFCHECK_ADL_HPP_
#define RECONFCHECK_ADL_HPP_

#include <string>
#include <string_view>

#include "reconfcheck/model.hpp"
#include "reconfcheck/reconfig.hpp"

/**
 * Textual architecture files (`.arch`) and operation recipes (`.ops`).
 *
 *   model      := "model" IDENT "{" item* "}"
 *   item       := component | binding | delegation
 *   component  := ("component" | "composite") IDENT "{" cbody* "}"
 *   cbody      := "class" IDENT | "input" IDENT ":" IDENT
 *               | "output" IDENT ":" IDENT
 *               | "param" IDENT ":" ("int" | "string" | "bool") "=" literal
 *               | "contains" IDENT | "state" ("started" | "stopped")
 *   binding    := "bind" IDENT "." IDENT "->" IDENT "." IDENT
 *   delegation := "delegate" IDENT "." IDENT "->" IDENT "." IDENT
 *
 *   op         := "op" IDENT "{" step+ "}"
 *   step       := "add" component ["in" IDENT]
 *               | "remove" "component" IDENT
 *               | ("bind" | "unbind") IDENT "." IDENT "->" IDENT "." IDENT
 *               | "set" IDENT "." IDENT ":=" intexpr
 *               | "stop" IDENT | "start" IDENT
 *   intexpr    := term { ("+" | "-") term }
 *   term       := factor { "*" factor }
 *   factor     := ["-"] INT | "param" "(" IDENT "." IDENT ")" | "(" intexpr ")"
 *
 * Whitespace is insignificant and `//` starts a line comment. Components
 * without a `state` line are started; components added by a recipe are
 * always inserted stopped, so `state` is rejected inside `add`.
 */
namespace reconf::adl {

/// Parses and validates; throws ParseError or InvalidModel.
ComponentModel parse_model(std::string_view text);

/// Parses without running validate_model.
ComponentModel parse_model_unchecked(std::string_view text);

/// Canonical text: members sorted, one declaration per line.
std::string print_model(const ComponentModel& m);

RecipeSet parse_recipes(std::string_view text);
std::string print_recipes(const RecipeSet& recipes);

std::string print_primitive(const Primitive& p);
std::string print_int_expr(const IntExpr& e);

/// Short hex content hash of the canonical text of `m`.
std::string model_digest(const ComponentModel& m);

}  // namespace reconf::adl

#endif  // RECONFCHECK_ADL_HPP_
