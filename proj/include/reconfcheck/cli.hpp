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

#ifndef RECONFCHECK_CLI_HPP_
#define RECONFCHECK_CLI_HPP_

#include <ostream>
#include <string>
#include <vector>

namespace reconf {

enum ExitCode : int {
  kExitHolds = 0,
  kExitFails = 1,
  kExitUnknown = 2,
  kExitUsage = 3,  // also parse and resolution errors
  kExitInvalidModel = 4,
};

/**
 * Runs one command line; `args` excludes the program name.
 *
 *   check       --model M --path P (--formula F | --formula-file F)
 *               [--ops O] [--context M]... [--max-steps N] [--ignore-params] [--oracle]
 *               [--dump-dir D] [--json]
 *   simulate    --model M --path P --steps N [--ops O] [--dump-dir D] [--json]
 *   idempotence --model M --path P [--ops O] [--json]
 *   validate    --model M [--json]
 */
int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err);

}  // namespace reconf

#endif  // RECONFCHECK_CLI_HPP_
