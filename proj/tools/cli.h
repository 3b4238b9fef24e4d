// Copyright 2026 The qmcdisc Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Command-line front end. Parsing produces a RunConfig that is validated
// before anything is computed; run() dispatches on the subcommand.

#ifndef QMCDISC_TOOLS_CLI_H_
#define QMCDISC_TOOLS_CLI_H_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "qmcdisc/discrepancy.h"

namespace qmcdisc::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitError = 1;
inline constexpr int kExitValidation = 2;
inline constexpr int kExitBudget = 3;
inline constexpr int kExitSelfTest = 4;

struct RunConfig {
  std::string command;
  std::vector<int> bases{2, 3};
  std::string variant = "halton";
  uint64_t n = 0;
  std::vector<uint64_t> n_list;
  int64_t q = 0;
  double p = 2.0;  // +infinity for "inf"
  bool exact = false;
  uint64_t samples = 100000;
  uint64_t seed = 1;
  int depth = 0;                 // disc --at: truncation depth (0 = default)
  std::vector<double> at;        // disc: evaluate D at this point only
  std::string input;             // disc: point-set manifest
  std::string format = "json";   // csv | json
  std::string out;               // empty: stdout
  std::string samples_out;       // clt: optional CSV of the Y values
  unsigned threads = 0;
  int max_order = 6;             // clt
  std::optional<uint64_t> perm_seed;  // generalized-halton
  int block_cases = 200;         // selftest
  int reconstruction_cases = 50;
  bool inject_failure = false;
  Budgets budgets;
};

// "a..b" -> powers of two in [a, b]; otherwise a comma list.
std::vector<uint64_t> parse_n_list(const std::string& text);
// Accepts a positive real or "inf".
double parse_p(const std::string& text);

// args excludes the program name. Applies QMCDISC_*_BUDGET environment
// variables, then flags. Throws ValidationError for bad input; help requests
// throw HelpRequested carrying the text.
RunConfig parse_args(const std::vector<std::string>& args);

struct HelpRequested {
  std::string text;
};

nlohmann::json config_to_json(const RunConfig& config);
RunConfig config_from_json(const nlohmann::json& j);

// Runs one validated command, writing results to config.out or `out`.
// Returns an exit code; library errors are mapped, not rethrown.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

// parse_args + run with error mapping; what main() calls.
int main_entry(const std::vector<std::string>& args, std::ostream& out,
               std::ostream& err);

}  // namespace qmcdisc::cli

#endif  // QMCDISC_TOOLS_CLI_H_
