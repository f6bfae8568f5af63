/*
 * Copyright (c) 2026, The ctsf Authors
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

#ifndef CTSF_CLI_CLI_HH_
#define CTSF_CLI_CLI_HH_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace ctsf::cli {

enum ExitCode : int {
  kPass = 0,
  kUsage = 1,
  kBoundExceeded = 2,
  kCheckFailed = 3,
};

/// Resolved settings of one run. Flags override the config file, which
/// overrides the defaults below.
struct RunConfig {
  int n = 1;
  std::vector<std::uint64_t> values;  // defaults to 1..n
  std::optional<int> budget;          // defaults to n - 1
  std::string mode = "representative";  // calculus | representative | both
  std::size_t max_states = 5'000'000;
  std::string output;                 // empty writes to stdout
  std::string format = "json";        // json | dot | text
  std::string mutate;                 // comma-separated mutation names
  std::optional<int> ti;
  std::vector<std::string> schedule;  // rule instance ids, for trace
  std::vector<std::string> checks;    // empty runs every check, for verify
  unsigned threads = 0;
};

/// Every check `verify` knows, in the order it runs them.
const std::vector<std::string>& check_names();

/// Parses argv (including the subcommand) and runs it. Diagnostics go to
/// `err`; reports go to `out` unless an output file is configured.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

int cmd_explore(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err);
int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace ctsf::cli

#endif  // CTSF_CLI_CLI_HH_
