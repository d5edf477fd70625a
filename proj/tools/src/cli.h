// Copyright 2026 The SOAB Authors
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

#ifndef SOAB_TOOLS_CLI_H_
#define SOAB_TOOLS_CLI_H_

#include <iosfwd>
#include <string>
#include <vector>

namespace soab::cli {

// Process exit codes.
inline constexpr int kOk = 0;
inline constexpr int kUsage = 1;
inline constexpr int kInvariant = 2;
inline constexpr int kDependency = 3;

// Runs one command line (args[0] is the program name) and returns the exit
// code. Normal output goes to `out`, diagnostics to `err`.
int Run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

// Artifact names inside a run directory.
inline constexpr const char* kConfigFile = "config.cfg";
inline constexpr const char* kAbstractionFile = "abstraction.soab";
inline constexpr const char* kStrategyFile = "strategy.sost";       // symmetric
inline constexpr const char* kStrategyFile1 = "strategy_p1.sost";   // asymmetric, player 1
inline constexpr const char* kStrategyFile2 = "strategy_p2.sost";   // asymmetric, player 2
inline constexpr const char* kCurveFile = "curve.csv";
inline constexpr const char* kEvalFile = "eval.json";
inline constexpr const char* kSummaryFile = "summary.json";

}  // namespace soab::cli

#endif  // SOAB_TOOLS_CLI_H_
