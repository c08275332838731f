// Copyright 2026 The privdiff Authors
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

#ifndef PRIVDIFF_TOOLS_COMMANDS_H_
#define PRIVDIFF_TOOLS_COMMANDS_H_

#include <ostream>
#include <string>

#include "absl/status/status.h"
#include "privdiff/graph.h"
#include "tools/config.h"

namespace privdiff::tools {

struct CommandOptions {
  std::string out_dir = ".";
  bool svg = false;
  bool wide = false;  // per-node columns in the trajectory CSV
};

// 0 on success, 2 for input errors, 3 for numerical failures.
int ExitCode(const absl::Status& status);

// Each command prints a human-readable summary to `log` and writes its CSV
// artifacts under options.out_dir.
absl::Status RunSpectral(const Graph& g, const CommandOptions& options,
                         std::ostream& log);
absl::Status RunClassify(const ExperimentConfig& config,
                         const CommandOptions& options, std::ostream& log);
absl::Status RunSimulate(const ExperimentConfig& config,
                         const CommandOptions& options, std::ostream& log);
absl::Status RunEquilibrium(const ExperimentConfig& config,
                            const CommandOptions& options, std::ostream& log);
absl::Status RunCtmc(const ExperimentConfig& config,
                     const CommandOptions& options, std::ostream& log);
absl::Status RunPhase(const ExperimentConfig& config,
                      const CommandOptions& options, std::ostream& log);

}  // namespace privdiff::tools

#endif  // PRIVDIFF_TOOLS_COMMANDS_H_
