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

#include "tools/presets.h"

#include <sstream>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "privdiff/status_macros.h"

namespace privdiff::tools {
namespace {

constexpr std::string_view kCoexist = R"ini(
[graph]
source = erdos_renyi
n = 100
p = 0.1
seed = 11

[params]
beta1 = 0.5
delta1 = 1.0
beta2 = 0.4
delta2 = 1.0

[scheme]
type = perfect
gamma1 = 0.4
gamma2 = 0.3

[seeding]
mode = uniform
c1 = 0.05
c2 = 0.05

[run]
t_end = 60
seed = 2026
runs = 8
)ini";

constexpr std::string_view kWinnerTakesAll = R"ini(
[graph]
source = erdos_renyi
n = 100
p = 0.1
seed = 11

[params]
beta1 = 0.5
delta1 = 1.0
beta2 = 0.25
delta2 = 1.0

[scheme]
type = oblivious

[seeding]
mode = uniform
c1 = 0.05
c2 = 0.05

[run]
t_end = 100
seed = 2026
runs = 8

[phase]
axes = sigma
steps = 40
lo1 = 0.0
hi1 = 0.6
lo2 = 0.0
hi2 = 0.6
)ini";

constexpr std::string_view kExtinct = R"ini(
[graph]
source = erdos_renyi
n = 100
p = 0.1
seed = 11

[params]
beta1 = 0.06
delta1 = 1.0
beta2 = 0.05
delta2 = 1.0

[scheme]
type = general
r11 = 0.5
r12 = 0.3
r21 = 0.2
r22 = 0.6

[seeding]
mode = uniform
c1 = 0.2
c2 = 0.2

[run]
t_end = 100
seed = 2026
runs = 8
)ini";

constexpr std::string_view kCompleteCoexist = R"ini(
[graph]
source = complete
n = 100

[params]
beta1 = 0.04
delta1 = 1.0
beta2 = 0.03
delta2 = 1.0

[scheme]
type = general
r11 = 0.5
r12 = 0.3
r21 = 0.2
r22 = 0.6

[seeding]
mode = random_subset
k1 = 5
k2 = 5

[run]
t_end = 60
seed = 2026
runs = 8
)ini";

absl::Status CheckRegime(std::string_view name, const ExperimentConfig& config) {
  PRIVDIFF_ASSIGN_OR_RETURN(Graph g, BuildGraph(config.graph));
  PRIVDIFF_ASSIGN_OR_RETURN(RegimeReport report,
                            ClassifyRegime(config.params, config.scheme, g));
  bool ok = false;
  if (name == "coexist-above-threshold") {
    ok = report.theorem == Theorem::kPerfectSchemeAnyGraph;
  } else if (name == "oblivious-winner-takes-all") {
    const double s1 = config.params.sigma1();
    const double s2 = config.params.sigma2();
    ok = IsOblivious(config.scheme) && s1 > s2 && s2 > report.threshold;
  } else if (name == "extinct-below-threshold") {
    ok = report.theorem == Theorem::kExtinction;
  } else if (name == "complete-graph-coexist") {
    ok = report.theorem == Theorem::kCompleteGraphAnyScheme;
  }
  if (!ok) {
    return absl::InternalError(absl::StrCat(
        "preset ", std::string(name), " does not satisfy its regime (verdict ",
        std::string(VerdictName(report.verdict)), ", strength ", report.effective_strength,
        ", threshold ", report.threshold, ")"));
  }
  return absl::OkStatus();
}

}  // namespace

const std::vector<Preset>& Presets() {
  static const auto* presets = new std::vector<Preset>{
      {"coexist-above-threshold",
       "perfect scheme on a random graph above threshold; both products persist",
       kCoexist},
      {"oblivious-winner-takes-all",
       "no privacy, both strengths above threshold; the weaker product dies out",
       kWinnerTakesAll},
      {"extinct-below-threshold",
       "general scheme with effective strength below threshold; both die out",
       kExtinct},
      {"complete-graph-coexist",
       "general scheme on K_100 above threshold; both products persist",
       kCompleteCoexist},
  };
  return *presets;
}

absl::StatusOr<ExperimentConfig> LoadPreset(std::string_view name) {
  for (const Preset& preset : Presets()) {
    if (preset.name != name) continue;
    std::istringstream in{std::string(preset.config)};
    PRIVDIFF_ASSIGN_OR_RETURN(ExperimentConfig config,
                              ParseConfig(in, std::string(name)));
    PRIVDIFF_RETURN_IF_ERROR(CheckRegime(name, config));
    return config;
  }
  std::vector<std::string> names;
  for (const Preset& preset : Presets()) names.emplace_back(preset.name);
  return absl::InvalidArgumentError(absl::StrCat(
      "unknown preset '", std::string(name), "' (known: ", absl::StrJoin(names, ", "), ")"));
}

}  // namespace privdiff::tools
