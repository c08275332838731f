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

#ifndef PRIVDIFF_TOOLS_CONFIG_H_
#define PRIVDIFF_TOOLS_CONFIG_H_

#include <cstdint>
#include <istream>
#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "privdiff/graph.h"
#include "privdiff/privacy.h"

namespace privdiff::tools {

struct GraphSource {
  enum class Kind { kGenerator, kEdgeList };
  Kind kind = Kind::kGenerator;
  GeneratorSpec generator;
  std::string path;
  uint64_t seed = 1;  // generator randomness (Erdos-Renyi only)
};

struct SchemeSpec {
  enum class Type { kGeneral, kPerfect, kOblivious };
  Type type = Type::kOblivious;
  double gamma1 = 0.0;  // kPerfect only
  double gamma2 = 0.0;
};

struct SeedingSpec {
  enum class Mode { kUniform, kRandomSubset };
  Mode mode = Mode::kUniform;
  double c1 = 0.05;  // kUniform: initial p1, p2 at every node
  double c2 = 0.05;
  size_t k1 = 1;  // kRandomSubset: seeded adopter counts
  size_t k2 = 1;
};

struct RunSpec {
  double t_end = 50.0;
  double dt = 0.0;  // 0 picks the stability-limited default
  uint64_t seed = 1;
  size_t runs = 10;
  size_t grid_points = 200;
  double window_start = -1.0;  // negative: 0.8 * t_end
};

struct PhaseSpec {
  enum class Axes { kGamma, kSigma };
  Axes axes = Axes::kGamma;
  size_t steps = 50;
  double lo1 = 0.0, hi1 = 1.0;
  double lo2 = 0.0, hi2 = 1.0;
};

struct ExperimentConfig {
  std::string name;
  GraphSource graph;
  DiffusionParams params;
  SchemeSpec scheme_spec;
  AnyScheme scheme;
  SeedingSpec seeding;
  RunSpec run;
  PhaseSpec phase;
};

// Parses the [section] / key = value format. Every section except [params]
// is optional; unknown sections and keys are rejected.
absl::StatusOr<ExperimentConfig> ParseConfig(std::istream& in,
                                             const std::string& name);
absl::StatusOr<ExperimentConfig> LoadConfigFile(const std::string& path);

absl::StatusOr<Graph> BuildGraph(const GraphSource& source);

}  // namespace privdiff::tools

#endif  // PRIVDIFF_TOOLS_CONFIG_H_
