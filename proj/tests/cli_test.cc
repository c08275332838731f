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

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <gmock/gmock.h>
#include <gtest/gtest.h>

#include "testing/status_matchers.h"
#include "tools/commands.h"
#include "tools/config.h"
#include "tools/presets.h"

namespace privdiff::tools {
namespace {

using ::testing::HasSubstr;
using ::testing::StartsWith;
using ::privdiff::testing::StatusIs;

absl::StatusOr<ExperimentConfig> Parse(const std::string& text) {
  std::istringstream in(text);
  return ParseConfig(in, "test");
}

std::string ReadFile(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

std::filesystem::path FreshDir(const std::string& name) {
  auto dir = std::filesystem::path(::testing::TempDir()) / ("privdiff_cli_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

TEST(ConfigTest, ParsesAllSections) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(ExperimentConfig c, Parse(R"(
# comment
[graph]
source = erdos_renyi
n = 30
p = 0.2
seed = 4
[params]
beta1 = 0.5
delta1 = 1
beta2 = 0.4
delta2 = 2
[scheme]
type = perfect
gamma1 = 0.4
gamma2 = 0.3
[seeding]
mode = random_subset
k1 = 3
k2 = 2
[run]
t_end = 12
seed = 99
runs = 4
[phase]
axes = sigma
steps = 7
)"));
  EXPECT_EQ(c.graph.generator.n, 30);
  EXPECT_EQ(c.graph.seed, 4);
  EXPECT_EQ(c.params.delta2(), 2.0);
  EXPECT_EQ(c.scheme_spec.type, SchemeSpec::Type::kPerfect);
  EXPECT_TRUE(IsPerfect(std::get<PrivacyScheme>(c.scheme)));
  EXPECT_DOUBLE_EQ(RatesOf(c.scheme).r11, 0.4);
  EXPECT_DOUBLE_EQ(RatesOf(c.scheme).r22, 0.3);
  EXPECT_EQ(c.seeding.mode, SeedingSpec::Mode::kRandomSubset);
  EXPECT_EQ(c.seeding.k1, 3);
  EXPECT_EQ(c.run.t_end, 12.0);
  EXPECT_EQ(c.run.seed, 99);
  EXPECT_EQ(c.phase.axes, PhaseSpec::Axes::kSigma);
  EXPECT_EQ(c.phase.steps, 7);
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, BuildGraph(c.graph));
  EXPECT_EQ(g.num_nodes(), 30);
}

TEST(ConfigTest, RejectsUnknownKeysAndSections) {
  constexpr char kParams[] =
      "[graph]\nsource=ring\nn=6\n[params]\nbeta1=1\ndelta1=1\nbeta2=1\ndelta2=1\n";
  PRIVDIFF_EXPECT_OK(Parse(kParams).status());
  EXPECT_THAT(Parse(std::string(kParams) + "gamma=1\n").status(),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("gamma")));
  EXPECT_THAT(Parse(std::string(kParams) + "[extra]\nx=1\n").status(),
              StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("extra")));
  EXPECT_THAT(Parse("[graph]\nsource=complete\nn=5\n").status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Parse(std::string(kParams) + "[scheme]\ntype=general\nr11=2\nr12=0\n"
                                           "r21=0\nr22=0.5\n")
                  .status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
  EXPECT_THAT(Parse("[params]\nbeta1=abc\ndelta1=1\nbeta2=1\ndelta2=1\n").status(),
              StatusIs(absl::StatusCode::kInvalidArgument));
}

TEST(ConfigTest, MissingFileIsNotFound) {
  EXPECT_THAT(LoadConfigFile("/nonexistent/privdiff.ini").status(),
              StatusIs(absl::StatusCode::kNotFound));
}

TEST(PresetTest, AllPresetsLoad) {
  ASSERT_EQ(Presets().size(), 4);
  for (const Preset& p : Presets()) {
    SCOPED_TRACE(std::string(p.name));
    PRIVDIFF_ASSERT_OK_AND_ASSIGN(ExperimentConfig c, LoadPreset(p.name));
    EXPECT_EQ(c.name, p.name);
    PRIVDIFF_EXPECT_OK(BuildGraph(c.graph).status());
  }
  EXPECT_THAT(LoadPreset("nope").status(), StatusIs(absl::StatusCode::kInvalidArgument, HasSubstr("known")));
}

TEST(ExitCodeTest, Mapping) {
  EXPECT_EQ(ExitCode(absl::OkStatus()), 0);
  EXPECT_EQ(ExitCode(absl::InvalidArgumentError("")), 2);
  EXPECT_EQ(ExitCode(absl::NotFoundError("")), 2);
  EXPECT_EQ(ExitCode(absl::FailedPreconditionError("")), 2);
  EXPECT_EQ(ExitCode(absl::OutOfRangeError("")), 2);
  EXPECT_EQ(ExitCode(absl::ResourceExhaustedError("")), 3);
  EXPECT_EQ(ExitCode(absl::AbortedError("")), 3);
  EXPECT_EQ(ExitCode(absl::InternalError("")), 3);
}

TEST(CommandTest, ClassifyReportsPresetVerdicts) {
  const auto dir = FreshDir("classify");
  CommandOptions opts;
  opts.out_dir = dir.string();
  const std::pair<const char*, const char*> cases[] = {
      {"coexist-above-threshold", "Theorem 1"},
      {"extinct-below-threshold", "Theorem 3"},
      {"complete-graph-coexist", "Theorem 2"},
  };
  for (const auto& [name, theorem] : cases) {
    PRIVDIFF_ASSERT_OK_AND_ASSIGN(ExperimentConfig c, LoadPreset(name));
    std::ostringstream log;
    PRIVDIFF_ASSERT_OK(RunClassify(c, opts, log));
    EXPECT_THAT(log.str(), HasSubstr(theorem)) << name;
    EXPECT_TRUE(std::filesystem::exists(dir / "classify.csv"));
  }
}

TEST(CommandTest, EquilibriumBelowThresholdIsZero) {
  const auto dir = FreshDir("equilibrium_zero");
  CommandOptions opts;
  opts.out_dir = dir.string();
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(ExperimentConfig c, LoadPreset("extinct-below-threshold"));
  std::ostringstream log;
  PRIVDIFF_ASSERT_OK(RunEquilibrium(c, opts, log));
  EXPECT_THAT(log.str(), HasSubstr("equilibrium = zero"));
  EXPECT_THAT(log.str(), HasSubstr("stability = Stable"));
}

TEST(CommandTest, EquilibriumRefusesGeneralSchemeOffCompleteGraph) {
  const auto dir = FreshDir("equilibrium_refused");
  CommandOptions opts;
  opts.out_dir = dir.string();
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(ExperimentConfig c, LoadPreset("coexist-above-threshold"));
  c.scheme_spec.type = SchemeSpec::Type::kGeneral;
  c.scheme = *PrivacyScheme::Create(0.5, 0.3, 0.2, 0.6);
  std::ostringstream log;
  const absl::Status s = RunEquilibrium(c, opts, log);
  EXPECT_THAT(s, StatusIs(absl::StatusCode::kFailedPrecondition,
                          HasSubstr("no closed-form equilibrium")));
  EXPECT_EQ(ExitCode(s), 2);
}

TEST(CommandTest, EquilibriumWritesBothFiles) {
  const auto dir = FreshDir("equilibrium_ok");
  CommandOptions opts;
  opts.out_dir = dir.string();
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(ExperimentConfig c, LoadPreset("coexist-above-threshold"));
  std::ostringstream log;
  PRIVDIFF_ASSERT_OK(RunEquilibrium(c, opts, log));
  EXPECT_THAT(ReadFile(dir / "equilibrium.csv"), StartsWith("node,p1_star,p2_star\r\n"));
  EXPECT_THAT(log.str(), HasSubstr("Stable"));
}

TEST(CommandTest, OutputsAreDeterministic) {
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(ExperimentConfig c, LoadPreset("complete-graph-coexist"));
  c.run.runs = 3;
  c.run.t_end = 10.0;
  c.phase.steps = 5;
  std::string first[3];
  for (int rep = 0; rep < 2; ++rep) {
    const auto dir = FreshDir("det" + std::to_string(rep));
    CommandOptions opts;
    opts.out_dir = dir.string();
    std::ostringstream log;
    PRIVDIFF_ASSERT_OK(RunSimulate(c, opts, log));
    PRIVDIFF_ASSERT_OK(RunCtmc(c, opts, log));
    PRIVDIFF_ASSERT_OK(RunPhase(c, opts, log));
    const std::string got[3] = {ReadFile(dir / "trajectory.csv"),
                                ReadFile(dir / "ctmc_summary.csv"),
                                ReadFile(dir / "phase.csv")};
    for (int k = 0; k < 3; ++k) {
      EXPECT_FALSE(got[k].empty());
      if (rep == 0) {
        first[k] = got[k];
      } else {
        EXPECT_EQ(got[k], first[k]);
      }
    }
    EXPECT_TRUE(std::filesystem::exists(dir / "ctmc_run_0000.csv"));
  }
}

TEST(CommandTest, SpectralWritesCsv) {
  const auto dir = FreshDir("spectral");
  CommandOptions opts;
  opts.out_dir = dir.string();
  PRIVDIFF_ASSERT_OK_AND_ASSIGN(Graph g, CompleteGraph(10));
  std::ostringstream log;
  PRIVDIFF_ASSERT_OK(RunSpectral(g, opts, log));
  EXPECT_THAT(log.str(), HasSubstr("9"));
  EXPECT_TRUE(std::filesystem::exists(dir / "spectral.csv"));
}

}  // namespace
}  // namespace privdiff::tools
