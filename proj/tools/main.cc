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

// privdiff command-line front end.

#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "privdiff/graph.h"
#include "privdiff/status_macros.h"
#include "tools/commands.h"
#include "tools/config.h"
#include "tools/presets.h"

namespace privdiff::tools {
namespace {

struct GlobalFlags {
  std::string config;
  std::string preset;
  std::optional<uint64_t> seed;
  CommandOptions command;
};

struct GraphFlags {
  std::optional<size_t> complete, ring, star, erdos_renyi;
  double p = 0.0;
  uint64_t graph_seed = 1;
  std::string edge_list;
};

absl::StatusOr<ExperimentConfig> ResolveConfig(const GlobalFlags& flags) {
  if (!flags.config.empty() && !flags.preset.empty()) {
    return absl::InvalidArgumentError("give either --config or --preset, not both");
  }
  absl::StatusOr<ExperimentConfig> config =
      !flags.preset.empty() ? LoadPreset(flags.preset)
      : !flags.config.empty()
          ? LoadConfigFile(flags.config)
          : absl::InvalidArgumentError("this command needs --config PATH or --preset NAME");
  if (config.ok() && flags.seed.has_value()) config->run.seed = *flags.seed;
  return config;
}

absl::StatusOr<Graph> ResolveGraph(const GlobalFlags& flags, const GraphFlags& gf) {
  const int given = gf.complete.has_value() + gf.ring.has_value() +
                    gf.star.has_value() + gf.erdos_renyi.has_value() +
                    !gf.edge_list.empty();
  if (given > 1) return absl::InvalidArgumentError("give at most one graph source");
  if (!gf.edge_list.empty()) {
    PRIVDIFF_ASSIGN_OR_RETURN(EdgeListLoad load, LoadEdgeListFile(gf.edge_list));
    if (load.self_loops + load.duplicate_edges > 0) {
      std::cerr << "note: dropped " << load.self_loops << " self-loops and "
                << load.duplicate_edges << " duplicate edges\n";
    }
    return std::move(load.graph);
  }
  if (gf.complete) return CompleteGraph(*gf.complete);
  if (gf.ring) return RingGraph(*gf.ring);
  if (gf.star) return StarGraph(*gf.star);
  if (gf.erdos_renyi) return ErdosRenyiGraph(*gf.erdos_renyi, gf.p, gf.graph_seed);
  PRIVDIFF_ASSIGN_OR_RETURN(ExperimentConfig config, ResolveConfig(flags));
  return BuildGraph(config.graph);
}

int Main(int argc, char** argv) {
  CLI::App app{"Privacy-aware competitive diffusion on networks"};
  app.require_subcommand(0, 1);
  GlobalFlags flags;
  bool list_presets = false;
  app.add_option("--config", flags.config, "experiment config file");
  app.add_option("--preset", flags.preset, "named built-in experiment");
  app.add_option("--seed", flags.seed, "override the run seed");
  app.add_option("--out", flags.command.out_dir, "output directory")
      ->capture_default_str();
  app.add_flag("--svg", flags.command.svg, "also write SVG line charts");
  app.add_flag("--wide", flags.command.wide, "per-node trajectory columns");
  app.add_flag("--list-presets", list_presets, "print the built-in presets");

  GraphFlags gf;
  CLI::App* spectral = app.add_subcommand("spectral", "largest adjacency eigenvalue");
  spectral->add_option("--complete", gf.complete, "complete graph K_N");
  spectral->add_option("--ring", gf.ring, "cycle on N nodes");
  spectral->add_option("--star", gf.star, "star on N nodes");
  spectral->add_option("--erdos-renyi", gf.erdos_renyi, "G(N, p) random graph");
  spectral->add_option("--p", gf.p, "edge probability for --erdos-renyi");
  spectral->add_option("--graph-seed", gf.graph_seed, "seed for --erdos-renyi");
  spectral->add_option("--edge-list", gf.edge_list, "whitespace edge-list file");
  CLI::App* classify = app.add_subcommand("classify", "regime verdict");
  CLI::App* simulate = app.add_subcommand("simulate", "mean-field trajectory");
  CLI::App* equilibrium =
      app.add_subcommand("equilibrium", "closed-form equilibrium and stability");
  CLI::App* ctmc = app.add_subcommand("ctmc", "stochastic simulation batch");
  CLI::App* phase = app.add_subcommand("phase", "regime sweep grid");
  for (CLI::App* sub : {spectral, classify, simulate, equilibrium, ctmc, phase}) {
    sub->fallthrough();
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (list_presets) {
    for (const Preset& p : Presets()) std::cout << p.name << "  " << p.summary << "\n";
    return 0;
  }

  absl::Status status;
  if (spectral->parsed()) {
    absl::StatusOr<Graph> g = ResolveGraph(flags, gf);
    status = g.ok() ? RunSpectral(*g, flags.command, std::cout) : g.status();
  } else if (app.get_subcommands().empty()) {
    std::cerr << app.help();
    return 2;
  } else {
    absl::StatusOr<ExperimentConfig> config = ResolveConfig(flags);
    if (!config.ok()) {
      status = config.status();
    } else if (classify->parsed()) {
      status = RunClassify(*config, flags.command, std::cout);
    } else if (simulate->parsed()) {
      status = RunSimulate(*config, flags.command, std::cout);
    } else if (equilibrium->parsed()) {
      status = RunEquilibrium(*config, flags.command, std::cout);
    } else if (ctmc->parsed()) {
      status = RunCtmc(*config, flags.command, std::cout);
    } else {
      status = RunPhase(*config, flags.command, std::cout);
    }
  }
  if (!status.ok()) std::cerr << "error: " << status.message() << "\n";
  return ExitCode(status);
}

}  // namespace
}  // namespace privdiff::tools

int main(int argc, char** argv) { return privdiff::tools::Main(argc, argv); }
