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

#include "tools/commands.h"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <vector>

#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "privdiff/csv.h"
#include "privdiff/ctmc.h"
#include "privdiff/dynamics.h"
#include "privdiff/equilibrium.h"
#include "privdiff/privacy.h"
#include "privdiff/stability.h"
#include "privdiff/status_macros.h"
#include "tools/svg.h"

namespace privdiff::tools {
namespace {

absl::StatusOr<std::ofstream> OpenOutput(const CommandOptions& options,
                                         const std::string& file) {
  std::error_code ec;
  std::filesystem::create_directories(options.out_dir, ec);
  if (ec) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot create output directory ", options.out_dir, ": ", ec.message()));
  }
  const std::filesystem::path path = std::filesystem::path(options.out_dir) / file;
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    return absl::InvalidArgumentError(absl::StrCat("cannot write ", path.string()));
  }
  return out;
}

std::string RegimeLine(const RegimeReport& r) {
  if (r.theorem == Theorem::kNone) return std::string(VerdictName(r.verdict));
  return absl::StrCat(std::string(VerdictName(r.verdict)), " (",
                      std::string(TheoremName(r.theorem)), ")");
}

// Label for aggregate curves: sums of per-node adoption probabilities.
constexpr char kExpectedAdopters[] = "expected adopters";

absl::StatusOr<NodeState> InitialState(const ExperimentConfig& config, size_t n) {
  if (config.seeding.mode == SeedingSpec::Mode::kUniform) {
    return UniformSeed(n, config.seeding.c1, config.seeding.c2);
  }
  return RandomSubsetSeed(n, config.seeding.k1, config.seeding.k2, config.run.seed);
}

absl::StatusOr<std::vector<NodeLabel>> InitialLabels(const ExperimentConfig& config,
                                                     size_t n) {
  size_t k1 = config.seeding.k1;
  size_t k2 = config.seeding.k2;
  if (config.seeding.mode == SeedingSpec::Mode::kUniform) {
    k1 = static_cast<size_t>(std::llround(config.seeding.c1 * static_cast<double>(n)));
    k2 = static_cast<size_t>(std::llround(config.seeding.c2 * static_cast<double>(n)));
  }
  return SeedLabels(n, k1, k2, config.run.seed);
}

struct EquilibriumResult {
  NodeState state;
  std::string kind;
};

// Equilibrium the long-run dynamics are expected to approach, or an error
// when no closed form applies.
absl::StatusOr<EquilibriumResult> PredictedEquilibrium(
    const ExperimentConfig& config, const Graph& g, const RegimeReport& report) {
  const size_t n = g.num_nodes();
  const ClassifyOptions defaults;
  if (IsOblivious(config.scheme)) {
    const double s1 = config.params.sigma1();
    const double s2 = config.params.sigma2();
    if (s1 == s2) {
      return absl::FailedPreconditionError(
          "oblivious scheme with equal strengths has a continuum of equilibria");
    }
    const double winner = std::max(s1, s2);
    if (std::abs(winner - report.threshold) <= defaults.equality_tol) {
      return absl::FailedPreconditionError(absl::StrCat(
          "at threshold: strength ", winner, " is within ", defaults.equality_tol,
          " of 1/lambda = ", report.threshold, "; equilibrium refused at the boundary"));
    }
    if (winner < report.threshold) return EquilibriumResult{NodeState::Zeros(n), "zero"};
    PRIVDIFF_ASSIGN_OR_RETURN(SisEquilibrium sis, ComputeSisEquilibrium(g, winner));
    EquilibriumResult result{NodeState::Zeros(n), ""};
    if (s1 > s2) {
      result.state.p1 = sis.q;
      result.kind = "single-product (product 1)";
    } else {
      result.state.p2 = sis.q;
      result.kind = "single-product (product 2)";
    }
    return result;
  }
  if (std::abs(report.margin) <= defaults.equality_tol) {
    return absl::FailedPreconditionError(absl::StrCat(
        "at threshold: effective strength ", report.effective_strength,
        " is within ", defaults.equality_tol, " of 1/lambda = ", report.threshold,
        "; equilibrium refused at the boundary"));
  }
  const PrivacyScheme& scheme = std::get<PrivacyScheme>(config.scheme);
  switch (report.theorem) {
    case Theorem::kExtinction:
      return EquilibriumResult{NodeState::Zeros(n), "zero"};
    case Theorem::kPerfectSchemeAnyGraph: {
      PRIVDIFF_ASSIGN_OR_RETURN(
          CoexistenceEquilibrium eq,
          CoexistenceEquilibriumPerfect(g, config.params, config.scheme_spec.gamma1,
                                        config.scheme_spec.gamma2));
      return EquilibriumResult{std::move(eq.state), "co-existence"};
    }
    case Theorem::kCompleteGraphAnyScheme: {
      PRIVDIFF_ASSIGN_OR_RETURN(
          CoexistenceEquilibrium eq,
          CoexistenceEquilibriumComplete(n, config.params, scheme));
      return EquilibriumResult{std::move(eq.state), "co-existence"};
    }
    case Theorem::kNone:
      break;
  }
  return absl::FailedPreconditionError(
      "no closed-form equilibrium: general scheme on a non-complete graph above "
      "threshold; use `simulate` for the long-run state");
}

}  // namespace

int ExitCode(const absl::Status& status) {
  switch (status.code()) {
    case absl::StatusCode::kOk:
      return 0;
    case absl::StatusCode::kInvalidArgument:
    case absl::StatusCode::kNotFound:
    case absl::StatusCode::kFailedPrecondition:
    case absl::StatusCode::kOutOfRange:
      return 2;
    default:
      return 3;
  }
}

absl::Status RunSpectral(const Graph& g, const CommandOptions& options,
                         std::ostream& log) {
  PRIVDIFF_ASSIGN_OR_RETURN(SpectralResult s, LargestEigenvalue(g));
  const bool connected = g.IsConnected();
  log << "lambda = " << FormatDouble(s.lambda_max) << "\n"
      << "n = " << g.num_nodes() << "\n"
      << "m = " << g.num_edges() << "\n"
      << "connected = " << (connected ? "true" : "false") << "\n"
      << "iterations = " << s.iterations << "\n";
  PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "spectral.csv"));
  CsvRecord().Add("lambda").Add("n").Add("m").Add("connected").Add("iterations")
      .Add("residual").WriteTo(out);
  CsvRecord()
      .Add(s.lambda_max)
      .Add(static_cast<uint64_t>(g.num_nodes()))
      .Add(static_cast<uint64_t>(g.num_edges()))
      .Add(connected ? "true" : "false")
      .Add(s.iterations)
      .Add(s.residual)
      .WriteTo(out);
  return absl::OkStatus();
}

absl::Status RunClassify(const ExperimentConfig& config,
                         const CommandOptions& options, std::ostream& log) {
  PRIVDIFF_ASSIGN_OR_RETURN(Graph g, BuildGraph(config.graph));
  PRIVDIFF_ASSIGN_OR_RETURN(RegimeReport r,
                            ClassifyRegime(config.params, config.scheme, g));
  log << "verdict = " << RegimeLine(r) << "\n"
      << "effective_strength = " << FormatDouble(r.effective_strength) << "\n"
      << "lambda = " << FormatDouble(r.lambda) << "\n"
      << "threshold = " << FormatDouble(r.threshold) << "\n"
      << "margin = " << FormatDouble(r.margin) << "\n"
      << "perfect = " << (r.perfect ? "true" : "false") << "\n"
      << "complete = " << (r.complete ? "true" : "false") << "\n";
  PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "classify.csv"));
  CsvRecord().Add("effective_strength").Add("lambda").Add("threshold").Add("margin")
      .Add("verdict").Add("theorem").Add("perfect").Add("complete").WriteTo(out);
  CsvRecord()
      .Add(r.effective_strength).Add(r.lambda).Add(r.threshold).Add(r.margin)
      .Add(VerdictName(r.verdict)).Add(TheoremName(r.theorem))
      .Add(r.perfect ? "true" : "false").Add(r.complete ? "true" : "false")
      .WriteTo(out);
  return absl::OkStatus();
}

absl::Status RunSimulate(const ExperimentConfig& config,
                         const CommandOptions& options, std::ostream& log) {
  PRIVDIFF_ASSIGN_OR_RETURN(Graph g, BuildGraph(config.graph));
  PRIVDIFF_ASSIGN_OR_RETURN(NodeState x0, InitialState(config, g.num_nodes()));
  IntegrateOptions io;
  io.t_end = config.run.t_end;
  io.dt = config.run.dt;
  PRIVDIFF_ASSIGN_OR_RETURN(Trajectory traj,
                            Integrate(x0, g, config.params, config.scheme, io));
  {
    PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "trajectory.csv"));
    WriteTrajectoryCsv(traj, options.wide, out);
  }
  if (options.svg) {
    PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "trajectory.svg"));
    const Series series[] = {{"product 1", "#1f77b4", traj.agg_p1},
                             {"product 2", "#d62728", traj.agg_p2}};
    WriteLineChartSvg(absl::StrCat(config.name, ": mean-field trajectory"), "time",
                      kExpectedAdopters, traj.times, series, out);
  }
  log << "steps = " << traj.steps << " (dt = " << FormatDouble(traj.dt) << ")\n"
      << kExpectedAdopters << " at t = " << FormatDouble(traj.times.back())
      << ": product 1 = " << FormatDouble(traj.agg_p1.back())
      << ", product 2 = " << FormatDouble(traj.agg_p2.back()) << "\n"
      << "final |dx/dt|_inf = " << FormatDouble(traj.final_derivative_norm) << "\n";
  if (traj.total_clip > 0.0) {
    log << "simplex clipping applied: total " << FormatDouble(traj.total_clip)
        << ", largest step " << FormatDouble(traj.max_step_clip) << "\n";
  }
  return absl::OkStatus();
}

absl::Status RunEquilibrium(const ExperimentConfig& config,
                            const CommandOptions& options, std::ostream& log) {
  PRIVDIFF_ASSIGN_OR_RETURN(Graph g, BuildGraph(config.graph));
  PRIVDIFF_ASSIGN_OR_RETURN(RegimeReport report,
                            ClassifyRegime(config.params, config.scheme, g));
  PRIVDIFF_ASSIGN_OR_RETURN(EquilibriumResult eq,
                            PredictedEquilibrium(config, g, report));
  PRIVDIFF_ASSIGN_OR_RETURN(NodeDerivative d,
                            Derivative(eq.state, g, config.params, config.scheme));
  log << "regime = " << RegimeLine(report) << "\n"
      << "equilibrium = " << eq.kind << "\n"
      << "substitution_residual = " << FormatDouble(d.MaxAbs()) << "\n"
      << kExpectedAdopters << ": product 1 = " << FormatDouble(eq.state.Aggregate1())
      << ", product 2 = " << FormatDouble(eq.state.Aggregate2()) << "\n";
  if (!IsOblivious(config.scheme)) {
    PRIVDIFF_ASSIGN_OR_RETURN(
        EquilibriumClass cls,
        CheckEquilibriumDichotomy(eq.state, g, config.params,
                                  std::get<PrivacyScheme>(config.scheme), 1e-9));
    log << "class = " << EquilibriumClassName(cls) << "\n";
  }
  {
    PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "equilibrium.csv"));
    WriteEquilibriumCsv(eq.state, out);
  }
  if (g.num_nodes() > kDenseLimit) {
    log << "stability = not computed: n = " << g.num_nodes() << " exceeds the dense "
        << "limit " << kDenseLimit << "; run `simulate` for trajectory evidence\n";
    return absl::OkStatus();
  }
  PRIVDIFF_ASSIGN_OR_RETURN(
      StabilityReport st, AnalyzeStability(eq.state, g, config.params, config.scheme));
  log << "stability = " << StabilityName(st.verdict)
      << " (spectral abscissa " << FormatDouble(st.spectral_abscissa)
      << ", finite-difference check " << FormatDouble(st.fd_check_error) << ")\n";
  PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "stability.csv"));
  WriteStabilityCsv(st, out);
  return absl::OkStatus();
}

absl::Status RunCtmc(const ExperimentConfig& config, const CommandOptions& options,
                     std::ostream& log) {
  PRIVDIFF_ASSIGN_OR_RETURN(Graph g, BuildGraph(config.graph));
  PRIVDIFF_ASSIGN_OR_RETURN(std::vector<NodeLabel> labels,
                            InitialLabels(config, g.num_nodes()));
  CtmcOptions co;
  co.t_end = config.run.t_end;
  co.grid_points = config.run.grid_points;
  if (config.run.window_start >= 0.0) co.window_start = config.run.window_start;
  std::vector<RunRecord> records;
  PRIVDIFF_ASSIGN_OR_RETURN(
      BatchSummary summary,
      Batch(g, config.params, config.scheme, labels, co, config.run.runs,
            config.run.seed, &records));
  {
    PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "ctmc_summary.csv"));
    WriteBatchSummaryCsv(summary, out);
  }
  for (size_t k = 0; k < records.size(); ++k) {
    PRIVDIFF_ASSIGN_OR_RETURN(
        std::ofstream out, OpenOutput(options, absl::StrFormat("ctmc_run_%04d.csv", k)));
    WriteRunCsv(records[k], out);
  }
  if (options.svg && !records.empty()) {
    const RunRecord& first = records.front();
    std::vector<double> t, n1, n2;
    for (const CtmcSample& s : first.samples) {
      t.push_back(s.t);
      n1.push_back(s.n_i1);
      n2.push_back(s.n_i2);
    }
    const Series series[] = {{"product 1", "#1f77b4", n1}, {"product 2", "#d62728", n2}};
    PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "ctmc_run_0000.svg"));
    WriteLineChartSvg(absl::StrCat(config.name, ": stochastic run 0"), "time",
                      "adopters", t, series, out);
  }
  log << "runs = " << summary.runs << " (absorbed " << summary.absorbed_runs << ")\n"
      << "window fraction product 1 = " << FormatDouble(summary.mean_i1) << " +- "
      << FormatDouble(summary.stderr_i1) << "\n"
      << "window fraction product 2 = " << FormatDouble(summary.mean_i2) << " +- "
      << FormatDouble(summary.stderr_i2) << "\n"
      << "window fraction total = " << FormatDouble(summary.mean_total) << " +- "
      << FormatDouble(summary.stderr_total) << "\n";
  return absl::OkStatus();
}

absl::Status RunPhase(const ExperimentConfig& config, const CommandOptions& options,
                      std::ostream& log) {
  PRIVDIFF_ASSIGN_OR_RETURN(Graph g, BuildGraph(config.graph));
  if (!g.IsConnected()) {
    return absl::FailedPreconditionError("phase sweep needs a connected graph");
  }
  PRIVDIFF_ASSIGN_OR_RETURN(SpectralResult s, LargestEigenvalue(g));
  const double lambda = s.lambda_max;
  const PhaseSpec& ph = config.phase;
  auto axis = [&ph](size_t k, double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(k) + 0.5) / static_cast<double>(ph.steps);
  };
  PRIVDIFF_ASSIGN_OR_RETURN(std::ofstream out, OpenOutput(options, "phase.csv"));
  size_t inside = 0;
  if (ph.axes == PhaseSpec::Axes::kGamma) {
    const GammaCase c = GammaRegionCase(config.params, lambda);
    const Gamma1Interval bounds = GammaOneBounds(config.params, lambda);
    log << "case = " << GammaCaseName(c) << "\n";
    if (c != GammaCase::kInfeasible) {
      log << "gamma1 interval = (" << FormatDouble(bounds.lo) << ", "
          << FormatDouble(bounds.hi) << ")\n";
    }
    CsvRecord().Add("gamma1").Add("gamma2").Add("strength").Add("in_region")
        .WriteTo(out);
    for (size_t i = 0; i < ph.steps; ++i) {
      for (size_t j = 0; j < ph.steps; ++j) {
        const double g1 = axis(i, ph.lo1, ph.hi1);
        const double g2 = axis(j, ph.lo2, ph.hi2);
        const bool in = GammaRegionContains(config.params, lambda, g1, g2);
        inside += in;
        CsvRecord()
            .Add(g1).Add(g2)
            .Add(config.params.sigma1() * g1 + config.params.sigma2() * g2)
            .Add(in ? 1 : 0)
            .WriteTo(out);
      }
    }
  } else {
    const bool complete = g.IsComplete();
    CsvRecord().Add("sigma1").Add("sigma2").Add("effective_strength").Add("verdict")
        .Add("theorem").WriteTo(out);
    for (size_t i = 0; i < ph.steps; ++i) {
      for (size_t j = 0; j < ph.steps; ++j) {
        const double s1 = axis(i, ph.lo1, ph.hi1);
        const double s2 = axis(j, ph.lo2, ph.hi2);
        PRIVDIFF_ASSIGN_OR_RETURN(
            DiffusionParams p,
            DiffusionParams::Create(s1 * config.params.delta1(), config.params.delta1(),
                                    s2 * config.params.delta2(),
                                    config.params.delta2()));
        const RegimeReport r = ClassifyRegimeForSpectrum(p, config.scheme, lambda, complete);
        inside += r.verdict == Verdict::kCoexistencePredicted;
        CsvRecord()
            .Add(s1).Add(s2).Add(r.effective_strength)
            .Add(VerdictName(r.verdict)).Add(TheoremName(r.theorem))
            .WriteTo(out);
      }
    }
  }
  log << "lambda = " << FormatDouble(lambda) << "\n"
      << "grid = " << ph.steps << " x " << ph.steps << ", cells in region = "
      << inside << "\n";
  return absl::OkStatus();
}

}  // namespace privdiff::tools
