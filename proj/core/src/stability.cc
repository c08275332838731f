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

#include "privdiff/stability.h"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "privdiff/csv.h"

namespace privdiff {

Eigen::MatrixXd JacobianBlocks::Assemble() const {
  const Eigen::Index n = j11.rows();
  Eigen::MatrixXd full(2 * n, 2 * n);
  full.topLeftCorner(n, n) = j11;
  full.topRightCorner(n, n) = j12;
  full.bottomLeftCorner(n, n) = j21;
  full.bottomRightCorner(n, n) = j22;
  return full;
}

absl::StatusOr<JacobianBlocks> Jacobian(const NodeState& state, const Graph& g,
                                        const DiffusionParams& params,
                                        const AnyScheme& scheme,
                                        size_t dense_limit) {
  const size_t n = g.num_nodes();
  if (n > dense_limit) {
    return absl::InvalidArgumentError(absl::StrCat(
        "dense Jacobian limited to ", dense_limit, " nodes, graph has ", n));
  }
  if (state.p1.size() != n || state.p2.size() != n) {
    return absl::InvalidArgumentError("state size does not match the graph");
  }
  const AdvocacyRates r = RatesOf(scheme);
  const double b1 = params.beta1();
  const double b2 = params.beta2();

  std::vector<double> ap1(n);
  std::vector<double> ap2(n);
  g.Multiply(state.p1, ap1);
  g.Multiply(state.p2, ap2);

  JacobianBlocks jb;
  jb.j11 = Eigen::MatrixXd::Zero(n, n);
  jb.j12 = Eigen::MatrixXd::Zero(n, n);
  jb.j21 = Eigen::MatrixXd::Zero(n, n);
  jb.j22 = Eigen::MatrixXd::Zero(n, n);
  for (NodeId i = 0; i < n; ++i) {
    const double s = state.Susceptible(i);
    for (NodeId j : g.Neighbors(i)) {
      jb.j11(i, j) = b1 * r.r11 * s;
      jb.j12(i, j) = b1 * r.r21 * s;
      jb.j21(i, j) = b2 * r.r12 * s;
      jb.j22(i, j) = b2 * r.r22 * s;
    }
    // Loss of susceptibility at node i; identical in both columns of a row.
    const double drain1 = b1 * (r.r11 * ap1[i] + r.r21 * ap2[i]);
    const double drain2 = b2 * (r.r12 * ap1[i] + r.r22 * ap2[i]);
    jb.j11(i, i) = -params.delta1() - drain1;
    jb.j12(i, i) = -drain1;
    jb.j21(i, i) = -drain2;
    jb.j22(i, i) = -params.delta2() - drain2;
  }
  return jb;
}

std::string_view StabilityName(Stability s) {
  switch (s) {
    case Stability::kStable:
      return "Stable";
    case Stability::kUnstable:
      return "Unstable";
    case Stability::kMarginal:
      return "Marginal";
  }
  return "?";
}

absl::StatusOr<StabilityReport> SpectralAbscissa(const JacobianBlocks& blocks,
                                                 double margin_tol) {
  const Eigen::MatrixXd full = blocks.Assemble();
  if (!full.allFinite()) {
    return absl::InvalidArgumentError("Jacobian has non-finite entries");
  }
  Eigen::EigenSolver<Eigen::MatrixXd> solver(full, /*computeEigenvectors=*/false);
  if (solver.info() != Eigen::Success) {
    return absl::InternalError("dense eigensolver failed to converge");
  }
  StabilityReport report;
  report.spectral_abscissa = solver.eigenvalues().real().maxCoeff();
  if (report.spectral_abscissa < -margin_tol) {
    report.verdict = Stability::kStable;
  } else if (report.spectral_abscissa > margin_tol) {
    report.verdict = Stability::kUnstable;
  } else {
    report.verdict = Stability::kMarginal;
  }
  return report;
}

NodeState NudgeInward(const NodeState& state, double nudge) {
  NodeState out = state;
  for (size_t i = 0; i < out.size(); ++i) {
    double& a = out.p1[i];
    double& b = out.p2[i];
    a = std::max(a, nudge);
    b = std::max(b, nudge);
    const double cap = 1.0 - nudge;
    if (a + b > cap) {
      const double scale = cap / (a + b);
      a *= scale;
      b *= scale;
    }
  }
  return out;
}

absl::StatusOr<Eigen::MatrixXd> FiniteDifferenceJacobian(
    const NodeState& state, const Graph& g, const DiffusionParams& params,
    const AnyScheme& scheme, double step) {
  const size_t n = g.num_nodes();
  if (state.p1.size() != n || state.p2.size() != n) {
    return absl::InvalidArgumentError("state size does not match the graph");
  }
  const AdvocacyRates rates = RatesOf(scheme);
  Eigen::MatrixXd fd(2 * n, 2 * n);
  std::vector<double> p1 = state.p1;
  std::vector<double> p2 = state.p2;
  std::vector<double> plus1(n), plus2(n), minus1(n), minus2(n);
  for (size_t col = 0; col < 2 * n; ++col) {
    double& x = col < n ? p1[col] : p2[col - n];
    const double saved = x;
    x = saved + step;
    EvaluateDerivative(g, params, rates, p1, p2, plus1, plus2);
    x = saved - step;
    EvaluateDerivative(g, params, rates, p1, p2, minus1, minus2);
    x = saved;
    for (size_t i = 0; i < n; ++i) {
      fd(i, col) = (plus1[i] - minus1[i]) / (2.0 * step);
      fd(i + n, col) = (plus2[i] - minus2[i]) / (2.0 * step);
    }
  }
  return fd;
}

double MaxColumnRelativeDeviation(const Eigen::MatrixXd& analytic,
                                  const Eigen::MatrixXd& numeric) {
  double worst = 0.0;
  for (Eigen::Index j = 0; j < analytic.cols(); ++j) {
    const double scale = analytic.col(j).cwiseAbs().maxCoeff();
    const double diff = (analytic.col(j) - numeric.col(j)).cwiseAbs().maxCoeff();
    worst = std::max(worst, scale > 0.0 ? diff / scale : diff);
  }
  return worst;
}

absl::StatusOr<StabilityReport> AnalyzeStability(const NodeState& state,
                                                 const Graph& g,
                                                 const DiffusionParams& params,
                                                 const AnyScheme& scheme,
                                                 const StabilityOptions& options) {
  auto blocks = Jacobian(state, g, params, scheme, options.dense_limit);
  if (!blocks.ok()) return blocks.status();
  auto report = SpectralAbscissa(*blocks, options.margin_tol);
  if (!report.ok()) return report.status();
  if (options.finite_difference_check) {
    const NodeState nudged = NudgeInward(state, options.fd.nudge);
    auto at_nudged = Jacobian(nudged, g, params, scheme, options.dense_limit);
    if (!at_nudged.ok()) return at_nudged.status();
    auto fd = FiniteDifferenceJacobian(nudged, g, params, scheme, options.fd.step);
    if (!fd.ok()) return fd.status();
    report->fd_check_error = MaxColumnRelativeDeviation(at_nudged->Assemble(), *fd);
  }
  return report;
}

ZeroStateRoot ZeroEquilibriumRoot(const DiffusionParams& params,
                                  const AnyScheme& scheme, double lambda) {
  const AdvocacyRates r = RatesOf(scheme);
  const double d1 = params.delta1();
  const double d2 = params.delta2();
  const double a = params.beta1() * r.r11;
  const double b = params.beta2() * r.r22;
  const double linear = (d1 + d2) - (a + b) * lambda;
  const double constant = d1 * d2 - (a * d2 + b * d1) * lambda;
  const double disc = linear * linear - 4.0 * constant;
  if (disc < 0.0) return {-0.5 * linear, true};
  const double root = std::sqrt(disc);
  // Cancellation-free larger root of x^2 + linear x + constant.
  if (linear <= 0.0) return {0.5 * (-linear + root), false};
  return {-2.0 * constant / (linear + root), false};
}

void WriteStabilityCsv(const StabilityReport& report, std::ostream& out) {
  CsvRecord().Add("spectral_abscissa").Add("verdict").Add("fd_check_error").WriteTo(out);
  CsvRecord()
      .Add(report.spectral_abscissa)
      .Add(StabilityName(report.verdict))
      .Add(report.fd_check_error)
      .WriteTo(out);
}

}  // namespace privdiff
