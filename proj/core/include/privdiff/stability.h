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

#ifndef PRIVDIFF_STABILITY_H_
#define PRIVDIFF_STABILITY_H_

#include <limits>
#include <ostream>
#include <string_view>

#include <Eigen/Dense>

#include "absl/status/statusor.h"
#include "privdiff/dynamics.h"
#include "privdiff/graph.h"
#include "privdiff/privacy.h"

namespace privdiff {

// Largest graph for which the dense 2n x 2n Jacobian is assembled.
inline constexpr size_t kDenseLimit = 1500;

// The four n x n blocks of d(dp/dt)/dp, with block (a, b) holding
// d(dp_{i,a}/dt) / dp_{j,b}. With S = diag(s):
//   J11 = -d1 I + b1 r11 S A - b1 r11 diag(A P1) - b1 r21 diag(A P2)
//   J12 =         b1 r21 S A - b1 r11 diag(A P1) - b1 r21 diag(A P2)
//   J21 =         b2 r12 S A - b2 r12 diag(A P1) - b2 r22 diag(A P2)
//   J22 = -d2 I + b2 r22 S A - b2 r12 diag(A P1) - b2 r22 diag(A P2)
struct JacobianBlocks {
  Eigen::MatrixXd j11;
  Eigen::MatrixXd j12;
  Eigen::MatrixXd j21;
  Eigen::MatrixXd j22;

  // [[J11, J12], [J21, J22]]
  Eigen::MatrixXd Assemble() const;
};

absl::StatusOr<JacobianBlocks> Jacobian(const NodeState& state, const Graph& g,
                                        const DiffusionParams& params,
                                        const AnyScheme& scheme,
                                        size_t dense_limit = kDenseLimit);

enum class Stability { kStable, kUnstable, kMarginal };
std::string_view StabilityName(Stability s);

struct StabilityReport {
  double spectral_abscissa = 0.0;  // max real part over all 2n eigenvalues
  Stability verdict = Stability::kMarginal;
  std::string_view method = "DenseEig";
  // Max column-wise relative deviation between the analytic Jacobian and
  // central finite differences; NaN when no check was run.
  double fd_check_error = std::numeric_limits<double>::quiet_NaN();
};

// Dense eigendecomposition of the assembled real nonsymmetric matrix.
// |abscissa| <= margin_tol is reported as Marginal.
absl::StatusOr<StabilityReport> SpectralAbscissa(const JacobianBlocks& blocks,
                                                 double margin_tol = 1e-7);

struct FiniteDifferenceOptions {
  double step = 1e-6;
  // Entries closer than this to the simplex boundary are moved inward first.
  double nudge = 1e-5;
};

// Moves `state` at least `nudge` inside the simplex.
NodeState NudgeInward(const NodeState& state, double nudge);

// Central-difference Jacobian of the mean-field right-hand side, one column
// per perturbed unknown (p1 block first).
absl::StatusOr<Eigen::MatrixXd> FiniteDifferenceJacobian(
    const NodeState& state, const Graph& g, const DiffusionParams& params,
    const AnyScheme& scheme, double step = 1e-6);

// max_j ||analytic_j - numeric_j||_inf / ||analytic_j||_inf over columns j.
double MaxColumnRelativeDeviation(const Eigen::MatrixXd& analytic,
                                  const Eigen::MatrixXd& numeric);

struct StabilityOptions {
  size_t dense_limit = kDenseLimit;
  double margin_tol = 1e-7;
  bool finite_difference_check = true;
  FiniteDifferenceOptions fd;
};

// Jacobian + spectral abscissa, plus the finite-difference cross-check
// (evaluated at the nudged state) when enabled.
absl::StatusOr<StabilityReport> AnalyzeStability(const NodeState& state,
                                                 const Graph& g,
                                                 const DiffusionParams& params,
                                                 const AnyScheme& scheme,
                                                 const StabilityOptions& options = {});

// Larger root of the zero-state characteristic quadratic along the Perron
// direction of A,
//   x^2 + [(d1 + d2) - (b1 r11 + b2 r22) lambda] x
//       + d1 d2 - (b1 d2 r11 + b2 d1 r22) lambda = 0,
// which is positive iff sigma1 r11 + sigma2 r22 > 1/lambda. For perfect
// schemes it is the spectral abscissa of the Jacobian at the zero state.
struct ZeroStateRoot {
  double value = 0.0;
  bool complex = false;  // value is then the common real part
};
ZeroStateRoot ZeroEquilibriumRoot(const DiffusionParams& params,
                                  const AnyScheme& scheme, double lambda);

// `spectral_abscissa,verdict,fd_check_error` header and one data row.
void WriteStabilityCsv(const StabilityReport& report, std::ostream& out);

}  // namespace privdiff

#endif  // PRIVDIFF_STABILITY_H_
