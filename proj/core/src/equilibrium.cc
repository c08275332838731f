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

#include "privdiff/equilibrium.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "privdiff/csv.h"

namespace privdiff {

absl::StatusOr<SisEquilibrium> ComputeSisEquilibrium(const Graph& g,
                                                     double strength,
                                                     const SisOptions& options) {
  if (!(strength > 0.0) || !std::isfinite(strength)) {
    return absl::InvalidArgumentError("SIS strength must be positive");
  }
  if (!(options.damping > 0.0 && options.damping <= 1.0)) {
    return absl::InvalidArgumentError("damping must lie in (0, 1]");
  }
  if (!g.IsConnected()) {
    return absl::FailedPreconditionError("SIS equilibrium requires a connected graph");
  }
  auto spectrum = LargestEigenvalue(g, options.spectral);
  if (!spectrum.ok()) return spectrum.status();

  const size_t n = g.num_nodes();
  SisEquilibrium eq;
  eq.strength = strength;
  eq.lambda = spectrum->lambda_max;
  const double threshold = 1.0 / eq.lambda;
  if (std::abs(strength - threshold) <= options.boundary_tol) {
    return absl::FailedPreconditionError(absl::StrCat(
        "strength ", strength, " is at the epidemic threshold 1/lambda = ",
        threshold, "; the boundary case is not handled"));
  }
  if (strength < threshold) {
    eq.q.assign(n, 0.0);
    eq.zero = true;
    return eq;
  }

  const std::vector<double>& perron = spectrum->eigvec;
  const double top = *std::max_element(perron.begin(), perron.end());
  std::vector<double> q(n);
  for (size_t i = 0; i < n; ++i) q[i] = 0.5 * perron[i] / top;

  std::vector<double> m(n);
  const double w = options.damping;
  double prev_change = std::numeric_limits<double>::infinity();
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    g.Multiply(q, m);
    double change = 0.0;
    for (size_t i = 0; i < n; ++i) {
      const double update = strength * m[i] / (1.0 + strength * m[i]);
      const double next = (1.0 - w) * q[i] + w * update;
      change = std::max(change, std::abs(next - q[i]));
      q[i] = next;
    }
    // Near the threshold the map contracts slowly, so a small step does not
    // mean a small error. Extrapolate the remaining distance geometrically.
    const double rate = change / prev_change;
    prev_change = change;
    if (change < options.tol &&
        (rate < 1.0 ? change * rate / (1.0 - rate) : change) < options.tol) {
      eq.iterations = iter;
      break;
    }
    if (iter == options.max_iter) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "SIS fixed point did not converge in ", options.max_iter,
          " iterations (last change ", change, ")"));
    }
  }

  g.Multiply(q, m);
  for (size_t i = 0; i < n; ++i) {
    eq.residual = std::max(eq.residual, std::abs(q[i] - strength * (1.0 - q[i]) * m[i]));
  }
  eq.q = std::move(q);
  return eq;
}

absl::StatusOr<CoexistenceEquilibrium> CoexistenceEquilibriumPerfect(
    const Graph& g, const DiffusionParams& params, double gamma1, double gamma2,
    const SisOptions& options) {
  auto scheme = PrivacyScheme::Perfect(gamma1, gamma2);
  if (!scheme.ok()) return scheme.status();
  const double w1 = params.sigma1() * gamma1;
  const double w2 = params.sigma2() * gamma2;
  const double strength = w1 + w2;

  auto sis = ComputeSisEquilibrium(g, strength, options);
  if (!sis.ok()) return sis.status();
  if (sis->zero) {
    return absl::FailedPreconditionError(absl::StrCat(
        "sigma1 gamma1 + sigma2 gamma2 = ", strength,
        " does not exceed 1/lambda = ", 1.0 / sis->lambda,
        "; no positive equilibrium"));
  }

  CoexistenceEquilibrium eq;
  eq.source = EquilibriumSource::kPerfectScheme;
  eq.strength = strength;
  eq.h = w1 / w2;
  const size_t n = g.num_nodes();
  eq.state = NodeState::Zeros(n);
  for (size_t i = 0; i < n; ++i) {
    eq.state.p1[i] = w1 / strength * sis->q[i];
    eq.state.p2[i] = w2 / strength * sis->q[i];
  }
  eq.sis = *std::move(sis);
  return eq;
}

double AdoptionRatio(const DiffusionParams& params, const PrivacyScheme& scheme) {
  // Roots of A h^2 + B h + C with A > 0 and C < 0, so exactly one is positive.
  const double a = params.sigma2() * scheme.r12();
  const double b = params.sigma2() * scheme.r22() - params.sigma1() * scheme.r11();
  const double c = -params.sigma1() * scheme.r21();
  const double root = std::sqrt(b * b - 4.0 * a * c);
  // Pick the cancellation-free form for the sign of b.
  if (b <= 0.0) return (-b + root) / (2.0 * a);
  return (-2.0 * c) / (b + root);
}

absl::StatusOr<CoexistenceEquilibrium> CoexistenceEquilibriumComplete(
    size_t n, const DiffusionParams& params, const PrivacyScheme& scheme,
    double boundary_tol) {
  if (n < 2) return absl::InvalidArgumentError("complete graph needs n >= 2");
  const double degree = static_cast<double>(n - 1);
  const double strength = EffectiveStrength(params, scheme);
  const double threshold = 1.0 / degree;
  if (std::abs(strength - threshold) <= boundary_tol) {
    return absl::FailedPreconditionError(absl::StrCat(
        "effective strength ", strength, " is at the threshold 1/(n-1) = ",
        threshold));
  }
  if (strength < threshold) {
    return absl::FailedPreconditionError(absl::StrCat(
        "effective strength ", strength, " does not exceed 1/(n-1) = ",
        threshold, "; no positive equilibrium"));
  }

  // Homogeneous ansatz p1_i = k1, p2_i = k2 = k1 / h. The product-2 balance
  //   k2 = sigma2 (n-1) (1 - (1 + h) k2) (r12 h + r22) k2
  // is linear in k2 once k2 > 0 is divided out.
  const double h = AdoptionRatio(params, scheme);
  const double growth = params.sigma2() * (scheme.r12() * h + scheme.r22()) * degree;
  const double k2 = (1.0 - 1.0 / growth) / (1.0 + h);
  const double k1 = h * k2;

  CoexistenceEquilibrium eq;
  eq.source = EquilibriumSource::kCompleteGraph;
  eq.strength = strength;
  eq.h = h;
  eq.state = NodeState{std::vector<double>(n, k1), std::vector<double>(n, k2)};
  return eq;
}

std::string_view EquilibriumClassName(EquilibriumClass c) {
  switch (c) {
    case EquilibriumClass::kZero:
      return "Zero";
    case EquilibriumClass::kAllPositive:
      return "AllPositive";
    case EquilibriumClass::kNotAnEquilibrium:
      return "NotAnEquilibrium";
    case EquilibriumClass::kMixedViolation:
      return "MixedViolation";
  }
  return "?";
}

absl::StatusOr<EquilibriumClass> CheckEquilibriumDichotomy(
    const NodeState& state, const Graph& g, const DiffusionParams& params,
    const PrivacyScheme& scheme, double tol) {
  auto d = Derivative(state, g, params, scheme);
  if (!d.ok()) return d.status();
  if (d->MaxAbs() > tol) return EquilibriumClass::kNotAnEquilibrium;
  size_t small = 0;
  for (size_t i = 0; i < state.size(); ++i) {
    if (state.p1[i] <= tol) ++small;
    if (state.p2[i] <= tol) ++small;
  }
  if (small == 2 * state.size()) return EquilibriumClass::kZero;
  if (small == 0) return EquilibriumClass::kAllPositive;
  return EquilibriumClass::kMixedViolation;
}

void WriteEquilibriumCsv(const NodeState& state, std::ostream& out) {
  CsvRecord().Add("node").Add("p1_star").Add("p2_star").WriteTo(out);
  for (size_t i = 0; i < state.size(); ++i) {
    CsvRecord().Add(static_cast<uint64_t>(i)).Add(state.p1[i]).Add(state.p2[i]).WriteTo(out);
  }
}

}  // namespace privdiff
