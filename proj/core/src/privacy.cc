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

#include "privdiff/privacy.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace privdiff {
namespace {

bool InOpenUnit(double x) { return x > 0.0 && x < 1.0; }

// Ratio used by the epsilon formula with the 0/0 convention.
double SilentRatio(double num, double den) {
  if (num == 0.0 && den == 0.0) return 1.0;
  if (den == 0.0) return std::numeric_limits<double>::infinity();
  return num / den;
}

}  // namespace

double AdvocacyRates::silent1() const { return std::max(0.0, 1.0 - r11 - r12); }
double AdvocacyRates::silent2() const { return std::max(0.0, 1.0 - r21 - r22); }

absl::StatusOr<PrivacyScheme> PrivacyScheme::Create(double r11, double r12,
                                                    double r21, double r22) {
  std::vector<std::string> violations;
  const std::pair<const char*, double> entries[] = {
      {"r11", r11}, {"r12", r12}, {"r21", r21}, {"r22", r22}};
  for (const auto& [name, value] : entries) {
    if (!InOpenUnit(value)) {
      violations.push_back(absl::StrCat(name, " must lie in (0, 1), got ", value));
    }
  }
  if (!(r11 + r12 <= 1.0)) {
    violations.push_back(absl::StrCat("r11 + r12 must be <= 1, got ", r11 + r12));
  }
  if (!(r21 + r22 <= 1.0)) {
    violations.push_back(absl::StrCat("r21 + r22 must be <= 1, got ", r21 + r22));
  }
  if (!violations.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("invalid privacy scheme: ", absl::StrJoin(violations, "; ")));
  }
  return PrivacyScheme(AdvocacyRates{r11, r12, r21, r22});
}

absl::StatusOr<PrivacyScheme> PrivacyScheme::Perfect(double gamma1,
                                                     double gamma2) {
  return Create(gamma1, gamma2, gamma1, gamma2);
}

AdvocacyRates RatesOf(const AnyScheme& scheme) {
  return std::visit([](const auto& s) { return s.rates(); }, scheme);
}

absl::StatusOr<DiffusionParams> DiffusionParams::Create(double beta1,
                                                        double delta1,
                                                        double beta2,
                                                        double delta2) {
  std::vector<std::string> violations;
  const std::pair<const char*, double> entries[] = {
      {"beta1", beta1}, {"delta1", delta1}, {"beta2", beta2}, {"delta2", delta2}};
  for (const auto& [name, value] : entries) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      violations.push_back(absl::StrCat(name, " must be positive, got ", value));
    }
  }
  if (!violations.empty()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "invalid diffusion parameters: ", absl::StrJoin(violations, "; ")));
  }
  return DiffusionParams(beta1, delta1, beta2, delta2);
}

bool IsPerfect(const PrivacyScheme& scheme, double tol) {
  return std::abs(scheme.r11() - scheme.r21()) <= tol &&
         std::abs(scheme.r12() - scheme.r22()) <= tol;
}

double DpEpsilon(const PrivacyScheme& s) {
  const double ratios[] = {
      s.r11() / s.r21(),
      s.r21() / s.r11(),
      s.r12() / s.r22(),
      s.r22() / s.r12(),
      SilentRatio(s.silent1(), s.silent2()),
      SilentRatio(s.silent2(), s.silent1()),
  };
  return std::log(*std::max_element(std::begin(ratios), std::end(ratios)));
}

double EffectiveStrength(const DiffusionParams& params, const AnyScheme& scheme) {
  const AdvocacyRates r = RatesOf(scheme);
  const double a = params.sigma1() * r.r11;
  const double b = params.sigma2() * r.r22;
  // Grouped as (sigma1 r21)(sigma2 r12) so that a perfect scheme reproduces
  // the exact products a and b under the radical.
  const double cross = (params.sigma1() * r.r21) * (params.sigma2() * r.r12);
  const double half_gap = 0.5 * (a - b);
  return 0.5 * (a + b) + std::sqrt(half_gap * half_gap + cross);
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kCoexistencePredicted:
      return "CoexistencePredicted";
    case Verdict::kExtinctionPredicted:
      return "ExtinctionPredicted";
    case Verdict::kOutsideProvenRegime:
      return "OutsideProvenRegime";
  }
  return "?";
}

std::string_view TheoremName(Theorem theorem) {
  switch (theorem) {
    case Theorem::kPerfectSchemeAnyGraph:
      return "Theorem 1";
    case Theorem::kCompleteGraphAnyScheme:
      return "Theorem 2";
    case Theorem::kExtinction:
      return "Theorem 3";
    case Theorem::kNone:
      return "none";
  }
  return "?";
}

RegimeReport ClassifyRegimeForSpectrum(const DiffusionParams& params,
                                       const AnyScheme& scheme, double lambda,
                                       bool complete,
                                       const ClassifyOptions& options) {
  RegimeReport report;
  report.lambda = lambda;
  report.threshold = 1.0 / lambda;
  report.effective_strength = EffectiveStrength(params, scheme);
  report.margin = report.effective_strength - report.threshold;
  report.complete = complete;

  const auto* valid = std::get_if<PrivacyScheme>(&scheme);
  if (valid == nullptr) return report;  // oblivious: no theorem covers it
  report.perfect = IsPerfect(*valid, options.perfect_tol);

  if (std::abs(report.margin) <= options.equality_tol) return report;
  if (report.margin < 0.0) {
    report.verdict = Verdict::kExtinctionPredicted;
    report.theorem = Theorem::kExtinction;
  } else if (report.perfect) {
    report.verdict = Verdict::kCoexistencePredicted;
    report.theorem = Theorem::kPerfectSchemeAnyGraph;
  } else if (complete) {
    report.verdict = Verdict::kCoexistencePredicted;
    report.theorem = Theorem::kCompleteGraphAnyScheme;
  }
  return report;
}

absl::StatusOr<RegimeReport> ClassifyRegime(const DiffusionParams& params,
                                            const AnyScheme& scheme,
                                            const Graph& g,
                                            const ClassifyOptions& options) {
  if (!g.IsConnected()) {
    return absl::FailedPreconditionError(
        "regime classification requires a connected graph");
  }
  auto spectrum = LargestEigenvalue(g, options.spectral);
  if (!spectrum.ok()) return spectrum.status();
  return ClassifyRegimeForSpectrum(params, scheme, spectrum->lambda_max,
                                   g.IsComplete(), options);
}

std::string_view GammaCaseName(GammaCase c) {
  switch (c) {
    case GammaCase::kCaseA:
      return "CaseA";
    case GammaCase::kCaseB:
      return "CaseB";
    case GammaCase::kCaseC:
      return "CaseC";
    case GammaCase::kInfeasible:
      return "Infeasible";
  }
  return "?";
}

GammaCase GammaRegionCase(const DiffusionParams& params, double lambda) {
  const double t = 1.0 / lambda;
  const double s1 = params.sigma1();
  const double s2 = params.sigma2();
  if (s1 > t && s2 > t) return GammaCase::kCaseA;
  if (s1 > t) return GammaCase::kCaseB;
  if (s2 > t) return GammaCase::kCaseC;
  return GammaCase::kInfeasible;
}

bool GammaRegionContains(const DiffusionParams& params, double lambda,
                         double gamma1, double gamma2) {
  return InOpenUnit(gamma1) && InOpenUnit(gamma2) && gamma1 + gamma2 <= 1.0 &&
         params.sigma1() * gamma1 + params.sigma2() * gamma2 > 1.0 / lambda;
}

Gamma1Interval GammaOneBounds(const DiffusionParams& params, double lambda) {
  const double t = 1.0 / lambda;
  const double s1 = params.sigma1();
  const double s2 = params.sigma2();
  switch (GammaRegionCase(params, lambda)) {
    case GammaCase::kCaseA:
      return {0.0, 1.0};
    case GammaCase::kCaseB:
      return {(t - s2) / (s1 - s2), 1.0};
    case GammaCase::kCaseC:
      return {0.0, (s2 - t) / (s2 - s1)};
    case GammaCase::kInfeasible:
      break;
  }
  return {0.0, 0.0};
}

bool GammaRegionContainsByInterval(const DiffusionParams& params, double lambda,
                                   double gamma1, double gamma2) {
  const GammaCase c = GammaRegionCase(params, lambda);
  if (c == GammaCase::kInfeasible) return false;
  const Gamma1Interval g1 = GammaOneBounds(params, lambda);
  if (!(gamma1 > g1.lo && gamma1 < g1.hi)) return false;
  const double line = (1.0 / lambda - params.sigma1() * gamma1) / params.sigma2();
  const double lower = c == GammaCase::kCaseC ? line : std::max(0.0, line);
  return gamma2 > lower && gamma2 <= 1.0 - gamma1;
}

}  // namespace privdiff
