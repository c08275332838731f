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

#ifndef PRIVDIFF_PRIVACY_H_
#define PRIVDIFF_PRIVACY_H_

#include <string_view>
#include <variant>

#include "absl/status/statusor.h"
#include "privdiff/graph.h"

namespace privdiff {

// Advocacy probabilities of the 2x3 privacy matrix. Row j is the behavior of
// a product-j adopter: advocate product 1 with r_j1, product 2 with r_j2,
// stay silent otherwise.
struct AdvocacyRates {
  double r11 = 0.0;
  double r12 = 0.0;
  double r21 = 0.0;
  double r22 = 0.0;

  double silent1() const;
  double silent2() const;
};

// A privacy scheme with every advocacy probability strictly inside (0, 1)
// and each row summing to at most one. Only constructible through Create or
// Perfect, so holding one means the constraints were checked.
class PrivacyScheme {
 public:
  static absl::StatusOr<PrivacyScheme> Create(double r11, double r12,
                                              double r21, double r22);
  // Both rows equal to (gamma1, gamma2, 1 - gamma1 - gamma2).
  static absl::StatusOr<PrivacyScheme> Perfect(double gamma1, double gamma2);

  double r11() const { return rates_.r11; }
  double r12() const { return rates_.r12; }
  double r21() const { return rates_.r21; }
  double r22() const { return rates_.r22; }
  double silent1() const { return rates_.silent1(); }
  double silent2() const { return rates_.silent2(); }
  const AdvocacyRates& rates() const { return rates_; }

 private:
  explicit PrivacyScheme(AdvocacyRates rates) : rates_(rates) {}
  AdvocacyRates rates_;
};

// The privacy-oblivious matrix [[1, 0, 0], [0, 1, 0]]. It violates the
// strict-positivity constraints, so it has its own type: the dynamics and the
// stochastic simulator accept it, the threshold classifiers do not.
struct ObliviousScheme {
  AdvocacyRates rates() const { return {1.0, 0.0, 0.0, 1.0}; }
};

using AnyScheme = std::variant<PrivacyScheme, ObliviousScheme>;

inline ObliviousScheme MakeObliviousScheme() { return {}; }
AdvocacyRates RatesOf(const AnyScheme& scheme);
inline bool IsOblivious(const AnyScheme& scheme) {
  return std::holds_alternative<ObliviousScheme>(scheme);
}

// Infection rates beta and healing rates delta (1/time) for both products.
class DiffusionParams {
 public:
  static absl::StatusOr<DiffusionParams> Create(double beta1, double delta1,
                                                double beta2, double delta2);

  double beta1() const { return beta1_; }
  double delta1() const { return delta1_; }
  double beta2() const { return beta2_; }
  double delta2() const { return delta2_; }
  // Spreading strengths beta/delta.
  double sigma1() const { return beta1_ / delta1_; }
  double sigma2() const { return beta2_ / delta2_; }

 private:
  DiffusionParams(double beta1, double delta1, double beta2, double delta2)
      : beta1_(beta1), delta1_(delta1), beta2_(beta2), delta2_(delta2) {}
  double beta1_;
  double delta1_;
  double beta2_;
  double delta2_;
};

// Rows equal within `tol` in both advocacy entries.
bool IsPerfect(const PrivacyScheme& scheme, double tol = 1e-12);

// ln of the worst-case ratio between the two rows' advocacy probabilities.
// Two zero silent masses contribute ratio 1; a single zero silent mass makes
// the result +infinity.
double DpEpsilon(const PrivacyScheme& scheme);

// (1/2)[s1 r11 + s2 r22 + sqrt((s1 r11 - s2 r22)^2 + 4 s1 s2 r12 r21)], the
// Perron root of [[s1 r11, s1 r21], [s2 r12, s2 r22]]. For a perfect scheme
// this is s1 gamma1 + s2 gamma2.
double EffectiveStrength(const DiffusionParams& params, const AnyScheme& scheme);

enum class Verdict { kCoexistencePredicted, kExtinctionPredicted, kOutsideProvenRegime };
enum class Theorem { kNone, kPerfectSchemeAnyGraph, kCompleteGraphAnyScheme, kExtinction };

std::string_view VerdictName(Verdict verdict);
// "Theorem 1" / "Theorem 2" / "Theorem 3" / "none".
std::string_view TheoremName(Theorem theorem);

struct RegimeReport {
  double effective_strength = 0.0;
  double lambda = 0.0;
  double threshold = 0.0;  // 1 / lambda
  double margin = 0.0;     // effective_strength - threshold
  Verdict verdict = Verdict::kOutsideProvenRegime;
  Theorem theorem = Theorem::kNone;
  bool perfect = false;
  bool complete = false;
};

struct ClassifyOptions {
  // |strength - 1/lambda| at or below this is treated as the unproven
  // boundary.
  double equality_tol = 1e-9;
  double perfect_tol = 1e-12;
  SpectralOptions spectral;
};

// Computes lambda for `g` (which must be connected) and classifies.
absl::StatusOr<RegimeReport> ClassifyRegime(const DiffusionParams& params,
                                            const AnyScheme& scheme,
                                            const Graph& g,
                                            const ClassifyOptions& options = {});

// Same decision rule with lambda and completeness supplied by the caller.
RegimeReport ClassifyRegimeForSpectrum(const DiffusionParams& params,
                                       const AnyScheme& scheme, double lambda,
                                       bool complete,
                                       const ClassifyOptions& options = {});

// Which case of the perfect-scheme (gamma1, gamma2) region applies. Equality
// sigma = 1/lambda falls on the ">=" side of each case header.
enum class GammaCase { kCaseA, kCaseB, kCaseC, kInfeasible };
std::string_view GammaCaseName(GammaCase c);
GammaCase GammaRegionCase(const DiffusionParams& params, double lambda);

// Membership of (gamma1, gamma2) in the perfect-scheme co-existence region:
// gamma1, gamma2 in (0, 1), gamma1 + gamma2 <= 1 and
// sigma1 gamma1 + sigma2 gamma2 > 1/lambda.
bool GammaRegionContains(const DiffusionParams& params, double lambda,
                         double gamma1, double gamma2);

// The same region written as per-case intervals on gamma1 and gamma2.
bool GammaRegionContainsByInterval(const DiffusionParams& params, double lambda,
                                   double gamma1, double gamma2);

// Open interval of admissible gamma1 for the applicable case; empty (lo >= hi)
// when infeasible.
struct Gamma1Interval {
  double lo = 0.0;
  double hi = 0.0;
};
Gamma1Interval GammaOneBounds(const DiffusionParams& params, double lambda);

}  // namespace privdiff

#endif  // PRIVDIFF_PRIVACY_H_
