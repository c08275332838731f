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

#ifndef PRIVDIFF_EQUILIBRIUM_H_
#define PRIVDIFF_EQUILIBRIUM_H_

#include <ostream>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "privdiff/dynamics.h"
#include "privdiff/graph.h"
#include "privdiff/privacy.h"

namespace privdiff {

struct SisOptions {
  double tol = 1e-12;       // on ||delta q||_inf
  int max_iter = 1000000;
  double damping = 0.5;     // q <- (1 - w) q + w * update
  // Strengths within this distance of 1/lambda are refused.
  double boundary_tol = 1e-9;
  SpectralOptions spectral;
};

// Equilibrium of the single-product SIS system with the given strength
// beta/delta: q_i = strength (1 - q_i) sum_j a_ij q_j.
struct SisEquilibrium {
  std::vector<double> q;  // all zero, or every entry in (0, 1)
  double strength = 0.0;
  double lambda = 0.0;
  int iterations = 0;
  double residual = 0.0;  // ||q - strength (1 - q) A q||_inf
  bool zero = false;
};

// Below threshold the zero vector is returned without iterating. Above it,
// the damped fixed-point map q_i <- strength m_i / (1 + strength m_i) with
// m = A q runs from the Perron vector scaled to max 0.5, which keeps the
// iteration away from the zero fixed point.
absl::StatusOr<SisEquilibrium> ComputeSisEquilibrium(const Graph& g,
                                                     double strength,
                                                     const SisOptions& options = {});

enum class EquilibriumSource { kPerfectScheme, kCompleteGraph };

struct CoexistenceEquilibrium {
  NodeState state;  // p1* and p2*
  double h = 0.0;   // p1*_i / p2*_i, the same for every node
  EquilibriumSource source = EquilibriumSource::kPerfectScheme;
  double strength = 0.0;
  SisEquilibrium sis;  // populated for kPerfectScheme
};

// Positive equilibrium under the perfect scheme (gamma1, gamma2): the SIS
// equilibrium Q at strength sigma1 gamma1 + sigma2 gamma2 split as
// P1 = (sigma1 gamma1 / strength) Q, P2 = (sigma2 gamma2 / strength) Q.
absl::StatusOr<CoexistenceEquilibrium> CoexistenceEquilibriumPerfect(
    const Graph& g, const DiffusionParams& params, double gamma1, double gamma2,
    const SisOptions& options = {});

// Positive root h of sigma2 r12 h^2 + (sigma2 r22 - sigma1 r11) h - sigma1 r21,
// the long-run ratio of product-1 to product-2 adopters.
double AdoptionRatio(const DiffusionParams& params, const PrivacyScheme& scheme);

// Homogeneous positive equilibrium on the complete graph K_n for a general
// scheme. Requires effective strength > 1/(n-1).
absl::StatusOr<CoexistenceEquilibrium> CoexistenceEquilibriumComplete(
    size_t n, const DiffusionParams& params, const PrivacyScheme& scheme,
    double boundary_tol = 1e-9);

enum class EquilibriumClass { kZero, kAllPositive, kNotAnEquilibrium, kMixedViolation };
std::string_view EquilibriumClassName(EquilibriumClass c);

// Classifies a candidate equilibrium. Every true equilibrium with a valid
// scheme is either identically zero or positive at every node; a mixed
// pattern with a vanishing derivative indicates a solver bug.
absl::StatusOr<EquilibriumClass> CheckEquilibriumDichotomy(
    const NodeState& state, const Graph& g, const DiffusionParams& params,
    const PrivacyScheme& scheme, double tol);

// `node,p1_star,p2_star`
void WriteEquilibriumCsv(const NodeState& state, std::ostream& out);

}  // namespace privdiff

#endif  // PRIVDIFF_EQUILIBRIUM_H_
