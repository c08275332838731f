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

#ifndef PRIVDIFF_DYNAMICS_H_
#define PRIVDIFF_DYNAMICS_H_

#include <cstdint>
#include <optional>
#include <ostream>
#include <span>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "privdiff/graph.h"
#include "privdiff/privacy.h"

namespace privdiff {

// Per-node adoption probabilities. The susceptible probability is derived:
// s_i = 1 - p1[i] - p2[i].
struct NodeState {
  std::vector<double> p1;
  std::vector<double> p2;

  static NodeState Zeros(size_t n) { return {std::vector<double>(n, 0.0), std::vector<double>(n, 0.0)}; }
  size_t size() const { return p1.size(); }
  double Susceptible(size_t i) const { return 1.0 - p1[i] - p2[i]; }
  double Aggregate1() const;
  double Aggregate2() const;
};

// Checks the probability simplex constraints within `tol`.
absl::Status ValidateNodeState(const NodeState& state, double tol = 1e-12);

struct NodeDerivative {
  std::vector<double> dp1;
  std::vector<double> dp2;

  double MaxAbs() const;
};

// Right-hand side of the mean-field system:
//   dp1_i/dt = -d1 p1_i + b1 s_i sum_j a_ij (r11 p1_j + r21 p2_j)
//   dp2_i/dt = -d2 p2_i + b2 s_i sum_j a_ij (r12 p1_j + r22 p2_j)
absl::StatusOr<NodeDerivative> Derivative(const NodeState& state, const Graph& g,
                                          const DiffusionParams& params,
                                          const AnyScheme& scheme);

// Allocation-free kernel behind Derivative: one pass over the adjacency.
// All spans must have length g.num_nodes().
void EvaluateDerivative(const Graph& g, const DiffusionParams& params,
                        const AdvocacyRates& rates, std::span<const double> p1,
                        std::span<const double> p2, std::span<double> dp1,
                        std::span<double> dp2);

struct SteadyStateRule {
  double tol = 1e-10;  // on ||dx/dt||_inf
  int window = 10;     // consecutive steps below tol
};

struct IntegrateOptions {
  double t_end = 0.0;
  // Step size; 0 selects DefaultTimeStep.
  double dt = 0.0;
  std::optional<SteadyStateRule> stop;
  // Cap on recorded samples (the initial and final states are always kept).
  size_t max_records = 1001;
  // Pre-clip magnitude that aborts the run.
  double divergence_bound = 2.0;
};

struct Trajectory {
  std::vector<double> times;
  std::vector<NodeState> states;
  std::vector<double> agg_p1;  // sum_i p1[i] at each recorded time
  std::vector<double> agg_p2;

  size_t steps = 0;
  double dt = 0.0;
  bool stopped_early = false;
  double total_clip = 0.0;     // sum over steps of |clip corrections|
  double max_step_clip = 0.0;  // largest single-step correction
  double final_derivative_norm = 0.0;

  const NodeState& final_state() const { return states.back(); }
};

// 0.01 / max(delta1, delta2, beta1 * maxdeg, beta2 * maxdeg).
double DefaultTimeStep(const Graph& g, const DiffusionParams& params);

// Fixed-step classical RK4. After each step negative entries are clipped to
// zero and pairs with p1 + p2 > 1 are rescaled onto the simplex; the
// corrections are accumulated in the trajectory as an audit of step size.
absl::StatusOr<Trajectory> Integrate(const NodeState& x0, const Graph& g,
                                     const DiffusionParams& params,
                                     const AnyScheme& scheme,
                                     const IntegrateOptions& options);

// Integrate with the privacy-oblivious scheme.
absl::StatusOr<Trajectory> PrivacyObliviousBaseline(const NodeState& x0,
                                                    const Graph& g,
                                                    const DiffusionParams& params,
                                                    double t_end, double dt = 0.0);

// p1_i = c1, p2_i = c2 for every node.
absl::StatusOr<NodeState> UniformSeed(size_t n, double c1, double c2);
// k1 random nodes fully adopt product 1 and k2 other nodes product 2.
absl::StatusOr<NodeState> RandomSubsetSeed(size_t n, size_t k1, size_t k2,
                                           uint64_t seed);

// `t,agg_p1,agg_p2`, or with `wide` the per-node columns
// `t,p1_0..p1_{n-1},p2_0..p2_{n-1}`.
void WriteTrajectoryCsv(const Trajectory& trajectory, bool wide,
                        std::ostream& out);

}  // namespace privdiff

#endif  // PRIVDIFF_DYNAMICS_H_
