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

#ifndef PRIVDIFF_CTMC_H_
#define PRIVDIFF_CTMC_H_

#include <cstdint>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "privdiff/graph.h"
#include "privdiff/privacy.h"

namespace privdiff {

enum class NodeLabel : uint8_t { kS = 0, kI1 = 1, kI2 = 2 };

struct CtmcSample {
  double t = 0.0;
  uint32_t n_i1 = 0;
  uint32_t n_i2 = 0;
};

struct CtmcEvent {
  double t = 0.0;
  NodeId node = 0;
  NodeLabel from = NodeLabel::kS;
  NodeLabel to = NodeLabel::kS;
};

struct CtmcOptions {
  double t_end = 0.0;
  uint64_t seed = 0;
  // Uniform sampling grid over [0, t_end], both ends included.
  size_t grid_points = 200;
  // Start of the averaging window; NaN selects 0.8 * t_end.
  double window_start = std::numeric_limits<double>::quiet_NaN();
  bool record_events = false;
  // Event-count period of the from-scratch rate audit.
  uint64_t audit_interval = 10000;
};

struct RunRecord {
  std::vector<CtmcSample> samples;
  std::vector<CtmcEvent> events;  // only with record_events
  uint64_t seed = 0;
  std::string generator;
  size_t num_nodes = 0;
  size_t num_edges = 0;
  double beta1 = 0.0, delta1 = 0.0, beta2 = 0.0, delta2 = 0.0;
  AdvocacyRates rates;
  double t_end = 0.0;
  double window_start = 0.0;

  uint64_t event_count = 0;
  bool absorbed = false;  // reached the all-susceptible state
  double absorption_time = std::numeric_limits<double>::infinity();
  // Time averages of nI1/n and nI2/n over [window_start, t_end].
  double window_fraction_i1 = 0.0;
  double window_fraction_i2 = 0.0;
  // Largest relative gap between the incrementally maintained total event
  // rate and a from-scratch recount.
  double max_rate_audit_error = 0.0;
};

// Exact event-driven simulation of the stochastic SI1I2S process. An I1 node
// passes product 1 to each susceptible neighbor at rate b1 r11 and product 2
// at rate b2 r12; an I2 node uses b1 r21 and b2 r22. I1 and I2 nodes heal to
// S at rates d1 and d2 and can adopt again later. Deterministic for a fixed
// seed.
absl::StatusOr<RunRecord> Simulate(const Graph& g, const DiffusionParams& params,
                                   const AnyScheme& scheme,
                                   std::span<const NodeLabel> initial,
                                   const CtmcOptions& options);

// k1 uniformly chosen nodes start in I1 and k2 others in I2.
absl::StatusOr<std::vector<NodeLabel>> SeedLabels(size_t n, size_t k1,
                                                  size_t k2, uint64_t seed);

struct BatchSummary {
  size_t runs = 0;
  size_t absorbed_runs = 0;
  double mean_i1 = 0.0, stderr_i1 = 0.0;
  double mean_i2 = 0.0, stderr_i2 = 0.0;
  double mean_total = 0.0, stderr_total = 0.0;
};

// `runs` independent simulations with seeds base_seed + k, summarized over
// the trailing window (options.seed is ignored). Runs execute in index order.
absl::StatusOr<BatchSummary> Batch(const Graph& g, const DiffusionParams& params,
                                   const AnyScheme& scheme,
                                   std::span<const NodeLabel> initial,
                                   const CtmcOptions& options, size_t runs,
                                   uint64_t base_seed,
                                   std::vector<RunRecord>* records = nullptr);

// A '#'-prefixed JSON metadata line, then `t,nI1,nI2` on the sampling grid.
void WriteRunCsv(const RunRecord& record, std::ostream& out);

// `runs,absorbed_runs,mean_i1,stderr_i1,mean_i2,stderr_i2,mean_total,stderr_total`
void WriteBatchSummaryCsv(const BatchSummary& summary, std::ostream& out);

}  // namespace privdiff

#endif  // PRIVDIFF_CTMC_H_
