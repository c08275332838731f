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

#include "privdiff/ctmc.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "json.hpp"
#include "privdiff/csv.h"
#include "privdiff/random.h"

namespace privdiff {
namespace {

// Fenwick tree over non-negative integer node weights.
class WeightTree {
 public:
  explicit WeightTree(size_t n) : tree_(n + 1, 0) {}

  void Add(size_t index, int64_t delta) {
    total_ += delta;
    for (size_t i = index + 1; i < tree_.size(); i += i & (~i + 1)) {
      tree_[i] += delta;
    }
  }

  int64_t total() const { return total_; }

  // Smallest index whose inclusive prefix sum exceeds `target`, for
  // 0 <= target < total().
  size_t Find(int64_t target) const {
    size_t pos = 0;
    size_t step = 1;
    while (step * 2 < tree_.size()) step *= 2;
    for (; step > 0; step /= 2) {
      if (pos + step < tree_.size() && tree_[pos + step] <= target) {
        pos += step;
        target -= tree_[pos];
      }
    }
    return pos;
  }

 private:
  std::vector<int64_t> tree_;
  int64_t total_ = 0;
};

// Members of one infected compartment with O(1) insert and erase.
class NodeSet {
 public:
  explicit NodeSet(size_t n) : slot_(n, kAbsent) {}

  void Insert(NodeId v) {
    slot_[v] = members_.size();
    members_.push_back(v);
  }
  void Erase(NodeId v) {
    const size_t s = slot_[v];
    const NodeId last = members_.back();
    members_[s] = last;
    slot_[last] = s;
    members_.pop_back();
    slot_[v] = kAbsent;
  }
  size_t size() const { return members_.size(); }
  NodeId at(size_t k) const { return members_[k]; }

 private:
  static constexpr size_t kAbsent = static_cast<size_t>(-1);
  std::vector<NodeId> members_;
  std::vector<size_t> slot_;
};

struct EventRates {
  double heal1, heal2, t11, t12, t21, t22;
  double total() const { return heal1 + heal2 + t11 + t12 + t21 + t22; }
};

class Simulator {
 public:
  Simulator(const Graph& g, const DiffusionParams& params, const AdvocacyRates& r)
      : g_(g), params_(params), r_(r), label_(g.num_nodes(), NodeLabel::kS),
        susceptible_nbrs_(g.num_nodes(), 0), tree1_(g.num_nodes()),
        tree2_(g.num_nodes()), set1_(g.num_nodes()), set2_(g.num_nodes()) {
    for (NodeId v = 0; v < g.num_nodes(); ++v) {
      susceptible_nbrs_[v] = static_cast<int64_t>(g.Degree(v));
    }
  }

  EventRates Rates() const {
    return RatesFrom(set1_.size(), set2_.size(), tree1_.total(), tree2_.total());
  }

  EventRates RatesFrom(size_t n1, size_t n2, int64_t e1, int64_t e2) const {
    return {params_.delta1() * static_cast<double>(n1),
            params_.delta2() * static_cast<double>(n2),
            params_.beta1() * r_.r11 * static_cast<double>(e1),
            params_.beta2() * r_.r12 * static_cast<double>(e1),
            params_.beta1() * r_.r21 * static_cast<double>(e2),
            params_.beta2() * r_.r22 * static_cast<double>(e2)};
  }

  // Recomputes compartment sizes and S-I edge counts from the labels alone.
  EventRates RecountRates() const {
    size_t n1 = 0, n2 = 0;
    int64_t e1 = 0, e2 = 0;
    for (NodeId v = 0; v < g_.num_nodes(); ++v) {
      if (label_[v] == NodeLabel::kS) continue;
      int64_t s = 0;
      for (NodeId u : g_.Neighbors(v)) s += label_[u] == NodeLabel::kS;
      if (label_[v] == NodeLabel::kI1) {
        ++n1;
        e1 += s;
      } else {
        ++n2;
        e2 += s;
      }
    }
    return RatesFrom(n1, n2, e1, e2);
  }

  void Set(NodeId v, NodeLabel next) {
    const NodeLabel prev = label_[v];
    if (prev == next) return;
    if (prev == NodeLabel::kI1) {
      set1_.Erase(v);
      tree1_.Add(v, -susceptible_nbrs_[v]);
    } else if (prev == NodeLabel::kI2) {
      set2_.Erase(v);
      tree2_.Add(v, -susceptible_nbrs_[v]);
    }
    if (next == NodeLabel::kI1) {
      set1_.Insert(v);
      tree1_.Add(v, susceptible_nbrs_[v]);
    } else if (next == NodeLabel::kI2) {
      set2_.Insert(v);
      tree2_.Add(v, susceptible_nbrs_[v]);
    }
    const bool was_s = prev == NodeLabel::kS;
    const bool is_s = next == NodeLabel::kS;
    if (was_s != is_s) {
      const int64_t delta = is_s ? 1 : -1;
      for (NodeId u : g_.Neighbors(v)) {
        susceptible_nbrs_[u] += delta;
        if (label_[u] == NodeLabel::kI1) tree1_.Add(u, delta);
        if (label_[u] == NodeLabel::kI2) tree2_.Add(u, delta);
      }
    }
    label_[v] = next;
  }

  // Picks an infected source with probability proportional to its number
  // of susceptible neighbors, then one of those neighbors uniformly.
  NodeId PickTarget(const WeightTree& tree, RandomStream& rng) const {
    const NodeId source =
        static_cast<NodeId>(tree.Find(static_cast<int64_t>(rng.Below(tree.total()))));
    uint64_t k = rng.Below(static_cast<uint64_t>(susceptible_nbrs_[source]));
    for (NodeId u : g_.Neighbors(source)) {
      if (label_[u] == NodeLabel::kS && k-- == 0) return u;
    }
    return source;  // unreachable while the bookkeeping is consistent
  }

  NodeLabel label(NodeId v) const { return label_[v]; }
  const WeightTree& tree1() const { return tree1_; }
  const WeightTree& tree2() const { return tree2_; }
  const NodeSet& set1() const { return set1_; }
  const NodeSet& set2() const { return set2_; }

 private:
  const Graph& g_;
  const DiffusionParams& params_;
  AdvocacyRates r_;
  std::vector<NodeLabel> label_;
  std::vector<int64_t> susceptible_nbrs_;
  WeightTree tree1_;
  WeightTree tree2_;
  NodeSet set1_;
  NodeSet set2_;
};

}  // namespace

absl::StatusOr<RunRecord> Simulate(const Graph& g, const DiffusionParams& params,
                                   const AnyScheme& scheme,
                                   std::span<const NodeLabel> initial,
                                   const CtmcOptions& options) {
  const size_t n = g.num_nodes();
  if (initial.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "initial labels cover ", initial.size(), " nodes, graph has ", n));
  }
  if (!(options.t_end > 0.0) || !std::isfinite(options.t_end)) {
    return absl::InvalidArgumentError("t_end must be positive");
  }
  if (options.grid_points < 2) {
    return absl::InvalidArgumentError("need at least 2 grid points");
  }
  const double window_start =
      std::isnan(options.window_start) ? 0.8 * options.t_end : options.window_start;
  if (!(window_start >= 0.0 && window_start < options.t_end)) {
    return absl::InvalidArgumentError("window start must lie in [0, t_end)");
  }

  const AdvocacyRates rates = RatesOf(scheme);
  RunRecord rec;
  rec.seed = options.seed;
  rec.generator = RandomStream::kGeneratorName;
  rec.num_nodes = n;
  rec.num_edges = g.num_edges();
  rec.beta1 = params.beta1();
  rec.delta1 = params.delta1();
  rec.beta2 = params.beta2();
  rec.delta2 = params.delta2();
  rec.rates = rates;
  rec.t_end = options.t_end;
  rec.window_start = window_start;

  Simulator sim(g, params, rates);
  for (NodeId v = 0; v < n; ++v) sim.Set(v, initial[v]);

  RandomStream rng(options.seed);
  const double grid_step = options.t_end / static_cast<double>(options.grid_points - 1);
  size_t next_grid = 0;
  double window_i1 = 0.0;
  double window_i2 = 0.0;
  double t = 0.0;

  // Credits the current counts over [t, t_next): grid samples and the
  // window integral.
  auto advance = [&](double t_next) {
    while (next_grid < options.grid_points) {
      const double tg = next_grid + 1 == options.grid_points
                            ? options.t_end
                            : static_cast<double>(next_grid) * grid_step;
      if (tg >= t_next && t_next < options.t_end) break;
      rec.samples.push_back({tg, static_cast<uint32_t>(sim.set1().size()),
                             static_cast<uint32_t>(sim.set2().size())});
      ++next_grid;
    }
    const double overlap = std::max(0.0, t_next - std::max(t, window_start));
    window_i1 += overlap * static_cast<double>(sim.set1().size());
    window_i2 += overlap * static_cast<double>(sim.set2().size());
    t = t_next;
  };

  if (sim.set1().size() + sim.set2().size() == 0) {
    rec.absorbed = true;
    rec.absorption_time = 0.0;
  }

  while (true) {
    const EventRates er = sim.Rates();
    const double total = er.total();
    if (total <= 0.0) {
      advance(options.t_end);
      break;
    }
    const double t_next = t + rng.Exponential(total);
    if (t_next >= options.t_end) {
      advance(options.t_end);
      break;
    }
    advance(t_next);

    double u = rng.Uniform() * total;
    NodeId node = 0;
    NodeLabel to = NodeLabel::kS;
    if (u < er.heal1) {
      node = sim.set1().at(rng.Below(sim.set1().size()));
    } else if ((u -= er.heal1) < er.heal2) {
      node = sim.set2().at(rng.Below(sim.set2().size()));
    } else if ((u -= er.heal2) < er.t11) {
      node = sim.PickTarget(sim.tree1(), rng);
      to = NodeLabel::kI1;
    } else if ((u -= er.t11) < er.t12) {
      node = sim.PickTarget(sim.tree1(), rng);
      to = NodeLabel::kI2;
    } else if ((u -= er.t12) < er.t21) {
      node = sim.PickTarget(sim.tree2(), rng);
      to = NodeLabel::kI1;
    } else {
      node = sim.PickTarget(sim.tree2(), rng);
      to = NodeLabel::kI2;
    }
    const NodeLabel from = sim.label(node);
    sim.Set(node, to);
    ++rec.event_count;
    if (options.record_events) rec.events.push_back({t, node, from, to});
    if (!rec.absorbed && sim.set1().size() + sim.set2().size() == 0) {
      rec.absorbed = true;
      rec.absorption_time = t;
    }
    if (options.audit_interval > 0 && rec.event_count % options.audit_interval == 0) {
      const double fresh = sim.RecountRates().total();
      const double kept = sim.Rates().total();
      const double scale = std::max(std::abs(fresh), 1e-300);
      rec.max_rate_audit_error =
          std::max(rec.max_rate_audit_error, std::abs(fresh - kept) / scale);
    }
  }

  const double width = options.t_end - window_start;
  rec.window_fraction_i1 = window_i1 / width / static_cast<double>(n);
  rec.window_fraction_i2 = window_i2 / width / static_cast<double>(n);
  return rec;
}

absl::StatusOr<std::vector<NodeLabel>> SeedLabels(size_t n, size_t k1, size_t k2,
                                                  uint64_t seed) {
  if (k1 + k2 > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot seed ", k1, " + ", k2, " adopters on ", n, " nodes"));
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  RandomStream rng(seed);
  for (size_t i = 0; i < k1 + k2; ++i) {
    std::swap(order[i], order[i + rng.Below(n - i)]);
  }
  std::vector<NodeLabel> labels(n, NodeLabel::kS);
  for (size_t i = 0; i < k1; ++i) labels[order[i]] = NodeLabel::kI1;
  for (size_t i = k1; i < k1 + k2; ++i) labels[order[i]] = NodeLabel::kI2;
  return labels;
}

absl::StatusOr<BatchSummary> Batch(const Graph& g, const DiffusionParams& params,
                                   const AnyScheme& scheme,
                                   std::span<const NodeLabel> initial,
                                   const CtmcOptions& options, size_t runs,
                                   uint64_t base_seed,
                                   std::vector<RunRecord>* records) {
  if (runs < 1) return absl::InvalidArgumentError("batch needs runs >= 1");
  std::vector<double> f1(runs), f2(runs), ft(runs);
  BatchSummary summary;
  summary.runs = runs;
  for (size_t k = 0; k < runs; ++k) {
    CtmcOptions run_options = options;
    run_options.seed = base_seed + k;
    auto rec = Simulate(g, params, scheme, initial, run_options);
    if (!rec.ok()) return rec.status();
    f1[k] = rec->window_fraction_i1;
    f2[k] = rec->window_fraction_i2;
    ft[k] = f1[k] + f2[k];
    summary.absorbed_runs += rec->absorbed;
    if (records != nullptr) records->push_back(*std::move(rec));
  }
  auto mean_and_stderr = [runs](const std::vector<double>& x, double& mean,
                                double& err) {
    mean = 0.0;
    for (double v : x) mean += v;  // fixed index order
    mean /= static_cast<double>(runs);
    double ss = 0.0;
    for (double v : x) ss += (v - mean) * (v - mean);
    err = runs > 1 ? std::sqrt(ss / static_cast<double>(runs - 1) /
                               static_cast<double>(runs))
                   : 0.0;
  };
  mean_and_stderr(f1, summary.mean_i1, summary.stderr_i1);
  mean_and_stderr(f2, summary.mean_i2, summary.stderr_i2);
  mean_and_stderr(ft, summary.mean_total, summary.stderr_total);
  return summary;
}

void WriteRunCsv(const RunRecord& record, std::ostream& out) {
  nlohmann::ordered_json meta;
  meta["seed"] = record.seed;
  meta["generator"] = record.generator;
  meta["n"] = record.num_nodes;
  meta["m"] = record.num_edges;
  meta["beta1"] = record.beta1;
  meta["delta1"] = record.delta1;
  meta["beta2"] = record.beta2;
  meta["delta2"] = record.delta2;
  meta["r11"] = record.rates.r11;
  meta["r12"] = record.rates.r12;
  meta["r21"] = record.rates.r21;
  meta["r22"] = record.rates.r22;
  meta["t_end"] = record.t_end;
  meta["events"] = record.event_count;
  meta["absorbed"] = record.absorbed;
  out << "# " << meta.dump() << "\r\n";
  CsvRecord().Add("t").Add("nI1").Add("nI2").WriteTo(out);
  for (const CtmcSample& s : record.samples) {
    CsvRecord()
        .Add(s.t)
        .Add(static_cast<uint64_t>(s.n_i1))
        .Add(static_cast<uint64_t>(s.n_i2))
        .WriteTo(out);
  }
}

void WriteBatchSummaryCsv(const BatchSummary& s, std::ostream& out) {
  CsvRecord()
      .Add("runs").Add("absorbed_runs").Add("mean_i1").Add("stderr_i1")
      .Add("mean_i2").Add("stderr_i2").Add("mean_total").Add("stderr_total")
      .WriteTo(out);
  CsvRecord()
      .Add(static_cast<uint64_t>(s.runs)).Add(static_cast<uint64_t>(s.absorbed_runs))
      .Add(s.mean_i1).Add(s.stderr_i1).Add(s.mean_i2).Add(s.stderr_i2)
      .Add(s.mean_total).Add(s.stderr_total)
      .WriteTo(out);
}

}  // namespace privdiff
