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

#include "privdiff/dynamics.h"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "privdiff/csv.h"
#include "privdiff/random.h"

namespace privdiff {
namespace {

double MaxAbs(std::span<const double> a, std::span<const double> b) {
  double m = 0.0;
  for (double x : a) m = std::max(m, std::abs(x));
  for (double x : b) m = std::max(m, std::abs(x));
  return m;
}

absl::Status CheckDimensions(const NodeState& state, const Graph& g) {
  if (state.p1.size() != g.num_nodes() || state.p2.size() != g.num_nodes()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "state has ", state.p1.size(), "/", state.p2.size(),
        " entries but the graph has ", g.num_nodes(), " nodes"));
  }
  return absl::OkStatus();
}

// Work buffers for one RK4 step over 2n unknowns.
struct Rk4Workspace {
  explicit Rk4Workspace(size_t n)
      : k1a(n), k1b(n), k2a(n), k2b(n), k3a(n), k3b(n), k4a(n), k4b(n),
        tmpa(n), tmpb(n) {}
  std::vector<double> k1a, k1b, k2a, k2b, k3a, k3b, k4a, k4b, tmpa, tmpb;
};

}  // namespace

double NodeState::Aggregate1() const {
  return std::accumulate(p1.begin(), p1.end(), 0.0);
}

double NodeState::Aggregate2() const {
  return std::accumulate(p2.begin(), p2.end(), 0.0);
}

double NodeDerivative::MaxAbs() const { return privdiff::MaxAbs(dp1, dp2); }

absl::Status ValidateNodeState(const NodeState& state, double tol) {
  if (state.p1.size() != state.p2.size()) {
    return absl::InvalidArgumentError("p1 and p2 differ in length");
  }
  for (size_t i = 0; i < state.size(); ++i) {
    const double a = state.p1[i];
    const double b = state.p2[i];
    if (!(a >= -tol) || !(b >= -tol) || !(a + b <= 1.0 + tol)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "node ", i, " violates 0 <= p1, p2 and p1 + p2 <= 1 (p1=", a,
          ", p2=", b, ")"));
    }
  }
  return absl::OkStatus();
}

void EvaluateDerivative(const Graph& g, const DiffusionParams& params,
                        const AdvocacyRates& r, std::span<const double> p1,
                        std::span<const double> p2, std::span<double> dp1,
                        std::span<double> dp2) {
  const double b1 = params.beta1();
  const double b2 = params.beta2();
  const double d1 = params.delta1();
  const double d2 = params.delta2();
  const size_t n = g.num_nodes();
  for (NodeId i = 0; i < n; ++i) {
    double m1 = 0.0;
    double m2 = 0.0;
    for (NodeId j : g.Neighbors(i)) {
      m1 += p1[j];
      m2 += p2[j];
    }
    const double s = 1.0 - p1[i] - p2[i];
    dp1[i] = -d1 * p1[i] + b1 * s * (r.r11 * m1 + r.r21 * m2);
    dp2[i] = -d2 * p2[i] + b2 * s * (r.r12 * m1 + r.r22 * m2);
  }
}

absl::StatusOr<NodeDerivative> Derivative(const NodeState& state, const Graph& g,
                                          const DiffusionParams& params,
                                          const AnyScheme& scheme) {
  if (absl::Status s = CheckDimensions(state, g); !s.ok()) return s;
  NodeDerivative d{std::vector<double>(g.num_nodes()),
                   std::vector<double>(g.num_nodes())};
  EvaluateDerivative(g, params, RatesOf(scheme), state.p1, state.p2, d.dp1,
                     d.dp2);
  return d;
}

double DefaultTimeStep(const Graph& g, const DiffusionParams& params) {
  const double deg = static_cast<double>(g.MaxDegree());
  const double fastest = std::max({params.delta1(), params.delta2(),
                                   params.beta1() * deg, params.beta2() * deg});
  return 0.01 / fastest;
}

absl::StatusOr<Trajectory> Integrate(const NodeState& x0, const Graph& g,
                                     const DiffusionParams& params,
                                     const AnyScheme& scheme,
                                     const IntegrateOptions& options) {
  if (absl::Status s = CheckDimensions(x0, g); !s.ok()) return s;
  if (absl::Status s = ValidateNodeState(x0); !s.ok()) return s;
  const double dt = options.dt > 0.0 ? options.dt : DefaultTimeStep(g, params);
  if (!(options.t_end >= 0.0) || !std::isfinite(options.t_end)) {
    return absl::InvalidArgumentError("t_end must be a non-negative time");
  }
  if (!(dt > 0.0) || !std::isfinite(dt) || options.dt < 0.0) {
    return absl::InvalidArgumentError("dt must be positive");
  }
  if (options.stop && (options.stop->tol <= 0.0 || options.stop->window < 1)) {
    return absl::InvalidArgumentError("invalid steady-state rule");
  }

  const size_t n = g.num_nodes();
  const AdvocacyRates rates = RatesOf(scheme);
  const auto f = [&](std::span<const double> a, std::span<const double> b,
                     std::span<double> da, std::span<double> db) {
    EvaluateDerivative(g, params, rates, a, b, da, db);
  };

  const double planned = std::ceil(options.t_end / dt - 1e-9);
  const size_t total_steps = static_cast<size_t>(std::max(0.0, planned));
  const size_t max_records = std::max<size_t>(options.max_records, 2);
  const size_t stride =
      std::max<size_t>(1, (total_steps + max_records - 2) / (max_records - 1));

  Trajectory traj;
  traj.dt = dt;
  auto record = [&](double t, const std::vector<double>& a,
                    const std::vector<double>& b) {
    traj.times.push_back(t);
    traj.states.push_back({a, b});
    traj.agg_p1.push_back(std::accumulate(a.begin(), a.end(), 0.0));
    traj.agg_p2.push_back(std::accumulate(b.begin(), b.end(), 0.0));
  };

  std::vector<double> xa = x0.p1;
  std::vector<double> xb = x0.p2;
  record(0.0, xa, xb);

  Rk4Workspace w(n);
  int quiet_steps = 0;
  double t = 0.0;
  size_t step = 0;
  while (step < total_steps) {
    f(xa, xb, w.k1a, w.k1b);
    traj.final_derivative_norm = MaxAbs(w.k1a, w.k1b);
    if (options.stop) {
      quiet_steps = traj.final_derivative_norm < options.stop->tol ? quiet_steps + 1 : 0;
      if (quiet_steps >= options.stop->window) {
        traj.stopped_early = true;
        break;
      }
    }
    const double h = std::min(dt, options.t_end - t);
    for (size_t i = 0; i < n; ++i) {
      w.tmpa[i] = xa[i] + 0.5 * h * w.k1a[i];
      w.tmpb[i] = xb[i] + 0.5 * h * w.k1b[i];
    }
    f(w.tmpa, w.tmpb, w.k2a, w.k2b);
    for (size_t i = 0; i < n; ++i) {
      w.tmpa[i] = xa[i] + 0.5 * h * w.k2a[i];
      w.tmpb[i] = xb[i] + 0.5 * h * w.k2b[i];
    }
    f(w.tmpa, w.tmpb, w.k3a, w.k3b);
    for (size_t i = 0; i < n; ++i) {
      w.tmpa[i] = xa[i] + h * w.k3a[i];
      w.tmpb[i] = xb[i] + h * w.k3b[i];
    }
    f(w.tmpa, w.tmpb, w.k4a, w.k4b);

    double step_clip = 0.0;
    for (size_t i = 0; i < n; ++i) {
      double a = xa[i] + h / 6.0 * (w.k1a[i] + 2.0 * w.k2a[i] + 2.0 * w.k3a[i] + w.k4a[i]);
      double b = xb[i] + h / 6.0 * (w.k1b[i] + 2.0 * w.k2b[i] + 2.0 * w.k3b[i] + w.k4b[i]);
      if (!(std::abs(a) <= options.divergence_bound) ||
          !(std::abs(b) <= options.divergence_bound)) {
        return absl::AbortedError(absl::StrCat(
            "integration diverged at t=", t + h, " on node ", i, " (p1=", a,
            ", p2=", b, "); reduce dt below ", dt));
      }
      if (a < 0.0) {
        step_clip += -a;
        a = 0.0;
      }
      if (b < 0.0) {
        step_clip += -b;
        b = 0.0;
      }
      const double sum = a + b;
      if (sum > 1.0) {
        const double na = a / sum;
        const double nb = b / sum;
        step_clip += std::abs(a - na) + std::abs(b - nb);
        a = na;
        b = nb;
      }
      xa[i] = a;
      xb[i] = b;
    }
    traj.total_clip += step_clip;
    traj.max_step_clip = std::max(traj.max_step_clip, step_clip);

    ++step;
    t = step == total_steps ? options.t_end : static_cast<double>(step) * dt;
    if (step % stride == 0 && step != total_steps) record(t, xa, xb);
  }
  traj.steps = step;
  if (traj.times.back() != t) record(t, xa, xb);
  if (!traj.stopped_early) {
    f(xa, xb, w.k1a, w.k1b);
    traj.final_derivative_norm = MaxAbs(w.k1a, w.k1b);
  }
  return traj;
}

absl::StatusOr<Trajectory> PrivacyObliviousBaseline(const NodeState& x0,
                                                    const Graph& g,
                                                    const DiffusionParams& params,
                                                    double t_end, double dt) {
  IntegrateOptions options;
  options.t_end = t_end;
  options.dt = dt;
  return Integrate(x0, g, params, MakeObliviousScheme(), options);
}

absl::StatusOr<NodeState> UniformSeed(size_t n, double c1, double c2) {
  if (!(c1 >= 0.0) || !(c2 >= 0.0) || !(c1 + c2 <= 1.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "uniform seed needs c1, c2 >= 0 and c1 + c2 <= 1, got ", c1, ", ", c2));
  }
  return NodeState{std::vector<double>(n, c1), std::vector<double>(n, c2)};
}

absl::StatusOr<NodeState> RandomSubsetSeed(size_t n, size_t k1, size_t k2,
                                           uint64_t seed) {
  if (k1 + k2 > n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "cannot seed ", k1, " + ", k2, " adopters on ", n, " nodes"));
  }
  std::vector<NodeId> order(n);
  std::iota(order.begin(), order.end(), NodeId{0});
  RandomStream rng(seed);
  // Partial Fisher-Yates: the first k1 + k2 slots are a uniform sample.
  for (size_t i = 0; i < k1 + k2; ++i) {
    const size_t j = i + rng.Below(n - i);
    std::swap(order[i], order[j]);
  }
  NodeState state = NodeState::Zeros(n);
  for (size_t i = 0; i < k1; ++i) state.p1[order[i]] = 1.0;
  for (size_t i = k1; i < k1 + k2; ++i) state.p2[order[i]] = 1.0;
  return state;
}

void WriteTrajectoryCsv(const Trajectory& trajectory, bool wide,
                        std::ostream& out) {
  CsvRecord header;
  header.Add("t");
  const size_t n = trajectory.states.empty() ? 0 : trajectory.states[0].size();
  if (wide) {
    for (size_t i = 0; i < n; ++i) header.Add(absl::StrCat("p1_", i));
    for (size_t i = 0; i < n; ++i) header.Add(absl::StrCat("p2_", i));
  } else {
    header.Add("agg_p1").Add("agg_p2");
  }
  header.WriteTo(out);
  for (size_t k = 0; k < trajectory.times.size(); ++k) {
    CsvRecord row;
    row.Add(trajectory.times[k]);
    if (wide) {
      for (double v : trajectory.states[k].p1) row.Add(v);
      for (double v : trajectory.states[k].p2) row.Add(v);
    } else {
      row.Add(trajectory.agg_p1[k]).Add(trajectory.agg_p2[k]);
    }
    row.WriteTo(out);
  }
}

}  // namespace privdiff
