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

#include "privdiff/graph.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <string_view>
#include <unordered_map>
#include <unordered_set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "privdiff/random.h"

namespace privdiff {
namespace {

uint64_t PairKey(NodeId a, NodeId b) {
  if (a > b) std::swap(a, b);
  return (static_cast<uint64_t>(a) << 32) | b;
}

bool IsSpace(char c) {
  return c == ' ' || c == '\t' || c == '\r' || c == '\v' || c == '\f';
}

// Splits `line` on whitespace into at most 3 tokens (the third only to
// detect trailing garbage).
std::vector<std::string_view> Tokenize(std::string_view line) {
  std::vector<std::string_view> tokens;
  size_t i = 0;
  while (i < line.size() && tokens.size() < 3) {
    while (i < line.size() && IsSpace(line[i])) ++i;
    if (i == line.size()) break;
    size_t j = i;
    while (j < line.size() && !IsSpace(line[j])) ++j;
    tokens.push_back(line.substr(i, j - i));
    i = j;
  }
  return tokens;
}

bool ParseId(std::string_view token, uint64_t& out) {
  const char* end = token.data() + token.size();
  auto [ptr, ec] = std::from_chars(token.data(), end, out);
  return ec == std::errc() && ptr == end;
}

absl::StatusOr<SpectralResult> PowerIteration(
    const Graph& g, std::span<const double> row_scale,
    const SpectralOptions& options) {
  const size_t n = g.num_nodes();
  if (g.num_edges() == 0) {
    return absl::InvalidArgumentError(
        "largest eigenvalue needs a graph with at least one edge");
  }
  if (options.tol <= 0.0 || options.max_iter <= 0 || options.shift < 0.0) {
    return absl::InvalidArgumentError("invalid spectral options");
  }
  if (!row_scale.empty() && row_scale.size() != n) {
    return absl::InvalidArgumentError(absl::StrCat(
        "row scale has ", row_scale.size(), " entries for ", n, " nodes"));
  }

  std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
  std::vector<double> w(n);
  SpectralResult result;
  for (int iter = 1; iter <= options.max_iter; ++iter) {
    g.Multiply(v, w);
    if (!row_scale.empty()) {
      for (size_t i = 0; i < n; ++i) w[i] *= row_scale[i];
    }
    // v is unit length, so v.w is the Rayleigh quotient.
    const double lambda = std::inner_product(v.begin(), v.end(), w.begin(), 0.0);
    double residual = 0.0;
    for (size_t i = 0; i < n; ++i) {
      residual = std::max(residual, std::abs(w[i] - lambda * v[i]));
    }
    result.lambda_max = lambda;
    result.iterations = iter;
    result.residual = residual;
    if (residual < options.tol) {
      result.eigvec = std::move(v);
      return result;
    }
    double norm = 0.0;
    for (size_t i = 0; i < n; ++i) {
      w[i] += options.shift * v[i];
      norm += w[i] * w[i];
    }
    norm = std::sqrt(norm);
    if (!(norm > 0.0) || !std::isfinite(norm)) {
      return absl::InternalError(
          absl::StrCat("power iteration collapsed at iteration ", iter));
    }
    for (size_t i = 0; i < n; ++i) v[i] = w[i] / norm;
  }
  return absl::ResourceExhaustedError(absl::StrCat(
      "power iteration did not converge in ", options.max_iter,
      " iterations (lambda estimate ", result.lambda_max, ", residual ",
      result.residual, ", tol ", options.tol, ")"));
}

}  // namespace

absl::StatusOr<Graph> Graph::FromEdges(size_t num_nodes,
                                       std::span<const Edge> edges) {
  if (num_nodes > std::numeric_limits<NodeId>::max()) {
    return absl::InvalidArgumentError("too many nodes");
  }
  std::vector<size_t> degree(num_nodes, 0);
  std::unordered_set<uint64_t> seen;
  seen.reserve(edges.size() * 2);
  for (const auto& [a, b] : edges) {
    if (a >= num_nodes || b >= num_nodes) {
      return absl::InvalidArgumentError(absl::StrCat(
          "edge (", a, ", ", b, ") out of range for ", num_nodes, " nodes"));
    }
    if (a == b) {
      return absl::InvalidArgumentError(absl::StrCat("self-loop at node ", a));
    }
    if (!seen.insert(PairKey(a, b)).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate edge (", a, ", ", b, ")"));
    }
    ++degree[a];
    ++degree[b];
  }

  Graph g;
  g.offsets_.assign(num_nodes + 1, 0);
  for (size_t i = 0; i < num_nodes; ++i) {
    g.offsets_[i + 1] = g.offsets_[i] + degree[i];
    g.max_degree_ = std::max(g.max_degree_, degree[i]);
  }
  g.neighbors_.resize(2 * edges.size());
  std::vector<size_t> cursor(g.offsets_.begin(), g.offsets_.end() - 1);
  for (const auto& [a, b] : edges) {
    g.neighbors_[cursor[a]++] = b;
    g.neighbors_[cursor[b]++] = a;
  }
  for (size_t i = 0; i < num_nodes; ++i) {
    std::sort(g.neighbors_.begin() + g.offsets_[i],
              g.neighbors_.begin() + g.offsets_[i + 1]);
  }
  return g;
}

bool Graph::HasEdge(NodeId a, NodeId b) const {
  if (a >= num_nodes() || b >= num_nodes()) return false;
  auto nbrs = Neighbors(a);
  return std::binary_search(nbrs.begin(), nbrs.end(), b);
}

bool Graph::IsConnected() const {
  const size_t n = num_nodes();
  if (n == 0) return false;
  std::vector<char> visited(n, 0);
  std::queue<NodeId> frontier;
  frontier.push(0);
  visited[0] = 1;
  size_t reached = 1;
  while (!frontier.empty()) {
    NodeId u = frontier.front();
    frontier.pop();
    for (NodeId v : Neighbors(u)) {
      if (!visited[v]) {
        visited[v] = 1;
        ++reached;
        frontier.push(v);
      }
    }
  }
  return reached == n;
}

bool Graph::IsComplete() const {
  const size_t n = num_nodes();
  return n >= 2 && num_edges() == n * (n - 1) / 2;
}

void Graph::Multiply(std::span<const double> x, std::span<double> y) const {
  const size_t n = num_nodes();
  for (size_t i = 0; i < n; ++i) {
    double sum = 0.0;
    for (size_t k = offsets_[i]; k < offsets_[i + 1]; ++k) {
      sum += x[neighbors_[k]];
    }
    y[i] = sum;
  }
}

std::vector<Edge> Graph::EdgeList() const {
  std::vector<Edge> edges;
  edges.reserve(num_edges());
  for (NodeId u = 0; u < num_nodes(); ++u) {
    for (NodeId v : Neighbors(u)) {
      if (u < v) edges.emplace_back(u, v);
    }
  }
  return edges;
}

absl::StatusOr<EdgeListLoad> LoadEdgeList(std::istream& in) {
  EdgeListLoad load;
  std::unordered_map<uint64_t, NodeId> compact;
  std::unordered_set<uint64_t> seen;
  std::vector<Edge> edges;

  auto intern = [&](uint64_t id) {
    auto [it, inserted] =
        compact.emplace(id, static_cast<NodeId>(load.original_ids.size()));
    if (inserted) load.original_ids.push_back(id);
    return it->second;
  };

  std::string line;
  size_t line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    std::string_view view(line);
    size_t first = 0;
    while (first < view.size() && IsSpace(view[first])) ++first;
    if (first == view.size() || view[first] == '#') continue;

    auto tokens = Tokenize(view);
    uint64_t a = 0;
    uint64_t b = 0;
    if (tokens.size() != 2 || !ParseId(tokens[0], a) || !ParseId(tokens[1], b)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "line ", line_number,
          ": expected two non-negative integer node ids, got \"", line, "\""));
    }
    NodeId u = intern(a);
    NodeId v = intern(b);
    if (u == v) {
      ++load.self_loops;
      continue;
    }
    if (!seen.insert(PairKey(u, v)).second) {
      ++load.duplicate_edges;
      continue;
    }
    edges.emplace_back(u, v);
  }
  if (in.bad()) {
    return absl::DataLossError("read error while loading edge list");
  }
  if (edges.empty()) {
    return absl::InvalidArgumentError("edge list contains no edges");
  }
  auto graph = Graph::FromEdges(load.original_ids.size(), edges);
  if (!graph.ok()) return graph.status();
  load.graph = *std::move(graph);
  return load;
}

absl::StatusOr<EdgeListLoad> LoadEdgeListFile(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open edge list ", path));
  }
  return LoadEdgeList(in);
}

absl::StatusOr<Graph> CompleteGraph(size_t n) {
  if (n < 2) {
    return absl::InvalidArgumentError("complete graph needs n >= 2");
  }
  std::vector<Edge> edges;
  edges.reserve(n * (n - 1) / 2);
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) edges.emplace_back(i, j);
  }
  return Graph::FromEdges(n, edges);
}

absl::StatusOr<Graph> RingGraph(size_t n) {
  if (n < 3) return absl::InvalidArgumentError("ring graph needs n >= 3");
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    edges.emplace_back(i, static_cast<NodeId>((i + 1) % n));
  }
  return Graph::FromEdges(n, edges);
}

absl::StatusOr<Graph> StarGraph(size_t n) {
  if (n < 2) return absl::InvalidArgumentError("star graph needs n >= 2");
  std::vector<Edge> edges;
  for (NodeId i = 1; i < n; ++i) edges.emplace_back(0, i);
  return Graph::FromEdges(n, edges);
}

absl::StatusOr<Graph> ErdosRenyiGraph(size_t n, double p, uint64_t seed) {
  if (n < 2) return absl::InvalidArgumentError("Erdos-Renyi graph needs n >= 2");
  if (!(p > 0.0 && p <= 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("edge probability must lie in (0, 1], got ", p));
  }
  RandomStream rng(seed);
  std::vector<Edge> edges;
  for (NodeId i = 0; i < n; ++i) {
    for (NodeId j = i + 1; j < n; ++j) {
      if (rng.Uniform() < p) edges.emplace_back(i, j);
    }
  }
  return Graph::FromEdges(n, edges);
}

absl::StatusOr<Graph> GenerateGraph(const GeneratorSpec& spec, uint64_t seed) {
  switch (spec.kind) {
    case GeneratorSpec::Kind::kComplete:
      return CompleteGraph(spec.n);
    case GeneratorSpec::Kind::kRing:
      return RingGraph(spec.n);
    case GeneratorSpec::Kind::kStar:
      return StarGraph(spec.n);
    case GeneratorSpec::Kind::kErdosRenyi:
      return ErdosRenyiGraph(spec.n, spec.p, seed);
  }
  return absl::InvalidArgumentError("unknown generator kind");
}

absl::StatusOr<SpectralResult> LargestEigenvalue(const Graph& g,
                                                 const SpectralOptions& options) {
  return PowerIteration(g, {}, options);
}

absl::StatusOr<SpectralResult> LargestEigenvalueScaled(
    const Graph& g, std::span<const double> row_scale,
    const SpectralOptions& options) {
  for (double s : row_scale) {
    if (!(s >= 0.0)) {
      return absl::InvalidArgumentError("row scale must be non-negative");
    }
  }
  if (row_scale.size() != g.num_nodes()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "row scale has ", row_scale.size(), " entries for ", g.num_nodes(),
        " nodes"));
  }
  return PowerIteration(g, row_scale, options);
}

}  // namespace privdiff
