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

#ifndef PRIVDIFF_GRAPH_H_
#define PRIVDIFF_GRAPH_H_

#include <cstddef>
#include <cstdint>
#include <istream>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"

namespace privdiff {

using NodeId = uint32_t;
using Edge = std::pair<NodeId, NodeId>;

// Immutable undirected simple graph in compressed adjacency form. Each edge
// is stored in both directions so that neighbor iteration is O(deg); memory
// is 2m node ids plus n+1 offsets. Neighbor lists are sorted.
class Graph {
 public:
  Graph() = default;

  // Builds a graph on nodes 0..num_nodes-1. Self-loops, duplicate edges and
  // out-of-range endpoints are rejected; callers that want to tolerate them
  // should clean the list first (LoadEdgeList does).
  static absl::StatusOr<Graph> FromEdges(size_t num_nodes,
                                         std::span<const Edge> edges);

  size_t num_nodes() const { return offsets_.empty() ? 0 : offsets_.size() - 1; }
  size_t num_edges() const { return neighbors_.size() / 2; }

  std::span<const NodeId> Neighbors(NodeId node) const {
    return {neighbors_.data() + offsets_[node],
            neighbors_.data() + offsets_[node + 1]};
  }
  size_t Degree(NodeId node) const {
    return offsets_[node + 1] - offsets_[node];
  }
  size_t MaxDegree() const { return max_degree_; }

  bool HasEdge(NodeId a, NodeId b) const;
  bool IsConnected() const;
  // True iff every unordered pair of distinct nodes is joined.
  bool IsComplete() const;

  // y = A x, one pass over the stored adjacency (fixed summation order).
  void Multiply(std::span<const double> x, std::span<double> y) const;

  // Undirected edges as (u, v) with u < v, in ascending order.
  std::vector<Edge> EdgeList() const;

 private:
  std::vector<size_t> offsets_;
  std::vector<NodeId> neighbors_;
  size_t max_degree_ = 0;
};

// Result of parsing an edge-list file. Dropped items are counted rather than
// treated as errors.
struct EdgeListLoad {
  Graph graph;
  size_t duplicate_edges = 0;
  size_t self_loops = 0;
  // original_ids[k] is the id that appeared in the input for node k.
  std::vector<uint64_t> original_ids;
};

// Parses the edge-list wire format: one edge per line as two whitespace
// separated non-negative integer ids; blank lines and lines starting with
// '#' are ignored. Ids are compacted to 0..n-1 in first-seen order.
absl::StatusOr<EdgeListLoad> LoadEdgeList(std::istream& in);
absl::StatusOr<EdgeListLoad> LoadEdgeListFile(const std::string& path);

absl::StatusOr<Graph> CompleteGraph(size_t n);
absl::StatusOr<Graph> RingGraph(size_t n);
// Hub node 0 joined to leaves 1..n-1.
absl::StatusOr<Graph> StarGraph(size_t n);
// G(n, p): each pair (i < j) joined independently with probability p, drawn
// in lexicographic pair order from a RandomStream seeded with `seed`.
absl::StatusOr<Graph> ErdosRenyiGraph(size_t n, double p, uint64_t seed);

struct GeneratorSpec {
  enum class Kind { kComplete, kRing, kStar, kErdosRenyi };
  Kind kind = Kind::kComplete;
  size_t n = 0;
  double p = 0.0;  // kErdosRenyi only
};

// Dispatches to the generators above. Deterministic for a fixed seed.
absl::StatusOr<Graph> GenerateGraph(const GeneratorSpec& spec, uint64_t seed);

struct SpectralOptions {
  double tol = 1e-10;
  int max_iter = 100000;
  // Power iteration runs on (M + shift*I). A positive shift separates the
  // Perron root from -lambda on bipartite graphs, where the unshifted
  // iteration oscillates.
  double shift = 1.0;
};

struct SpectralResult {
  double lambda_max = 0.0;
  std::vector<double> eigvec;  // L2-normalized, positive on connected graphs
  int iterations = 0;
  double residual = 0.0;  // ||M v - lambda v||_inf
};

// Largest adjacency eigenvalue by power iteration from the all-ones vector.
absl::StatusOr<SpectralResult> LargestEigenvalue(const Graph& g,
                                                 const SpectralOptions& options = {});

// Perron root of diag(row_scale) * A for a non-negative row_scale.
absl::StatusOr<SpectralResult> LargestEigenvalueScaled(
    const Graph& g, std::span<const double> row_scale,
    const SpectralOptions& options = {});

}  // namespace privdiff

#endif  // PRIVDIFF_GRAPH_H_
