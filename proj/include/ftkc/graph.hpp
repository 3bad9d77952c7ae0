#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "ftkc/instance.hpp"

namespace ftkc {

using VertexSet = std::vector<int>;  // sorted, duplicate-free

inline constexpr int kUnreachable = 1 << 28;

// Undirected simple graph on 0..n-1 with all-pairs hop distances computed at
// construction. Instances stay small enough (tens of vertices) that the
// quadratic table is cheaper than repeated BFS in every caller.
class Graph {
 public:
  Graph() = default;
  Graph(int n, const std::vector<std::pair<int, int>>& edges, std::optional<Distance> tau = std::nullopt);

  int size() const { return static_cast<int>(adj_.size()); }
  const VertexSet& neighbors(int v) const { return adj_[static_cast<std::size_t>(v)]; }
  bool adjacent(int u, int v) const;
  int hops(int u, int v) const { return hop_[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }
  std::vector<std::pair<int, int>> edges() const;  // u < v, sorted
  std::size_t edge_count() const;
  const std::optional<Distance>& tau() const { return tau_; }

  friend bool operator==(const Graph& a, const Graph& b) { return a.adj_ == b.adj_; }

 private:
  std::vector<VertexSet> adj_;
  std::vector<std::vector<int>> hop_;
  std::optional<Distance> tau_;
};

Graph threshold_graph(const MetricInstance& inst, const Distance& tau);

// N^ell(U): every vertex within ell hops of some member of U (U included).
VertexSet neighborhood(const Graph& g, const VertexSet& u, int ell);
VertexSet neighborhood(const Graph& g, int u, int ell);

Graph power_graph(const Graph& g, int ell);

std::vector<VertexSet> connected_components(const Graph& g);
bool is_connected(const Graph& g);

// Drops every edge whose endpoints both have capacity 0. Throws InputError
// unless the capacities are {0, L} for one L > 0.
Graph strip_zero_zero_edges(const Graph& g, const std::vector<Capacity>& capacities);

// Subgraph induced by `vertices` (sorted); local vertex i is vertices[i].
Graph induced_subgraph(const Graph& g, const VertexSet& vertices);

// Set helpers on sorted vectors.
VertexSet set_union(const VertexSet& a, const VertexSet& b);
VertexSet set_difference(const VertexSet& a, const VertexSet& b);
VertexSet set_intersection(const VertexSet& a, const VertexSet& b);
bool contains(const VertexSet& s, int v);

}  // namespace ftkc
