#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftkc/graph.hpp"

namespace ftkc {

struct Clustering {
  VertexSet midpoints_sorted;           // Γ as a sorted set
  std::vector<int> midpoints;           // Γ in creation order
  std::vector<int> parent;              // per midpoint index; -1 for the root
  std::vector<int> cluster_of;          // vertex -> midpoint vertex (δ)
  std::vector<VertexSet> clusters;      // per midpoint index, C_v
  std::vector<VertexSet> backups;       // per midpoint index, B_v
  VertexSet all_backups;                // B
  std::vector<int> index_of_midpoint;   // vertex -> midpoint index, or -1

  int midpoint_count() const { return static_cast<int>(midpoints.size()); }
  bool is_backup(int v) const { return contains(all_backups, v); }
  // Tree edges (parent, child) as vertex pairs.
  std::vector<std::pair<int, int>> tree_edges() const;
};

// Greedy monarch clustering: start at vertex 0, repeatedly add the
// lowest-index vertex at hop distance exactly 3 from the current midpoints,
// hanging it under the earliest midpoint at distance 3. Closed neighborhoods
// form the cluster cores; remaining vertices join the earliest midpoint at
// distance 2. Throws InputError on a disconnected graph.
Clustering monarch_clustering(const Graph& g);

struct BackupSelection {
  std::optional<Clustering> clustering;  // empty when infeasible
  std::string reason;
};

// B_v = the alpha largest-capacity members of C_v, ties by lowest index.
// Infeasible when some cluster has fewer than alpha members.
BackupSelection select_backups(Clustering c, const std::vector<Capacity>& capacities, int alpha);

// Directed graph G' as out-neighbor lists (open; closed sets add the vertex itself).
struct Digraph {
  std::vector<VertexSet> out;
  int size() const { return static_cast<int>(out.size()); }
  bool has_arc(int u, int w) const { return contains(out[static_cast<std::size_t>(u)], w); }
  VertexSet closed_out(int u) const;
  VertexSet closed_out(const VertexSet& u) const;
};

// Arcs (u,w) for every edge of G (both directions) plus (u,w) for w in B_v
// whenever u is within two hops of midpoint v.
Digraph build_gprime(const Graph& g, const Clustering& c);

struct AuxiliaryGraph {
  Graph extended;                   // G plus one vertex a_v = n + i per midpoint index i
  std::vector<Capacity> capacities;  // extended with L(a_v) = L(m_v)
  std::vector<int> aux;             // per midpoint index, the id of a_v
  std::vector<int> anchor;          // per midpoint index, m_v
  int base_size = 0;                // n
};

// Throws ContractViolation when N(v) \ B is empty for some midpoint v.
AuxiliaryGraph add_auxiliary(const Clustering& c, const Graph& g, const std::vector<Capacity>& capacities);

struct IndependenceCheck {
  bool independent = false;
  std::vector<VertexSet> parts;  // components of G^ell restricted to W
};

IndependenceCheck is_alpha_ell_independent(const VertexSet& w, int alpha, int ell, const Graph& g);

// Greedy lowest-index scan keeping vertices at hop distance >= 7 from all kept ones.
VertexSet maximal_7_independent(const Graph& g);

}  // namespace ftkc
