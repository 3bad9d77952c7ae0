#include "ftkc/clustering.hpp"

#include <algorithm>
#include <numeric>

#include "ftkc/errors.hpp"

namespace ftkc {

std::vector<std::pair<int, int>> Clustering::tree_edges() const {
  std::vector<std::pair<int, int>> out;
  for (std::size_t i = 0; i < midpoints.size(); ++i) {
    if (parent[i] >= 0) out.emplace_back(midpoints[static_cast<std::size_t>(parent[i])], midpoints[i]);
  }
  return out;
}

Clustering monarch_clustering(const Graph& g) {
  const int n = g.size();
  if (n == 0) throw InputError("cannot cluster an empty graph");
  if (!is_connected(g)) throw InputError("monarch clustering needs a connected graph");

  Clustering c;
  c.midpoints.push_back(0);
  c.parent.push_back(-1);
  std::vector<int> gap(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) gap[static_cast<std::size_t>(v)] = g.hops(0, v);

  while (true) {
    int next = -1;
    for (int v = 0; v < n && next < 0; ++v) {
      if (gap[static_cast<std::size_t>(v)] == 3) next = v;
    }
    if (next < 0) break;
    int parent = -1;
    for (std::size_t i = 0; i < c.midpoints.size() && parent < 0; ++i) {
      if (g.hops(c.midpoints[i], next) == 3) parent = static_cast<int>(i);
    }
    c.midpoints.push_back(next);
    c.parent.push_back(parent);
    for (int v = 0; v < n; ++v) {
      gap[static_cast<std::size_t>(v)] = std::min(gap[static_cast<std::size_t>(v)], g.hops(next, v));
    }
  }

  const std::size_t m = c.midpoints.size();
  c.clusters.assign(m, {});
  c.backups.assign(m, {});
  c.cluster_of.assign(static_cast<std::size_t>(n), -1);
  c.index_of_midpoint.assign(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < m; ++i) c.index_of_midpoint[static_cast<std::size_t>(c.midpoints[i])] = static_cast<int>(i);

  for (int dist = 1; dist <= 2; ++dist) {
    for (int v = 0; v < n; ++v) {
      if (c.cluster_of[static_cast<std::size_t>(v)] >= 0) continue;
      for (std::size_t i = 0; i < m; ++i) {
        if (g.hops(c.midpoints[i], v) <= dist) {
          c.cluster_of[static_cast<std::size_t>(v)] = c.midpoints[i];
          c.clusters[i].push_back(v);
          break;
        }
      }
    }
  }
  for (int v = 0; v < n; ++v) {
    if (c.cluster_of[static_cast<std::size_t>(v)] < 0) throw ContractViolation("vertex left unclustered");
  }
  for (auto& cluster : c.clusters) std::sort(cluster.begin(), cluster.end());
  c.midpoints_sorted = c.midpoints;
  std::sort(c.midpoints_sorted.begin(), c.midpoints_sorted.end());
  return c;
}

BackupSelection select_backups(Clustering c, const std::vector<Capacity>& capacities, int alpha) {
  BackupSelection out;
  c.all_backups.clear();
  for (std::size_t i = 0; i < c.clusters.size(); ++i) {
    const auto& cluster = c.clusters[i];
    if (static_cast<int>(cluster.size()) < alpha) {
      out.reason = "cluster of midpoint " + std::to_string(c.midpoints[i]) + " has fewer than alpha vertices";
      return out;
    }
    VertexSet order = cluster;
    std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
      return capacities[static_cast<std::size_t>(a)] > capacities[static_cast<std::size_t>(b)];
    });
    order.resize(static_cast<std::size_t>(alpha));
    std::sort(order.begin(), order.end());
    c.backups[i] = order;
    c.all_backups = set_union(c.all_backups, order);
  }
  out.clustering = std::move(c);
  return out;
}

VertexSet Digraph::closed_out(int u) const {
  VertexSet self{u};
  return set_union(out[static_cast<std::size_t>(u)], self);
}

VertexSet Digraph::closed_out(const VertexSet& u) const {
  VertexSet acc = u;
  for (const int x : u) acc = set_union(acc, out[static_cast<std::size_t>(x)]);
  return acc;
}

Digraph build_gprime(const Graph& g, const Clustering& c) {
  Digraph d;
  d.out.resize(static_cast<std::size_t>(g.size()));
  for (int u = 0; u < g.size(); ++u) d.out[static_cast<std::size_t>(u)] = g.neighbors(u);
  for (std::size_t i = 0; i < c.midpoints.size(); ++i) {
    const int v = c.midpoints[i];
    if (c.backups[i].empty()) continue;
    for (int u = 0; u < g.size(); ++u) {
      if (g.hops(u, v) > 2) continue;
      VertexSet targets;
      for (const int w : c.backups[i]) {
        if (w != u) targets.push_back(w);
      }
      d.out[static_cast<std::size_t>(u)] = set_union(d.out[static_cast<std::size_t>(u)], targets);
    }
  }
  return d;
}

AuxiliaryGraph add_auxiliary(const Clustering& c, const Graph& g, const std::vector<Capacity>& capacities) {
  const int n = g.size();
  AuxiliaryGraph a;
  a.base_size = n;
  a.capacities = capacities;
  auto edges = g.edges();
  for (std::size_t i = 0; i < c.midpoints.size(); ++i) {
    const int v = c.midpoints[i];
    const int id = n + static_cast<int>(i);
    int best = -1;
    for (const int u : neighborhood(g, v, 1)) {
      if (c.is_backup(u)) continue;
      if (best < 0 || capacities[static_cast<std::size_t>(u)] > capacities[static_cast<std::size_t>(best)]) best = u;
    }
    if (best < 0) {
      throw ContractViolation("N(" + std::to_string(v) + ") has no vertex outside the backup set");
    }
    for (const int u : neighborhood(g, v, 1)) edges.emplace_back(u, id);
    a.aux.push_back(id);
    a.anchor.push_back(best);
    a.capacities.push_back(capacities[static_cast<std::size_t>(best)]);
  }
  a.extended = Graph(n + c.midpoint_count(), edges, g.tau());
  return a;
}

IndependenceCheck is_alpha_ell_independent(const VertexSet& w, int alpha, int ell, const Graph& g) {
  IndependenceCheck check;
  std::vector<char> taken(w.size(), 0);
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (taken[i]) continue;
    VertexSet part{w[i]};
    taken[i] = 1;
    for (std::size_t head = 0; head < part.size(); ++head) {
      for (std::size_t j = 0; j < w.size(); ++j) {
        if (!taken[j] && g.hops(part[head], w[j]) <= ell) {
          taken[j] = 1;
          part.push_back(w[j]);
        }
      }
    }
    std::sort(part.begin(), part.end());
    check.parts.push_back(std::move(part));
  }
  check.independent = std::all_of(check.parts.begin(), check.parts.end(),
                                  [&](const VertexSet& p) { return static_cast<int>(p.size()) <= alpha; });
  return check;
}

VertexSet maximal_7_independent(const Graph& g) {
  VertexSet a;
  for (int v = 0; v < g.size(); ++v) {
    if (std::all_of(a.begin(), a.end(), [&](int x) { return g.hops(x, v) >= 7; })) a.push_back(v);
  }
  return a;
}

}  // namespace ftkc
