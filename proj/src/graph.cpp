#include "ftkc/graph.hpp"

#include <algorithm>
#include <deque>
#include <iterator>

#include "ftkc/errors.hpp"

namespace ftkc {

Graph::Graph(int n, const std::vector<std::pair<int, int>>& edges, std::optional<Distance> tau)
    : adj_(static_cast<std::size_t>(n)), tau_(std::move(tau)) {
  for (const auto& [u, v] : edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw ContractViolation("edge endpoint out of range");
    if (u == v) continue;
    adj_[static_cast<std::size_t>(u)].push_back(v);
    adj_[static_cast<std::size_t>(v)].push_back(u);
  }
  for (auto& list : adj_) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }

  hop_.assign(static_cast<std::size_t>(n), std::vector<int>(static_cast<std::size_t>(n), kUnreachable));
  std::deque<int> queue;
  for (int s = 0; s < n; ++s) {
    auto& row = hop_[static_cast<std::size_t>(s)];
    row[static_cast<std::size_t>(s)] = 0;
    queue.assign(1, s);
    while (!queue.empty()) {
      const int x = queue.front();
      queue.pop_front();
      for (const int y : adj_[static_cast<std::size_t>(x)]) {
        if (row[static_cast<std::size_t>(y)] == kUnreachable) {
          row[static_cast<std::size_t>(y)] = row[static_cast<std::size_t>(x)] + 1;
          queue.push_back(y);
        }
      }
    }
  }
}

bool Graph::adjacent(int u, int v) const {
  const auto& list = neighbors(u);
  return std::binary_search(list.begin(), list.end(), v);
}

std::vector<std::pair<int, int>> Graph::edges() const {
  std::vector<std::pair<int, int>> out;
  for (int u = 0; u < size(); ++u) {
    for (const int v : neighbors(u)) {
      if (u < v) out.emplace_back(u, v);
    }
  }
  return out;
}

std::size_t Graph::edge_count() const {
  std::size_t total = 0;
  for (const auto& list : adj_) total += list.size();
  return total / 2;
}

Graph threshold_graph(const MetricInstance& inst, const Distance& tau) {
  std::vector<std::pair<int, int>> edges;
  const int n = inst.size();
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (inst.distance(u, v) <= tau) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges, tau);
}

VertexSet neighborhood(const Graph& g, const VertexSet& u, int ell) {
  VertexSet out;
  for (int v = 0; v < g.size(); ++v) {
    for (const int x : u) {
      if (g.hops(x, v) <= ell) {
        out.push_back(v);
        break;
      }
    }
  }
  return out;
}

VertexSet neighborhood(const Graph& g, int u, int ell) { return neighborhood(g, VertexSet{u}, ell); }

Graph power_graph(const Graph& g, int ell) {
  if (ell < 1) throw ContractViolation("power graph exponent must be positive");
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < g.size(); ++u) {
    for (int v = u + 1; v < g.size(); ++v) {
      if (g.hops(u, v) <= ell) edges.emplace_back(u, v);
    }
  }
  return Graph(g.size(), edges, g.tau());
}

std::vector<VertexSet> connected_components(const Graph& g) {
  std::vector<VertexSet> parts;
  std::vector<char> seen(static_cast<std::size_t>(g.size()), 0);
  for (int s = 0; s < g.size(); ++s) {
    if (seen[static_cast<std::size_t>(s)]) continue;
    VertexSet part;
    for (int v = s; v < g.size(); ++v) {
      if (g.hops(s, v) != kUnreachable) {
        part.push_back(v);
        seen[static_cast<std::size_t>(v)] = 1;
      }
    }
    parts.push_back(std::move(part));
  }
  return parts;
}

bool is_connected(const Graph& g) { return g.size() <= 1 || connected_components(g).size() == 1; }

Graph strip_zero_zero_edges(const Graph& g, const std::vector<Capacity>& capacities) {
  if (static_cast<int>(capacities.size()) != g.size()) throw InputError("capacity vector has the wrong length");
  if (!uniform_capacity(capacities)) throw InputError("capacities are not of the form {0, L}");
  std::vector<std::pair<int, int>> kept;
  for (const auto& [u, v] : g.edges()) {
    if (capacities[static_cast<std::size_t>(u)] != 0 || capacities[static_cast<std::size_t>(v)] != 0) {
      kept.emplace_back(u, v);
    }
  }
  return Graph(g.size(), kept, g.tau());
}

Graph induced_subgraph(const Graph& g, const VertexSet& vertices) {
  std::vector<int> local(static_cast<std::size_t>(g.size()), -1);
  for (std::size_t i = 0; i < vertices.size(); ++i) local[static_cast<std::size_t>(vertices[i])] = static_cast<int>(i);
  std::vector<std::pair<int, int>> edges;
  for (const int u : vertices) {
    for (const int v : g.neighbors(u)) {
      if (u < v && local[static_cast<std::size_t>(v)] >= 0) {
        edges.emplace_back(local[static_cast<std::size_t>(u)], local[static_cast<std::size_t>(v)]);
      }
    }
  }
  return Graph(static_cast<int>(vertices.size()), edges, g.tau());
}

VertexSet set_union(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_difference(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

VertexSet set_intersection(const VertexSet& a, const VertexSet& b) {
  VertexSet out;
  std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

bool contains(const VertexSet& s, int v) { return std::binary_search(s.begin(), s.end(), v); }

}  // namespace ftkc
