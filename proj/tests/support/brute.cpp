#include "brute.hpp"

#include <algorithm>
#include <deque>
#include <functional>
#include <numeric>

namespace brute {

std::vector<int> bfs(const Graph& g, int source) {
  std::vector<int> dist(static_cast<std::size_t>(g.size()), ftkc::kUnreachable);
  std::deque<int> queue{source};
  dist[static_cast<std::size_t>(source)] = 0;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (const int v : g.neighbors(u)) {
      if (dist[static_cast<std::size_t>(v)] == ftkc::kUnreachable) {
        dist[static_cast<std::size_t>(v)] = dist[static_cast<std::size_t>(u)] + 1;
        queue.push_back(v);
      }
    }
  }
  return dist;
}

VertexSet ball(const Graph& g, const VertexSet& from, int radius) {
  std::vector<char> in(static_cast<std::size_t>(g.size()), 0);
  for (const int u : from) {
    const auto d = bfs(g, u);
    for (int v = 0; v < g.size(); ++v) {
      if (d[static_cast<std::size_t>(v)] <= radius) in[static_cast<std::size_t>(v)] = 1;
    }
  }
  VertexSet out;
  for (int v = 0; v < g.size(); ++v) {
    if (in[static_cast<std::size_t>(v)]) out.push_back(v);
  }
  return out;
}

Graph path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return Graph(n, edges);
}

Graph cycle(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) edges.emplace_back(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return Graph(n, edges);
}

Graph random_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  return Graph(n, edges);
}

Graph random_connected_graph(std::mt19937_64& rng, int n, double p) {
  std::bernoulli_distribution coin(p);
  std::vector<std::pair<int, int>> edges;
  for (int v = 1; v < n; ++v) {
    std::uniform_int_distribution<int> parent(0, v - 1);
    edges.emplace_back(parent(rng), v);
  }
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (coin(rng)) edges.emplace_back(u, v);
    }
  }
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Graph(n, edges);
}

bool assignment_exists(const std::vector<std::vector<int>>& allowed, const std::vector<Capacity>& caps) {
  std::vector<Capacity> room = caps;
  std::function<bool(std::size_t)> place = [&](std::size_t c) {
    if (c == allowed.size()) return true;
    for (const int x : allowed[c]) {
      if (room[static_cast<std::size_t>(x)] == 0) continue;
      --room[static_cast<std::size_t>(x)];
      if (place(c + 1)) return true;
      ++room[static_cast<std::size_t>(x)];
    }
    return false;
  };
  return place(0);
}

bool hall_holds(const std::vector<std::vector<int>>& allowed, const std::vector<Capacity>& caps) {
  const std::size_t m = allowed.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << m); ++mask) {
    std::vector<char> hit(caps.size(), 0);
    long size = 0;
    for (std::size_t c = 0; c < m; ++c) {
      if (!(mask >> c & 1u)) continue;
      ++size;
      for (const int x : allowed[c]) hit[static_cast<std::size_t>(x)] = 1;
    }
    Capacity room = 0;
    for (std::size_t x = 0; x < caps.size(); ++x) {
      if (hit[x]) room += caps[x];
    }
    if (size > room) return false;
  }
  return true;
}

bool transfer_condition_b(const std::vector<Rational>& y, const std::vector<Rational>& yp, const Graph& host,
                          const VertexSet& w, int r, const VertexSet& protected_set,
                          const std::vector<Capacity>& caps) {
  auto weight = [&](const std::vector<Rational>& v, int x) -> Rational {
    return v[static_cast<std::size_t>(x)] * Rational(static_cast<long>(caps[static_cast<std::size_t>(x)]));
  };
  for (std::size_t mask = 1; mask < (std::size_t{1} << w.size()); ++mask) {
    VertexSet u;
    for (std::size_t i = 0; i < w.size(); ++i) {
      if (mask >> i & 1u) u.push_back(w[i]);
    }
    Rational need = 0;
    for (const int x : u) {
      if (!ftkc::contains(protected_set, x)) need += weight(y, x);
    }
    Rational have = 0;
    for (const int x : ball(host, u, r)) {
      if (ftkc::contains(w, x) && !ftkc::contains(protected_set, x)) have += weight(yp, x);
    }
    if (have < need) return false;
  }
  return true;
}

Rational hall_minimum(const std::vector<Rational>& y, const std::vector<VertexSet>& reach,
                      const std::vector<Capacity>& caps, const std::vector<VertexSet>& scenarios, bool nonempty) {
  const std::size_t n = reach.size();
  std::optional<Rational> best;
  for (const auto& failed : scenarios) {
    for (std::size_t mask = nonempty ? 1 : 0; mask < (std::size_t{1} << n); ++mask) {
      std::vector<char> hit(n, 0);
      long size = 0;
      for (std::size_t u = 0; u < n; ++u) {
        if (!(mask >> u & 1u)) continue;
        ++size;
        for (const int x : reach[u]) hit[static_cast<std::size_t>(x)] = 1;
      }
      Rational value = -size;
      for (std::size_t x = 0; x < n; ++x) {
        if (hit[x] && !ftkc::contains(failed, static_cast<int>(x))) {
          value += y[x] * Rational(static_cast<long>(caps[x]));
        }
      }
      if (!best || value < *best) best = value;
    }
  }
  return *best;
}

std::vector<VertexSet> subsets(int n, int size) {
  std::vector<VertexSet> out;
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    if (__builtin_popcountll(mask) != size) continue;
    VertexSet s;
    for (int i = 0; i < n; ++i) {
      if (mask >> i & 1u) s.push_back(i);
    }
    out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<VertexSet> failures_up_to(const VertexSet& centers, int alpha) {
  std::vector<VertexSet> out;
  const int m = static_cast<int>(centers.size());
  for (std::size_t mask = 0; mask < (std::size_t{1} << m); ++mask) {
    if (__builtin_popcountll(mask) > alpha) continue;
    VertexSet f;
    for (int i = 0; i < m; ++i) {
      if (mask >> i & 1u) f.push_back(centers[static_cast<std::size_t>(i)]);
    }
    out.push_back(f);
  }
  return out;
}

}  // namespace

std::optional<ftkc::Distance> ft_optimum(const ftkc::MetricInstance& inst) {
  const int n = inst.size();
  for (const auto& tau : inst.thresholds()) {
    for (const auto& s : subsets(n, inst.k())) {
      bool ok = true;
      for (const auto& failed : failures_up_to(s, inst.alpha())) {
        VertexSet alive = ftkc::set_difference(s, failed);
        std::vector<std::vector<int>> allowed(static_cast<std::size_t>(n));
        std::vector<Capacity> caps;
        for (const int c : alive) caps.push_back(inst.capacity(c));
        for (int u = 0; u < n; ++u) {
          for (std::size_t j = 0; j < alive.size(); ++j) {
            if (inst.distance(u, alive[j]) <= tau) allowed[static_cast<std::size_t>(u)].push_back(static_cast<int>(j));
          }
        }
        if (!assignment_exists(allowed, caps)) {
          ok = false;
          break;
        }
      }
      if (ok) return tau;
    }
  }
  return std::nullopt;
}

std::optional<ftkc::Distance> conservative_optimum(const ftkc::MetricInstance& inst) {
  const int n = inst.size();
  for (const auto& tau : inst.thresholds()) {
    for (const auto& s : subsets(n, inst.k())) {
      std::vector<int> phi(static_cast<std::size_t>(n), -1);
      std::vector<Capacity> load(static_cast<std::size_t>(n), 0);
      auto scenarios_pass = [&]() {
        for (const auto& failed : failures_up_to(s, inst.alpha())) {
          const VertexSet alive = ftkc::set_difference(s, failed);
          std::vector<std::vector<int>> allowed;
          std::vector<Capacity> room;
          for (const int c : alive) room.push_back(inst.capacity(c) - load[static_cast<std::size_t>(c)]);
          for (int u = 0; u < n; ++u) {
            if (!ftkc::contains(failed, phi[static_cast<std::size_t>(u)])) continue;
            allowed.emplace_back();
            for (std::size_t j = 0; j < alive.size(); ++j) {
              if (inst.distance(u, alive[j]) <= tau) allowed.back().push_back(static_cast<int>(j));
            }
          }
          if (!assignment_exists(allowed, room)) return false;
        }
        return true;
      };
      std::function<bool(int)> place = [&](int u) {
        if (u == n) return scenarios_pass();
        for (const int c : s) {
          if (inst.distance(u, c) > tau || load[static_cast<std::size_t>(c)] >= inst.capacity(c)) continue;
          phi[static_cast<std::size_t>(u)] = c;
          ++load[static_cast<std::size_t>(c)];
          if (place(u + 1)) return true;
          --load[static_cast<std::size_t>(c)];
        }
        return false;
      };
      if (place(0)) return tau;
    }
  }
  return std::nullopt;
}

ftkc::MetricInstance hop_instance(const Graph& g, int k, int alpha, std::vector<Capacity> caps,
                                  ftkc::Variant variant) {
  const int n = g.size();
  std::vector<std::vector<Rational>> dist(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int u = 0; u < n; ++u) {
    const auto d = bfs(g, u);
    for (int v = 0; v < n; ++v) dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(v)];
  }
  return ftkc::MetricInstance::from_matrix("hops", std::move(dist), k, alpha, std::move(caps), variant);
}

ftkc::MetricInstance random_points(std::mt19937_64& rng, int n, int k, int alpha, const std::vector<Capacity>& levels,
                                   ftkc::Variant variant) {
  std::uniform_int_distribution<int> coord(0, 20);
  std::uniform_int_distribution<std::size_t> pick(0, levels.size() - 1);
  std::vector<ftkc::Point> points;
  std::vector<Capacity> caps;
  for (int v = 0; v < n; ++v) {
    points.push_back({Rational(coord(rng)), Rational(coord(rng))});
    caps.push_back(levels[pick(rng)]);
  }
  return ftkc::MetricInstance::from_points("random", std::move(points), k, alpha, std::move(caps), variant);
}

}  // namespace brute
