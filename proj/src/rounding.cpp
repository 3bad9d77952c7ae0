#include "ftkc/rounding.hpp"

#include <algorithm>
#include <functional>
#include <optional>

#include "ftkc/errors.hpp"
#include "ftkc/flow.hpp"

namespace ftkc {

namespace {

Rational weight(const std::vector<Rational>& y, const std::vector<Capacity>& capacities, int v) {
  return y[static_cast<std::size_t>(v)] * Rational(static_cast<long>(capacities[static_cast<std::size_t>(v)]));
}

VertexSet all_vertices(int n) {
  VertexSet out(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) out[static_cast<std::size_t>(v)] = v;
  return out;
}

// Lowest-order search for `count` candidates accepted by a monotone
// predicate: any superset of an accepted set is accepted, so a branch dies
// as soon as taking every remaining candidate is rejected.
std::optional<VertexSet> monotone_search(const VertexSet& candidates, int count,
                                         const std::function<bool(const VertexSet&)>& accept) {
  VertexSet chosen;
  std::function<bool(std::size_t)> dfs = [&](std::size_t pos) -> bool {
    const int need = count - static_cast<int>(chosen.size());
    if (need == 0) return accept(chosen);
    if (static_cast<int>(candidates.size() - pos) < need) return false;
    VertexSet widest = chosen;
    widest.insert(widest.end(), candidates.begin() + static_cast<std::ptrdiff_t>(pos), candidates.end());
    if (!accept(widest)) return false;
    chosen.push_back(candidates[pos]);
    if (dfs(pos + 1)) return true;
    chosen.pop_back();
    return dfs(pos + 1);
  };
  if (count < 0) return std::nullopt;
  if (!dfs(0)) return std::nullopt;
  VertexSet out = chosen;
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

std::vector<Rational> indicator(const VertexSet& set, int size) {
  std::vector<Rational> out(static_cast<std::size_t>(size), Rational(0));
  for (const int v : set) out[static_cast<std::size_t>(v)] = 1;
  return out;
}

TransferCheck check_condition_b_exhaustive(const std::vector<Rational>& y, const std::vector<Rational>& yp,
                                           const Graph& host, const VertexSet& w, int r,
                                           const VertexSet& protected_set, const std::vector<Capacity>& capacities) {
  if (w.size() > 20) throw SizeLimitError("exhaustive transfer check limited to 20 vertices");
  VertexSet supply;
  for (const int v : w) {
    if (!contains(protected_set, v) && weight(y, capacities, v) > 0) supply.push_back(v);
  }
  const std::size_t width = w.size();
  std::vector<std::uint32_t> ball(supply.size(), 0);
  for (std::size_t i = 0; i < supply.size(); ++i) {
    for (std::size_t j = 0; j < width; ++j) {
      if (!contains(protected_set, w[j]) && host.hops(supply[i], w[j]) <= r) ball[i] |= 1u << j;
    }
  }
  std::vector<Rational> reach_weight(std::size_t{1} << width);
  for (std::size_t mask = 1; mask < reach_weight.size(); ++mask) {
    const int low = __builtin_ctzll(mask);
    reach_weight[mask] = reach_weight[mask & (mask - 1)] + weight(yp, capacities, w[static_cast<std::size_t>(low)]);
  }
  const std::size_t subsets = std::size_t{1} << supply.size();
  std::vector<Rational> supply_weight(subsets);
  std::vector<std::uint32_t> cover(subsets, 0);
  TransferCheck check;
  for (std::size_t mask = 1; mask < subsets; ++mask) {
    const int low = __builtin_ctzll(mask);
    const std::size_t rest = mask & (mask - 1);
    supply_weight[mask] = supply_weight[rest] + weight(y, capacities, supply[static_cast<std::size_t>(low)]);
    cover[mask] = cover[rest] | ball[static_cast<std::size_t>(low)];
    if (reach_weight[cover[mask]] < supply_weight[mask]) {
      check.ok = false;
      check.condition = 'b';
      for (std::size_t i = 0; i < supply.size(); ++i) {
        if (mask >> i & 1u) check.witness.push_back(supply[i]);
      }
      return check;
    }
  }
  return check;
}

TransferCheck check_condition_b_flow(const std::vector<Rational>& y, const std::vector<Rational>& yp,
                                     const Graph& host, const VertexSet& w, int r, const VertexSet& protected_set,
                                     const std::vector<Capacity>& capacities) {
  VertexSet supply;
  VertexSet demand;
  std::vector<Rational> all_weights;
  for (const int v : w) {
    if (contains(protected_set, v)) continue;
    if (weight(y, capacities, v) > 0) {
      supply.push_back(v);
      all_weights.push_back(weight(y, capacities, v));
    }
    if (weight(yp, capacities, v) > 0) {
      demand.push_back(v);
      all_weights.push_back(weight(yp, capacities, v));
    }
  }
  TransferCheck check;
  if (supply.empty()) return check;
  const Integer scale = common_denominator(std::span<const Rational>(all_weights));
  const int s = 0;
  const int t = 1;
  const int ns = static_cast<int>(supply.size());
  const int nd = static_cast<int>(demand.size());
  FlowNetwork<Integer> net(2 + ns + nd, s, t);
  Integer total = 0;
  for (int i = 0; i < ns; ++i) {
    const Integer amount = Rational(weight(y, capacities, supply[static_cast<std::size_t>(i)]) * Rational(scale)).get_num();
    total += amount;
    net.add_arc(s, 2 + i, amount);
    for (int j = 0; j < nd; ++j) {
      if (host.hops(supply[static_cast<std::size_t>(i)], demand[static_cast<std::size_t>(j)]) <= r) {
        net.add_infinite_arc(2 + i, 2 + ns + j);
      }
    }
  }
  for (int j = 0; j < nd; ++j) {
    net.add_arc(2 + ns + j, t, Rational(weight(yp, capacities, demand[static_cast<std::size_t>(j)]) * Rational(scale)).get_num());
  }
  const auto flow = max_flow(net);
  if (flow.infinite) throw ContractViolation("transfer network has an infinite path");
  if (flow.value == total) return check;
  check.ok = false;
  check.condition = 'b';
  for (int i = 0; i < ns; ++i) {
    if (flow.source_side[static_cast<std::size_t>(2 + i)]) check.witness.push_back(supply[static_cast<std::size_t>(i)]);
  }
  return check;
}

TransferCheck verify_transfer(const std::vector<Rational>& y, const std::vector<Rational>& yp, const Graph& host,
                              const VertexSet& w, int r, const VertexSet& protected_set,
                              const std::vector<Capacity>& capacities) {
  if (y.size() != yp.size() || static_cast<int>(y.size()) != host.size()) {
    throw ContractViolation("transfer vectors and host graph disagree in size");
  }
  TransferCheck check;
  for (int v = 0; v < host.size(); ++v) {
    const bool fixed = !contains(w, v) || contains(protected_set, v);
    if (fixed && y[static_cast<std::size_t>(v)] != yp[static_cast<std::size_t>(v)]) check.witness.push_back(v);
  }
  if (!check.witness.empty()) {
    check.ok = false;
    check.condition = 'c';
    return check;
  }
  Rational before = 0;
  Rational after = 0;
  for (const int v : w) {
    before += y[static_cast<std::size_t>(v)];
    after += yp[static_cast<std::size_t>(v)];
  }
  if (before != after) {
    check.ok = false;
    check.condition = 'a';
    return check;
  }
  if (w.size() <= 14) return check_condition_b_exhaustive(y, yp, host, w, r, protected_set, capacities);
  return check_condition_b_flow(y, yp, host, w, r, protected_set, capacities);
}

TransferCheck verify_transfer(const std::vector<Rational>& y, const std::vector<Rational>& yp, const Graph& host,
                              int r, const VertexSet& protected_set, const std::vector<Capacity>& capacities) {
  return verify_transfer(y, yp, host, all_vertices(host.size()), r, protected_set, capacities);
}

std::vector<Rational> tree_transfer(const Graph& tree, const VertexSet& w, const VertexSet& forced,
                                    const std::vector<Rational>& y, const std::vector<Capacity>& capacities,
                                    const VertexSet& protected_set) {
  if (!set_intersection(w, protected_set).empty()) throw ContractViolation("tree transfer touches protected vertices");
  Rational mass = 0;
  for (const int v : w) mass += y[static_cast<std::size_t>(v)];
  if (!is_integral(mass)) throw ContractViolation("tree transfer needs an integral total opening");
  for (const int v : forced) {
    if (y[static_cast<std::size_t>(v)] != 1) throw ContractViolation("internal tree node is not fully open");
  }

  VertexSet free = set_difference(w, forced);
  std::stable_sort(free.begin(), free.end(), [&](int a, int b) { return y[static_cast<std::size_t>(a)] > y[static_cast<std::size_t>(b)]; });
  const long count = mass.get_num().get_si() - static_cast<long>(forced.size());

  auto opening = [&](const VertexSet& chosen) {
    std::vector<Rational> yp = y;
    for (const int v : w) yp[static_cast<std::size_t>(v)] = 0;
    for (const int v : forced) yp[static_cast<std::size_t>(v)] = 1;
    for (const int v : chosen) yp[static_cast<std::size_t>(v)] = 1;
    return yp;
  };
  const auto found = monotone_search(free, static_cast<int>(count), [&](const VertexSet& chosen) {
    return check_condition_b_flow(y, opening(chosen), tree, w, 2, protected_set, capacities).ok;
  });
  if (!found) throw ContractViolation("no integral distance-2 tree transfer exists");
  auto yp = opening(*found);
  if (!verify_transfer(y, yp, tree, w, 2, protected_set, capacities).ok) {
    throw ContractViolation("tree transfer failed verification");
  }
  return yp;
}

GeneralRounding round_general(const std::vector<Rational>& y, const Graph& g, const Clustering& c,
                              const std::vector<Capacity>& capacities) {
  const int n = g.size();
  GeneralRounding out;
  out.aux = add_auxiliary(c, g, capacities);
  const int total = out.aux.extended.size();
  const auto& lext = out.aux.capacities;

  std::vector<Rational> y0(y);
  y0.resize(static_cast<std::size_t>(total), Rational(0));

  // Step 1: gather one unit of opening on each auxiliary vertex, m_v first.
  out.y1 = y0;
  for (int i = 0; i < c.midpoint_count(); ++i) {
    const int v = c.midpoints[static_cast<std::size_t>(i)];
    const int a = out.aux.aux[static_cast<std::size_t>(i)];
    const int m = out.aux.anchor[static_cast<std::size_t>(i)];
    VertexSet order;
    for (const int u : neighborhood(g, v, 1)) {
      if (u != m && !c.is_backup(u)) order.push_back(u);
    }
    std::stable_sort(order.begin(), order.end(), [&](int p, int q) {
      return capacities[static_cast<std::size_t>(p)] < capacities[static_cast<std::size_t>(q)];
    });
    order.insert(order.begin(), m);
    auto& ya = out.y1[static_cast<std::size_t>(a)];
    for (const int u : order) {
      if (ya == 1) break;
      auto& yu = out.y1[static_cast<std::size_t>(u)];
      const Rational room = Rational(1) - ya;
      const Rational moved = yu < room ? yu : room;
      yu -= moved;
      ya += moved;
    }
    if (ya != 1) throw ContractViolation("midpoint row violated: N(v) \\ B holds less than one unit");
  }

  // Step 2: the monarch tree on auxiliaries plus fractional members as leaves.
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < c.midpoint_count(); ++i) {
    const int p = c.parent[static_cast<std::size_t>(i)];
    if (p >= 0) edges.emplace_back(out.aux.aux[static_cast<std::size_t>(p)], out.aux.aux[static_cast<std::size_t>(i)]);
  }
  out.tree_nodes = out.aux.aux;
  VertexSet leaves;
  for (int u = 0; u < n; ++u) {
    const Rational& yu = out.y1[static_cast<std::size_t>(u)];
    if (c.is_backup(u) || yu <= 0 || yu >= 1) continue;
    const int owner = c.index_of_midpoint[static_cast<std::size_t>(c.cluster_of[static_cast<std::size_t>(u)])];
    edges.emplace_back(out.aux.aux[static_cast<std::size_t>(owner)], u);
    leaves.push_back(u);
  }
  out.tree_nodes = set_union(out.tree_nodes, leaves);
  out.tree = Graph(total, edges);

  VertexSet forced;
  for (int i = 0; i < c.midpoint_count(); ++i) {
    const int a = out.aux.aux[static_cast<std::size_t>(i)];
    // Internal nodes: the root whenever it has any child, every other node with a child.
    const bool root = c.parent[static_cast<std::size_t>(i)] < 0;
    const auto degree = out.tree.neighbors(a).size();
    if ((root && degree >= 1) || (!root && degree >= 2)) forced.push_back(a);
  }
  const auto y2 = tree_transfer(out.tree, out.tree_nodes, forced, out.y1, lext, c.all_backups);

  for (int v = 0; v < total; ++v) {
    const Rational& value = y2[static_cast<std::size_t>(v)];
    if (value != 0 && value != 1) throw ContractViolation("rounded opening is not integral");
    if (value == 1) out.opened_extended.push_back(v);
  }

  // Step 3: auxiliaries hand their opening back to m_v.
  std::vector<Rational> y3(y2.begin(), y2.begin() + n);
  for (int i = 0; i < c.midpoint_count(); ++i) {
    if (y2[static_cast<std::size_t>(out.aux.aux[static_cast<std::size_t>(i)])] != 1) continue;
    auto& slot = y3[static_cast<std::size_t>(out.aux.anchor[static_cast<std::size_t>(i)])];
    if (slot != 0) throw ContractViolation("m_v already open after the tree transfer");
    slot = 1;
  }
  for (int u = 0; u < n; ++u) {
    if (y3[static_cast<std::size_t>(u)] == 1) out.centers.push_back(u);
  }

  Rational k = 0;
  for (const Rational& v : y) k += v;
  if (Rational(static_cast<long>(out.centers.size())) != k) throw ContractViolation("rounding changed the number of centers");
  for (const int b : c.all_backups) {
    if (!contains(out.centers, b)) throw ContractViolation("rounding dropped a backup center");
  }
  if (!verify_transfer(y, y3, g, 8, c.all_backups, capacities).ok) {
    throw ContractViolation("rounded centers are not a distance-8 transfer");
  }
  return out;
}

std::vector<int> assign_scenario_B(const GeneralRounding& rounding, const VertexSet& failed, const Graph& g,
                                   const Digraph& gprime, const Clustering& c,
                                   const std::vector<Capacity>& /*capacities*/) {
  const int n = g.size();
  const auto& aux = rounding.aux;
  const Graph& gbar = aux.extended;
  const int total = gbar.size();

  std::vector<int> center_slot(static_cast<std::size_t>(total), -1);
  VertexSet centers;
  for (const int v : rounding.opened_extended) {
    if (contains(failed, v)) continue;
    center_slot[static_cast<std::size_t>(v)] = static_cast<int>(centers.size());
    centers.push_back(v);
  }
  std::vector<Capacity> caps;
  for (const int v : centers) caps.push_back(aux.capacities[static_cast<std::size_t>(v)]);

  std::vector<std::vector<int>> allowed(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    VertexSet reach = set_intersection(gprime.closed_out(u), c.all_backups);
    for (int x = 0; x < total; ++x) {
      if (gbar.hops(u, x) > 2 || (x < n && c.is_backup(x))) continue;
      if (!contains(rounding.tree_nodes, x)) {
        reach = set_union(reach, VertexSet{x});
        continue;
      }
      for (const int z : rounding.tree_nodes) {
        if (rounding.tree.hops(x, z) <= 2) reach = set_union(reach, VertexSet{z});
      }
    }
    for (const int z : reach) {
      if (center_slot[static_cast<std::size_t>(z)] >= 0) allowed[static_cast<std::size_t>(u)].push_back(center_slot[static_cast<std::size_t>(z)]);
    }
  }
  const auto match = capacitated_assignment(n, static_cast<int>(centers.size()), allowed, caps);
  if (!match.ok) throw ContractViolation("Hall's condition fails for a backup-only failure scenario");

  std::vector<int> phi(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    int center = centers[static_cast<std::size_t>(match.assignment[static_cast<std::size_t>(u)])];
    if (center >= n) center = aux.anchor[static_cast<std::size_t>(center - n)];
    if (g.hops(u, center) > 9 || g.hops(u, c.cluster_of[static_cast<std::size_t>(center)]) > 8) {
      throw ContractViolation("scenario assignment exceeds its distance bounds");
    }
    phi[static_cast<std::size_t>(u)] = center;
  }
  return phi;
}

std::vector<int> assign_scenario_general(const GeneralRounding& rounding, const VertexSet& failed, const Graph& g,
                                         const Digraph& gprime, const Clustering& c,
                                         const std::vector<Capacity>& capacities, int alpha) {
  if (static_cast<int>(failed.size()) > alpha) throw ContractViolation("more than alpha failures");
  auto by_capacity = [&](VertexSet s) {
    std::stable_sort(s.begin(), s.end(), [&](int a, int b) {
      return capacities[static_cast<std::size_t>(a)] > capacities[static_cast<std::size_t>(b)];
    });
    return s;
  };

  const int m = c.midpoint_count();
  std::vector<VertexSet> lost(static_cast<std::size_t>(m));
  std::vector<VertexSet> stand_in(static_cast<std::size_t>(m));
  VertexSet substitute;
  for (int i = 0; i < m; ++i) {
    lost[static_cast<std::size_t>(i)] = set_intersection(failed, c.clusters[static_cast<std::size_t>(i)]);
    VertexSet top = by_capacity(c.backups[static_cast<std::size_t>(i)]);
    top.resize(lost[static_cast<std::size_t>(i)].size());
    std::sort(top.begin(), top.end());
    stand_in[static_cast<std::size_t>(i)] = top;
    substitute = set_union(substitute, top);
  }
  for (const int b : c.all_backups) {
    if (static_cast<int>(substitute.size()) >= alpha) break;
    if (!contains(substitute, b)) substitute = set_union(substitute, VertexSet{b});
  }

  std::vector<int> phi = assign_scenario_B(rounding, substitute, g, gprime, c, capacities);

  for (int i = 0; i < m; ++i) {
    const VertexSet spare = by_capacity(set_difference(stand_in[static_cast<std::size_t>(i)], lost[static_cast<std::size_t>(i)]));
    const VertexSet gone = by_capacity(set_difference(lost[static_cast<std::size_t>(i)], stand_in[static_cast<std::size_t>(i)]));
    for (std::size_t j = 0; j < gone.size(); ++j) {
      if (capacities[static_cast<std::size_t>(spare[j])] < capacities[static_cast<std::size_t>(gone[j])]) {
        throw ContractViolation("stand-in backup has less capacity than the failed center");
      }
      for (auto& target : phi) {
        if (target == gone[j]) target = spare[j];
      }
    }
  }
  for (int u = 0; u < g.size(); ++u) {
    const int center = phi[static_cast<std::size_t>(u)];
    if (contains(failed, center) || g.hops(u, center) > 10) {
      throw ContractViolation("general scenario assignment is invalid");
    }
  }
  return phi;
}

VertexSet round_uniform(const std::vector<Rational>& y, const Graph& stripped, const std::vector<Capacity>& capacities) {
  const int n = stripped.size();
  Rational mass = 0;
  for (const Rational& v : y) mass += v;
  if (!is_integral(mass)) throw ContractViolation("uniform rounding needs an integral total opening");
  const long k = mass.get_num().get_si();

  VertexSet heavy;
  VertexSet light;
  for (int v = 0; v < n; ++v) {
    (capacities[static_cast<std::size_t>(v)] > 0 ? heavy : light).push_back(v);
  }
  std::stable_sort(heavy.begin(), heavy.end(), [&](int a, int b) { return y[static_cast<std::size_t>(a)] > y[static_cast<std::size_t>(b)]; });
  const long from_heavy = std::min<long>(k, static_cast<long>(heavy.size()));
  const VertexSet padding(light.begin(), light.begin() + (k - from_heavy));
  const VertexSet everyone = all_vertices(n);

  const auto found = monotone_search(heavy, static_cast<int>(from_heavy), [&](const VertexSet& chosen) {
    return check_condition_b_flow(y, indicator(set_union(padding, [&] {
                                                 VertexSet s = chosen;
                                                 std::sort(s.begin(), s.end());
                                                 return s;
                                               }()),
                                               n),
                                  stripped, everyone, 5, {}, capacities)
        .ok;
  });
  if (!found) throw ContractViolation("no integral distance-5 transfer exists");
  VertexSet centers = set_union(*found, padding);
  if (!verify_transfer(y, indicator(centers, n), stripped, 5, {}, capacities).ok) {
    throw ContractViolation("uniform rounding failed verification");
  }
  return centers;
}

std::vector<int> assign_scenario_uniform(const VertexSet& centers, const VertexSet& failed, const Graph& stripped,
                                         const std::vector<Capacity>& capacities, int radius) {
  (void)capacities;
  const int n = stripped.size();
  const VertexSet alive = set_difference(centers, failed);
  std::vector<Capacity> caps;
  for (const int v : alive) caps.push_back(capacities[static_cast<std::size_t>(v)]);
  std::vector<std::vector<int>> allowed(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) {
    for (std::size_t j = 0; j < alive.size(); ++j) {
      if (stripped.hops(u, alive[j]) <= radius) allowed[static_cast<std::size_t>(u)].push_back(static_cast<int>(j));
    }
  }
  const auto match = capacitated_assignment(n, static_cast<int>(alive.size()), allowed, caps);
  if (!match.ok) throw ContractViolation("Hall's condition fails for a {0,L} failure scenario");
  std::vector<int> phi(static_cast<std::size_t>(n));
  for (int u = 0; u < n; ++u) phi[static_cast<std::size_t>(u)] = alive[static_cast<std::size_t>(match.assignment[static_cast<std::size_t>(u)])];
  return phi;
}

}  // namespace ftkc
