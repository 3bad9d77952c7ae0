#include "ftkc/conservative.hpp"

#include <algorithm>
#include <numeric>

#include "ftkc/clustering.hpp"
#include "ftkc/errors.hpp"
#include "ftkc/flow.hpp"
#include "ftkc/lp.hpp"

namespace ftkc {

namespace {

Capacity total(const std::vector<Capacity>& capacities, const VertexSet& set) {
  Capacity sum = 0;
  for (const int v : set) sum += capacities[static_cast<std::size_t>(v)];
  return sum;
}

// Runs `alg` with the backups' capacities zeroed and k - |B| centers.
ConservativeOutcome finish(const Graph& g, int k, const std::vector<Capacity>& capacities, ConservativeSolution sol,
                           const UnweightedSolver& alg) {
  ConservativeOutcome out;
  const int budget = k - static_cast<int>(sol.backups.size());
  if (budget < 1) {
    out.reason = "backups use the whole budget";
    return out;
  }
  std::vector<Capacity> residual = capacities;
  for (const int b : sol.backups) residual[static_cast<std::size_t>(b)] = 0;
  if (std::all_of(residual.begin(), residual.end(), [](Capacity c) { return c == 0; })) {
    out.reason = "no capacity left outside the backups";
    return out;
  }
  auto inner = alg(g, budget, 0, residual);
  if (!inner.solution) {
    out.reason = "subroutine: " + inner.reason;
    return out;
  }
  for (const int target : inner.solution->assignment) {
    if (contains(sol.backups, target)) throw ContractViolation("subroutine assigned a client to a backup");
  }
  sol.centers = set_union(inner.solution->centers, sol.backups);
  sol.phi0 = inner.solution->assignment;
  sol.initial_stretch = inner.solution->stretch;
  out.solution = std::move(sol);
  return out;
}

}  // namespace

ConservativeOutcome algorithm1(const Graph& g, int k, const std::vector<Capacity>& capacities, int alpha,
                               const UnweightedSolver& alg) {
  ConservativeSolution sol;
  sol.capacities = capacities;
  sol.anchors = maximal_7_independent(g);
  for (const int a : sol.anchors) {
    VertexSet pool;
    for (const int v : neighborhood(g, a, 1)) {
      if (capacities[static_cast<std::size_t>(v)] > 0) pool.push_back(v);
    }
    if (static_cast<int>(pool.size()) < alpha) {
      return {std::nullopt, "anchor " + std::to_string(a) + " has fewer than alpha L-vertices in its neighborhood"};
    }
    pool.resize(static_cast<std::size_t>(alpha));
    sol.anchor_backups.push_back(pool);
    sol.backups = set_union(sol.backups, pool);
  }
  auto out = finish(g, k, capacities, std::move(sol), alg);
  if (out.solution) out.solution->failure_stretch = std::max(7, out.solution->initial_stretch);
  return out;
}

std::vector<int> reassign_0L(const ConservativeSolution& sol, const VertexSet& failed, const Graph& g) {
  std::vector<int> phi = sol.phi0;
  std::vector<Capacity> load(sol.capacities.size(), 0);
  for (const int c : sol.phi0) ++load[static_cast<std::size_t>(c)];
  for (int u = 0; u < g.size(); ++u) {
    const int was = sol.phi0[static_cast<std::size_t>(u)];
    if (!contains(failed, was)) continue;
    if (contains(sol.backups, was)) throw ContractViolation("a backup had an initial client");
    std::size_t nearest = 0;
    for (std::size_t i = 1; i < sol.anchors.size(); ++i) {
      if (g.hops(u, sol.anchors[i]) < g.hops(u, sol.anchors[nearest])) nearest = i;
    }
    if (g.hops(u, sol.anchors[nearest]) > 6) throw ContractViolation("anchor set is not maximal");
    int target = -1;
    for (const int b : sol.anchor_backups[nearest]) {
      if (!contains(failed, b) && load[static_cast<std::size_t>(b)] < sol.capacities[static_cast<std::size_t>(b)]) {
        target = b;
        break;
      }
    }
    if (target < 0) throw ContractViolation("surviving backups of anchor " + std::to_string(sol.anchors[nearest]) + " are full");
    if (g.hops(u, target) > 7) throw ContractViolation("reassigned client lands more than 7 hops away");
    ++load[static_cast<std::size_t>(target)];
    phi[static_cast<std::size_t>(u)] = target;
  }
  return phi;
}

BackupLoop build_backup_loop(const Graph& g, const std::vector<Capacity>& capacities, int alpha) {
  const int n = g.size();
  BackupLoop loop;
  loop.capped = capacities;
  for (auto& c : loop.capped) c = std::min<Capacity>(c, n);
  loop.backup_capacity.push_back(0);

  VertexSet everyone(static_cast<std::size_t>(n));
  std::iota(everyone.begin(), everyone.end(), 0);
  std::vector<VertexSet> candidates;
  for (int size = 1; size <= alpha; ++size) {
    auto batch = subsets_of_size(everyone, size);
    candidates.insert(candidates.end(), batch.begin(), batch.end());
  }
  std::sort(candidates.begin(), candidates.end());
  std::vector<VertexSet> reach;
  for (const auto& u : candidates) reach.push_back(neighborhood(g, u, 6));

  while (true) {
    Capacity best = 0;
    std::size_t pick = candidates.size();
    for (std::size_t i = 0; i < candidates.size(); ++i) {
      const Capacity excess = total(loop.capped, candidates[i]) - total(loop.capped, set_intersection(loop.backups, reach[i]));
      if (excess > best) {
        best = excess;
        pick = i;
      }
    }
    if (pick == candidates.size()) break;
    loop.backups = set_union(set_difference(loop.backups, reach[pick]), candidates[pick]);
    const Capacity now = total(loop.capped, loop.backups);
    if (now <= loop.backup_capacity.back()) throw ContractViolation("backup loop made no progress");
    if (now > static_cast<Capacity>(n) * n) throw ContractViolation("backup capacity exceeds |V|^2");
    loop.backup_capacity.push_back(now);
  }
  return loop;
}

ConservativeOutcome algorithm2(const Graph& g, int k, const std::vector<Capacity>& capacities, int alpha,
                               const UnweightedSolver& alg) {
  auto loop = build_backup_loop(g, capacities, alpha);
  ConservativeSolution sol;
  sol.backups = loop.backups;
  sol.capacities = loop.capped;
  auto out = finish(g, k, loop.capped, std::move(sol), alg);
  if (out.solution) out.solution->failure_stretch = out.solution->initial_stretch + 6 * alpha;
  return out;
}

FlowReassignment conservative_reassign_flow(const ConservativeSolution& sol, const VertexSet& failed, const Graph& g,
                                            int alpha) {
  const int n = g.size();
  FlowReassignment result;
  result.phi = sol.phi0;

  VertexSet orphans;
  for (int y = 0; y < n; ++y) {
    if (contains(failed, sol.phi0[static_cast<std::size_t>(y)])) orphans.push_back(y);
  }
  result.demand = static_cast<long>(orphans.size());
  if (orphans.empty()) return result;

  const VertexSet spare = set_difference(sol.backups, failed);
  const VertexSet lost_backups = set_intersection(sol.backups, failed);
  std::vector<Capacity> load(static_cast<std::size_t>(n), 0);
  for (const int c : sol.phi0) ++load[static_cast<std::size_t>(c)];

  // Layout: s, t, orphans, failed centers, spare backups, copies of failed backups.
  const int s = 0;
  const int t = 1;
  auto index_in = [](const VertexSet& set, int v) {
    return static_cast<int>(std::lower_bound(set.begin(), set.end(), v) - set.begin());
  };
  const int orphan_base = 2;
  const int failed_base = orphan_base + static_cast<int>(orphans.size());
  const int spare_base = failed_base + static_cast<int>(failed.size());
  const int copy_base = spare_base + static_cast<int>(spare.size());
  FlowNetwork<std::int64_t> net(copy_base + static_cast<int>(lost_backups.size()), s, t);

  for (std::size_t i = 0; i < orphans.size(); ++i) {
    const int node = orphan_base + static_cast<int>(i);
    net.add_infinite_arc(s, node);
    net.add_arc(node, failed_base + index_in(failed, sol.phi0[static_cast<std::size_t>(orphans[i])]), 1);
  }
  for (std::size_t i = 0; i < failed.size(); ++i) {
    for (const int u : sol.backups) {
      if (g.hops(failed[i], u) > 6) continue;
      const int to = contains(failed, u) ? copy_base + index_in(lost_backups, u) : spare_base + index_in(spare, u);
      net.add_infinite_arc(failed_base + static_cast<int>(i), to);
    }
  }
  for (std::size_t i = 0; i < lost_backups.size(); ++i) {
    net.add_infinite_arc(copy_base + static_cast<int>(i), failed_base + index_in(failed, lost_backups[i]));
  }
  for (std::size_t i = 0; i < spare.size(); ++i) {
    const Capacity room = sol.capacities[static_cast<std::size_t>(spare[i])] - load[static_cast<std::size_t>(spare[i])];
    if (room > 0) net.add_arc(spare_base + static_cast<int>(i), t, room);
  }

  const auto flow = max_flow(net);
  if (flow.infinite) throw ContractViolation("reassignment network has an infinite path");
  result.flow_value = static_cast<long>(flow.value);
  if (result.flow_value != result.demand) return result;

  std::vector<std::int64_t> left = flow.flow;
  std::vector<std::vector<int>> out_arcs(static_cast<std::size_t>(net.node_count()));
  for (std::size_t a = 0; a < net.arcs().size(); ++a) out_arcs[static_cast<std::size_t>(net.arcs()[a].from)].push_back(static_cast<int>(a));

  for (std::size_t i = 0; i < orphans.size(); ++i) {
    std::vector<int> path_nodes{orphan_base + static_cast<int>(i)};
    std::vector<int> path_arcs;
    while (path_nodes.back() != t) {
      int chosen = -1;
      for (const int a : out_arcs[static_cast<std::size_t>(path_nodes.back())]) {
        if (left[static_cast<std::size_t>(a)] > 0) {
          chosen = a;
          break;
        }
      }
      if (chosen < 0) throw ContractViolation("flow decomposition ran dry");
      const int next = net.arcs()[static_cast<std::size_t>(chosen)].to;
      const auto seen = std::find(path_nodes.begin(), path_nodes.end(), next);
      if (seen == path_nodes.end()) {
        path_nodes.push_back(next);
        path_arcs.push_back(chosen);
        continue;
      }
      // A circulation: cancel it and resume from where it started.
      const auto from = static_cast<std::size_t>(seen - path_nodes.begin());
      std::vector<int> cycle(path_arcs.begin() + static_cast<std::ptrdiff_t>(from), path_arcs.end());
      cycle.push_back(chosen);
      std::int64_t amount = left[static_cast<std::size_t>(chosen)];
      for (const int a : cycle) amount = std::min(amount, left[static_cast<std::size_t>(a)]);
      for (const int a : cycle) left[static_cast<std::size_t>(a)] -= amount;
      path_nodes.resize(from + 1);
      path_arcs.resize(from);
    }
    for (const int a : path_arcs) --left[static_cast<std::size_t>(a)];
    const int last = path_nodes[path_nodes.size() - 2];
    if (last < spare_base || last >= copy_base) throw ContractViolation("flow path does not end at a surviving backup");
    const int center = spare[static_cast<std::size_t>(last - spare_base)];
    const int y = orphans[i];
    const int detour = g.hops(sol.phi0[static_cast<std::size_t>(y)], center);
    if (detour > 6 * alpha) throw ContractViolation("flow path longer than 6 alpha");
    result.longest_detour = std::max(result.longest_detour, detour);
    result.phi[static_cast<std::size_t>(y)] = center;
  }
  return result;
}

UnweightedSolver conservative_solver(bool general, const UnweightedSolver& alg) {
  return [general, alg](const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities) {
    UnweightedOutcome out;
    auto result = general ? algorithm2(g, k, capacities, alpha, alg) : algorithm1(g, k, capacities, alpha, alg);
    if (!result.solution) {
      out.reason = result.reason;
      return out;
    }
    const auto& sol = *result.solution;
    const int n = g.size();
    for (const auto& failed : subsets_of_size(sol.centers, std::min<int>(alpha, static_cast<int>(sol.centers.size())))) {
      std::vector<int> phi;
      if (general) {
        auto routed = conservative_reassign_flow(sol, failed, g, alpha);
        if (routed.flow_value != routed.demand) throw ContractViolation("reassignment flow is smaller than |phi^-1(F)|");
        phi = std::move(routed.phi);
      } else {
        phi = reassign_0L(sol, failed, g);
      }
      std::vector<Capacity> load(static_cast<std::size_t>(n), 0);
      for (int u = 0; u < n; ++u) {
        const int was = sol.phi0[static_cast<std::size_t>(u)];
        const int now = phi[static_cast<std::size_t>(u)];
        if (!contains(failed, was) && now != was) throw ContractViolation("reassignment moved an unaffected client");
        if (contains(failed, now) || !contains(sol.centers, now)) throw ContractViolation("client left on a failed center");
        if (g.hops(u, now) > sol.failure_stretch) throw ContractViolation("reassignment exceeds its stretch");
        ++load[static_cast<std::size_t>(now)];
      }
      for (int v = 0; v < n; ++v) {
        if (load[static_cast<std::size_t>(v)] > capacities[static_cast<std::size_t>(v)]) {
          throw ContractViolation("reassignment overfills a center");
        }
      }
    }
    out.solution = UnweightedSolution{sol.centers, sol.phi0, sol.failure_stretch, sol.initial_stretch, sol.backups};
    return out;
  };
}

}  // namespace ftkc
