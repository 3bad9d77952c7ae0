#include "ftkc/oracle.hpp"

#include <algorithm>
#include <functional>

#include "ftkc/errors.hpp"
#include "ftkc/flow.hpp"
#include "ftkc/lp.hpp"

namespace ftkc {

namespace {

VertexSet range(int n) {
  VertexSet out(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) out[static_cast<std::size_t>(v)] = v;
  return out;
}

// Clients `clients` into `centers` with per-center room `room`.
AssignmentResult match(const VertexSet& clients, const VertexSet& centers, const std::vector<Capacity>& room,
                       const Reach& within) {
  std::vector<std::vector<int>> allowed(clients.size());
  for (std::size_t i = 0; i < clients.size(); ++i) {
    for (std::size_t j = 0; j < centers.size(); ++j) {
      if (within(clients[i], centers[j])) allowed[i].push_back(static_cast<int>(j));
    }
  }
  auto result = capacitated_assignment(static_cast<int>(clients.size()), static_cast<int>(centers.size()), allowed, room);
  if (!result.ok) {
    for (auto& w : result.witness) w = clients[static_cast<std::size_t>(w)];
    std::sort(result.witness.begin(), result.witness.end());
  }
  return result;
}

Reach by_distance(const MetricInstance& inst, const Distance& radius) {
  return [&inst, radius](int u, int v) { return inst.distance(u, v) <= radius; };
}

Reach by_hops(const Graph& g, int radius) {
  return [&g, radius](int u, int v) { return g.hops(u, v) <= radius; };
}

long binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  long out = 1;
  for (int i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Feasibility of conservative solutions over a fixed center set S by
// depth-first search over phi0, pruned with Hall counts per scenario.
class ConservativeSearch {
 public:
  ConservativeSearch(int n, const std::vector<Capacity>& capacities, const VertexSet& centers, int alpha,
                     const Reach& within)
      : n_(n), centers_(centers), load_(centers.size(), 0), phi_(static_cast<std::size_t>(n), -1) {
    const int m = static_cast<int>(centers.size());
    for (const int c : centers) cap_.push_back(capacities[static_cast<std::size_t>(c)]);
    reach_.assign(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
      for (int j = 0; j < m; ++j) {
        if (within(u, centers[static_cast<std::size_t>(j)])) reach_[static_cast<std::size_t>(u)] |= 1u << j;
      }
    }
    VertexSet slots = range(m);
    for (const auto& f : subsets_of_size(slots, alpha)) {
      unsigned mask = 0;
      for (const int j : f) mask |= 1u << j;
      scenarios_.push_back(mask);
    }
  }

  bool run() { return place(0); }

  std::vector<int> phi0() const {
    std::vector<int> out(static_cast<std::size_t>(n_));
    for (int u = 0; u < n_; ++u) out[static_cast<std::size_t>(u)] = centers_[static_cast<std::size_t>(phi_[static_cast<std::size_t>(u)])];
    return out;
  }

 private:
  Capacity room(int j) const { return cap_[static_cast<std::size_t>(j)] - load_[static_cast<std::size_t>(j)]; }

  // Clients in `group` (each with reach mask restricted to `open`) fit into
  // the residual capacity of the centers in `open`.
  bool hall(const std::vector<unsigned>& group, unsigned open) const {
    for (unsigned t = open;; t = (t - 1) & open) {
      long demand = 0;
      for (const unsigned r : group) {
        if ((r & open & ~t) == 0) ++demand;
      }
      long supply = 0;
      for (std::size_t j = 0; j < cap_.size(); ++j) {
        if (t >> j & 1u) supply += room(static_cast<int>(j));
      }
      if (demand > supply) return false;
      if (t == 0) break;
    }
    return true;
  }

  bool consistent(int next) const {
    const unsigned all = (1u << centers_.size()) - 1;
    std::vector<unsigned> pending;
    for (int u = next; u < n_; ++u) pending.push_back(reach_[static_cast<std::size_t>(u)]);
    if (!hall(pending, all)) return false;
    for (const unsigned f : scenarios_) {
      std::vector<unsigned> moved;
      for (int u = 0; u < next; ++u) {
        if (f >> phi_[static_cast<std::size_t>(u)] & 1u) moved.push_back(reach_[static_cast<std::size_t>(u)]);
      }
      if (!moved.empty() && !hall(moved, all & ~f)) return false;
    }
    return true;
  }

  bool place(int u) {
    if (!consistent(u)) return false;
    if (u == n_) return true;
    for (std::size_t j = 0; j < centers_.size(); ++j) {
      if (!(reach_[static_cast<std::size_t>(u)] >> j & 1u) || room(static_cast<int>(j)) <= 0) continue;
      ++load_[j];
      phi_[static_cast<std::size_t>(u)] = static_cast<int>(j);
      if (place(u + 1)) return true;
      --load_[j];
    }
    phi_[static_cast<std::size_t>(u)] = -1;
    return false;
  }

  int n_;
  VertexSet centers_;
  std::vector<Capacity> cap_;
  std::vector<long> load_;
  std::vector<int> phi_;
  std::vector<unsigned> reach_;
  std::vector<unsigned> scenarios_;
};

void check_limits(const MetricInstance& inst, const OracleLimits& limits) {
  if (inst.size() > limits.max_n || inst.k() > limits.max_k || inst.alpha() > limits.max_alpha) {
    throw SizeLimitError("exact oracle limited to n <= " + std::to_string(limits.max_n) + ", k <= " +
                         std::to_string(limits.max_k) + ", alpha <= " + std::to_string(limits.max_alpha));
  }
}

}  // namespace

VerificationReport check_fault_tolerant(int n, const std::vector<Capacity>& capacities, const VertexSet& centers,
                                        int alpha, const Reach& within) {
  VerificationReport report;
  if (n > 0 && static_cast<int>(centers.size()) <= alpha) {
    report.pass = false;
    report.failure = "every center can fail at once";
    report.failed_scenario = centers;
    return report;
  }
  const VertexSet clients = range(n);
  for (const auto& failed : subsets_of_size(centers, alpha)) {
    ++report.scenarios_checked;
    const VertexSet alive = set_difference(centers, failed);
    std::vector<Capacity> room;
    for (const int c : alive) room.push_back(capacities[static_cast<std::size_t>(c)]);
    auto result = match(clients, alive, room, within);
    if (!result.ok) {
      report.pass = false;
      report.failed_scenario = failed;
      report.witness = result.witness;
      report.failure = "Hall's condition fails";
      return report;
    }
  }
  return report;
}

VerificationReport check_conservative(int n, const std::vector<Capacity>& capacities, const VertexSet& centers,
                                      const std::vector<int>& phi0, int alpha, const Reach& within) {
  VerificationReport report;
  auto fail = [&](std::string why, VertexSet witness) {
    report.pass = false;
    report.failure = std::move(why);
    report.witness = std::move(witness);
    return report;
  };
  if (static_cast<int>(phi0.size()) != n) return fail("initial assignment has the wrong length", {});
  std::vector<Capacity> load(static_cast<std::size_t>(n), 0);
  for (int u = 0; u < n; ++u) {
    const int c = phi0[static_cast<std::size_t>(u)];
    if (c < 0 || c >= n || !contains(centers, c)) return fail("client assigned outside the center set", {u});
    if (!within(u, c)) return fail("initial assignment exceeds the radius", {u});
    ++load[static_cast<std::size_t>(c)];
  }
  for (const int c : centers) {
    if (load[static_cast<std::size_t>(c)] > capacities[static_cast<std::size_t>(c)]) {
      return fail("initial assignment overfills a center", {c});
    }
  }
  if (n > 0 && static_cast<int>(centers.size()) <= alpha) {
    report.failed_scenario = centers;
    return fail("every center can fail at once", {});
  }
  for (const auto& failed : subsets_of_size(centers, alpha)) {
    ++report.scenarios_checked;
    VertexSet orphans;
    for (int u = 0; u < n; ++u) {
      if (contains(failed, phi0[static_cast<std::size_t>(u)])) orphans.push_back(u);
    }
    if (orphans.empty()) continue;
    const VertexSet alive = set_difference(centers, failed);
    std::vector<Capacity> room;
    for (const int c : alive) room.push_back(capacities[static_cast<std::size_t>(c)] - load[static_cast<std::size_t>(c)]);
    auto result = match(orphans, alive, room, within);
    if (!result.ok) {
      report.failed_scenario = failed;
      return fail("orphaned clients do not fit into the residual capacity", result.witness);
    }
  }
  return report;
}

VerificationReport verify_ft(const MetricInstance& inst, const VertexSet& centers, const Distance& radius) {
  return check_fault_tolerant(inst.size(), inst.capacities(), centers, inst.alpha(), by_distance(inst, radius));
}

VerificationReport verify_conservative(const MetricInstance& inst, const VertexSet& centers,
                                       const std::vector<int>& phi0, const Distance& radius) {
  return check_conservative(inst.size(), inst.capacities(), centers, phi0, inst.alpha(), by_distance(inst, radius));
}

VerificationReport verify_ft_hops(const Graph& g, const std::vector<Capacity>& capacities, const VertexSet& centers,
                                  int alpha, int radius) {
  return check_fault_tolerant(g.size(), capacities, centers, alpha, by_hops(g, radius));
}

VerificationReport verify_conservative_hops(const Graph& g, const std::vector<Capacity>& capacities,
                                            const VertexSet& centers, const std::vector<int>& phi0, int alpha,
                                            int radius) {
  return check_conservative(g.size(), capacities, centers, phi0, alpha, by_hops(g, radius));
}

std::optional<ExactFt> exact_opt_ft(const MetricInstance& inst, OracleLimits limits) {
  check_limits(inst, limits);
  const auto taus = inst.thresholds();
  const auto everyone = range(inst.size());
  const auto candidates = subsets_of_size(everyone, inst.k());

  auto feasible_at = [&](const Distance& tau) -> std::optional<VertexSet> {
    for (const auto& s : candidates) {
      if (verify_ft(inst, s, tau).pass) return s;
    }
    return std::nullopt;
  };
  // Feasibility is monotone in the threshold, so binary search is exact.
  std::size_t lo = 0;
  std::size_t hi = taus.size();
  std::optional<VertexSet> best;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (auto s = feasible_at(taus[mid])) {
      best = std::move(s);
      hi = mid;
    } else {
      lo = mid + 1;
    }
  }
  if (lo == taus.size()) return std::nullopt;
  if (!best || !verify_ft(inst, *best, taus[lo]).pass) best = feasible_at(taus[lo]);
  return ExactFt{taus[lo], *best};
}

std::optional<ExactConservative> exact_opt_conservative(const MetricInstance& inst, OracleLimits limits) {
  check_limits(inst, limits);
  const auto ft = exact_opt_ft(inst, limits);
  if (!ft) return std::nullopt;
  const auto taus = inst.thresholds();
  const auto everyone = range(inst.size());
  const auto candidates = subsets_of_size(everyone, inst.k());
  const auto start = std::find(taus.begin(), taus.end(), ft->opt);
  for (auto tau = start; tau != taus.end(); ++tau) {
    const Reach within = by_distance(inst, *tau);
    for (const auto& s : candidates) {
      if (!check_fault_tolerant(inst.size(), inst.capacities(), s, inst.alpha(), within).pass) continue;
      ConservativeSearch search(inst.size(), inst.capacities(), s, inst.alpha(), within);
      if (search.run()) return ExactConservative{*tau, s, search.phi0()};
    }
  }
  return std::nullopt;
}

UnweightedOutcome exact_unweighted(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities,
                                   int radius) {
  const int n = g.size();
  if (binomial(n, k) > 200000) throw SizeLimitError("exact unweighted solver: too many center sets");
  UnweightedOutcome out;
  const Reach within = by_hops(g, radius);
  for (const auto& s : subsets_of_size(range(n), k)) {
    if (!check_fault_tolerant(n, capacities, s, alpha, within).pass) continue;
    std::vector<Capacity> room;
    for (const int c : s) room.push_back(capacities[static_cast<std::size_t>(c)]);
    const auto base = match(range(n), s, room, within);
    UnweightedSolution sol;
    sol.centers = s;
    sol.stretch = radius;
    sol.initial_stretch = radius;
    for (const int c : base.assignment) sol.assignment.push_back(s[static_cast<std::size_t>(c)]);
    out.solution = std::move(sol);
    return out;
  }
  out.reason = "no " + std::to_string(k) + "-subset admits a distance-" + std::to_string(radius) + " solution";
  return out;
}

MetricInstance gap_instance(int s) {
  if (s < 2 || s % 2 != 0) throw InputError("gap instance needs an even s >= 2");
  const int n = s * s;
  std::vector<std::vector<Rational>> dist(static_cast<std::size_t>(n), std::vector<Rational>(static_cast<std::size_t>(n)));
  for (int u = 0; u < n; ++u) {
    for (int v = 0; v < n; ++v) {
      const int around = std::min(std::abs(u - v), n - std::abs(u - v));
      dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)] = (around + s - 1) / s;
    }
  }
  return MetricInstance::from_matrix("gap-s" + std::to_string(s), std::move(dist), s, s - 1,
                                     std::vector<Capacity>(static_cast<std::size_t>(n), n));
}

}  // namespace ftkc
