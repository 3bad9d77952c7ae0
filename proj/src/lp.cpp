#include "ftkc/lp.hpp"

#include <algorithm>

#include "ftkc/errors.hpp"
#include "ftkc/flow.hpp"

namespace ftkc {

void LinearProgram::add(std::vector<Rational> coeffs, Relation relation, Rational rhs) {
  if (static_cast<int>(coeffs.size()) != variables) throw ContractViolation("row width differs from variable count");
  rows.push_back(LinearRow{std::move(coeffs), relation, std::move(rhs)});
}

bool row_satisfied(const LinearRow& row, const std::vector<Rational>& x) {
  Rational lhs = 0;
  for (std::size_t j = 0; j < row.coeffs.size(); ++j) {
    if (row.coeffs[j] != 0) lhs += row.coeffs[j] * x[j];
  }
  switch (row.relation) {
    case Relation::le: return lhs <= row.rhs;
    case Relation::ge: return lhs >= row.rhs;
    case Relation::eq: return lhs == row.rhs;
  }
  return false;
}

bool LinearProgram::satisfied_by(const std::vector<Rational>& x) const {
  if (static_cast<int>(x.size()) != variables) return false;
  for (const Rational& v : x) {
    if (v < 0) return false;
  }
  return std::all_of(rows.begin(), rows.end(), [&](const LinearRow& r) { return row_satisfied(r, x); });
}

LpSolution simplex_feasible(const LinearProgram& lp) {
  const int n = lp.variables;
  const int m = static_cast<int>(lp.rows.size());

  // Normalize to non-negative right-hand sides.
  std::vector<LinearRow> rows = lp.rows;
  for (auto& row : rows) {
    if (row.rhs < 0) {
      for (auto& a : row.coeffs) a = -a;
      row.rhs = -row.rhs;
      if (row.relation == Relation::le) {
        row.relation = Relation::ge;
      } else if (row.relation == Relation::ge) {
        row.relation = Relation::le;
      }
    }
  }

  int slack_count = 0;
  int artificial_count = 0;
  for (const auto& row : rows) {
    if (row.relation != Relation::eq) ++slack_count;
    if (row.relation != Relation::le) ++artificial_count;
  }
  const int first_artificial = n + slack_count;
  const int cols = first_artificial + artificial_count;
  const auto rhs = static_cast<std::size_t>(cols);

  std::vector<std::vector<Rational>> t(static_cast<std::size_t>(m), std::vector<Rational>(rhs + 1));
  std::vector<int> basis(static_cast<std::size_t>(m));
  std::vector<Rational> obj(rhs + 1);
  int next_slack = n;
  int next_artificial = first_artificial;
  for (int i = 0; i < m; ++i) {
    auto& row = t[static_cast<std::size_t>(i)];
    const auto& src = rows[static_cast<std::size_t>(i)];
    for (int j = 0; j < n; ++j) row[static_cast<std::size_t>(j)] = src.coeffs[static_cast<std::size_t>(j)];
    row[rhs] = src.rhs;
    if (src.relation == Relation::le) {
      row[static_cast<std::size_t>(next_slack)] = 1;
      basis[static_cast<std::size_t>(i)] = next_slack++;
      continue;
    }
    if (src.relation == Relation::ge) row[static_cast<std::size_t>(next_slack++)] = -1;
    row[static_cast<std::size_t>(next_artificial)] = 1;
    basis[static_cast<std::size_t>(i)] = next_artificial++;
    for (int j = 0; j < first_artificial; ++j) obj[static_cast<std::size_t>(j)] -= row[static_cast<std::size_t>(j)];
    obj[rhs] -= row[rhs];
  }

  while (true) {
    int enter = -1;
    for (int j = 0; j < first_artificial; ++j) {
      if (obj[static_cast<std::size_t>(j)] < 0) {
        enter = j;
        break;
      }
    }
    if (enter < 0) break;
    const auto e = static_cast<std::size_t>(enter);

    int leave = -1;
    Rational best;
    for (int i = 0; i < m; ++i) {
      const auto& row = t[static_cast<std::size_t>(i)];
      if (row[e] <= 0) continue;
      Rational ratio = row[rhs] / row[e];
      if (leave < 0 || ratio < best ||
          (ratio == best && basis[static_cast<std::size_t>(i)] < basis[static_cast<std::size_t>(leave)])) {
        leave = i;
        best = std::move(ratio);
      }
    }
    if (leave < 0) throw ContractViolation("phase-1 simplex reported an unbounded direction");

    auto& pivot_row = t[static_cast<std::size_t>(leave)];
    const Rational pivot = pivot_row[e];
    for (auto& a : pivot_row) {
      if (a != 0) a /= pivot;
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[e] == 0) return;
      const Rational factor = row[e];
      for (std::size_t j = 0; j <= rhs; ++j) {
        if (pivot_row[j] != 0) row[j] -= factor * pivot_row[j];
      }
    };
    for (int i = 0; i < m; ++i) {
      if (i != leave) eliminate(t[static_cast<std::size_t>(i)]);
    }
    eliminate(obj);
    basis[static_cast<std::size_t>(leave)] = enter;
  }

  LpSolution solution;
  if (obj[rhs] != 0) return solution;
  solution.feasible = true;
  solution.point.assign(static_cast<std::size_t>(n), Rational(0));
  for (int i = 0; i < m; ++i) {
    const int b = basis[static_cast<std::size_t>(i)];
    if (b < n) solution.point[static_cast<std::size_t>(b)] = t[static_cast<std::size_t>(i)][rhs];
  }
  if (!lp.satisfied_by(solution.point)) throw ContractViolation("simplex returned a point violating its rows");
  return solution;
}

CuttingPlaneResult solve_cutting_plane(LinearProgram lp, const Separator& separate) {
  CuttingPlaneResult result;
  while (true) {
    ++result.rounds;
    LpSolution sol = simplex_feasible(lp);
    if (!sol.feasible) return result;
    std::optional<LinearRow> cut = separate(sol.point);
    if (!cut) {
      result.feasible = true;
      result.y = std::move(sol.point);
      return result;
    }
    if (row_satisfied(*cut, sol.point)) throw ContractViolation("separator returned a row the point satisfies");
    result.cuts.push_back(*cut);
    lp.rows.push_back(std::move(*cut));
  }
}

std::vector<VertexSet> subsets_of_size(const VertexSet& pool, int size) {
  std::vector<VertexSet> out;
  if (size < 0 || size > static_cast<int>(pool.size())) return out;
  std::vector<int> idx(static_cast<std::size_t>(size));
  for (int i = 0; i < size; ++i) idx[static_cast<std::size_t>(i)] = i;
  const int n = static_cast<int>(pool.size());
  while (true) {
    VertexSet s;
    for (const int i : idx) s.push_back(pool[static_cast<std::size_t>(i)]);
    out.push_back(std::move(s));
    int pos = size - 1;
    while (pos >= 0 && idx[static_cast<std::size_t>(pos)] == n - size + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<std::size_t>(pos)];
    for (int j = pos + 1; j < size; ++j) idx[static_cast<std::size_t>(j)] = idx[static_cast<std::size_t>(j - 1)] + 1;
  }
  return out;
}

Digraph as_digraph(const Graph& g) {
  Digraph d;
  for (int u = 0; u < g.size(); ++u) d.out.push_back(g.neighbors(u));
  return d;
}

namespace {

// Weight y_u L_u of every vertex, as exact rationals.
std::vector<Rational> weights(const std::vector<Rational>& y, const std::vector<Capacity>& capacities) {
  std::vector<Rational> w(y.size());
  for (std::size_t u = 0; u < y.size(); ++u) w[u] = y[u] * Rational(static_cast<long>(capacities[u]));
  return w;
}

struct CutOutcome {
  VertexSet clients;
  Rational value;  // reachable weight of clients minus |clients|
};

// Min over U (containing `forced` when it is >= 0) of w(N(U) \ F) - |U|.
CutOutcome min_hall_cut(const std::vector<Rational>& w, const Integer& scale, const Digraph& arcs,
                        const std::vector<char>& failed, int forced) {
  const int n = arcs.size();
  const int s = 0;
  const int t = 1;
  FlowNetwork<Integer> net(2 * n + 2, s, t);
  for (int v = 0; v < n; ++v) {
    if (v == forced) {
      net.add_infinite_arc(s, 2 + v);
    } else {
      net.add_arc(s, 2 + v, scale);
    }
    for (const int u : arcs.closed_out(v)) {
      if (!failed[static_cast<std::size_t>(u)]) net.add_infinite_arc(2 + v, 2 + n + u);
    }
  }
  for (int u = 0; u < n; ++u) {
    if (failed[static_cast<std::size_t>(u)]) continue;
    const Rational scaled = w[static_cast<std::size_t>(u)] * Rational(scale);
    if (scaled != 0) net.add_arc(2 + n + u, t, scaled.get_num());
  }
  const auto flow = max_flow(net);
  if (flow.infinite) throw ContractViolation("Hall separation network has an infinite path");
  CutOutcome out;
  for (int v = 0; v < n; ++v) {
    if (flow.source_side[static_cast<std::size_t>(2 + v)]) out.clients.push_back(v);
  }
  VertexSet reach = arcs.closed_out(out.clients);
  out.value = -Rational(static_cast<long>(out.clients.size()));
  for (const int u : reach) {
    if (!failed[static_cast<std::size_t>(u)]) out.value += w[static_cast<std::size_t>(u)];
  }
  return out;
}

Integer scale_for(const std::vector<Rational>& w) { return common_denominator(std::span<const Rational>(w)); }

}  // namespace

SeparationResult separate_hall(const std::vector<Rational>& y, const Digraph& arcs,
                               const std::vector<Capacity>& capacities, const std::vector<VertexSet>& scenarios,
                               bool stop_at_first) {
  const auto w = weights(y, capacities);
  const Integer scale = scale_for(w);
  SeparationResult result;
  bool first = true;
  for (const auto& f : scenarios) {
    std::vector<char> failed(static_cast<std::size_t>(arcs.size()), 0);
    for (const int x : f) failed[static_cast<std::size_t>(x)] = 1;
    CutOutcome cut = min_hall_cut(w, scale, arcs, failed, -1);
    if (first || cut.value < result.min_value) result.min_value = cut.value;
    first = false;
    if (cut.value < 0 && !result.violation) {
      result.ok = false;
      result.violation = HallViolation{std::move(cut.clients), f, cut.value};
      if (stop_at_first) break;
    }
  }
  return result;
}

SeparationResult separate_lpka(const std::vector<Rational>& y, const Digraph& gprime, const Clustering& c,
                               const std::vector<Capacity>& capacities, int alpha, bool stop_at_first) {
  return separate_hall(y, gprime, capacities, subsets_of_size(c.all_backups, alpha), stop_at_first);
}

SeparationResult separate_relaxed_ilp(const std::vector<Rational>& y, const Graph& g,
                                      const std::vector<Capacity>& capacities, int alpha) {
  VertexSet all(static_cast<std::size_t>(g.size()));
  for (int v = 0; v < g.size(); ++v) all[static_cast<std::size_t>(v)] = v;
  return separate_hall(y, as_digraph(g), capacities, subsets_of_size(all, alpha), false);
}

SeparationResult separate_lpu(const std::vector<Rational>& y, const Graph& g, const std::vector<Capacity>& capacities,
                              int alpha) {
  const auto level = uniform_capacity(capacities);
  if (!level) throw InputError("LPU separation needs {0, L} capacities");
  const auto w = weights(y, capacities);
  const Integer scale = scale_for(w);
  const Digraph arcs = as_digraph(g);
  const std::vector<char> none(static_cast<std::size_t>(g.size()), 0);
  const Rational bound = Rational(static_cast<long>(alpha)) * Rational(static_cast<long>(*level));

  SeparationResult result;
  std::optional<CutOutcome> best;
  for (int x = 0; x < g.size(); ++x) {
    CutOutcome cut = min_hall_cut(w, scale, arcs, none, x);
    if (!best || cut.value < best->value) best = std::move(cut);
  }
  if (!best) return result;
  result.min_value = best->value;
  if (best->value < bound) {
    result.ok = false;
    result.violation = HallViolation{std::move(best->clients), {}, best->value};
  }
  return result;
}

LinearProgram lpka_static_rows(const Graph& g, const Clustering& c, int k) {
  const int n = g.size();
  LinearProgram lp;
  lp.variables = n;
  lp.add(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)), Relation::eq, Rational(k));
  for (const int b : c.all_backups) {
    std::vector<Rational> row(static_cast<std::size_t>(n));
    row[static_cast<std::size_t>(b)] = 1;
    lp.add(std::move(row), Relation::eq, Rational(1));
  }
  for (const int v : c.midpoints) {
    std::vector<Rational> row(static_cast<std::size_t>(n));
    for (const int u : neighborhood(g, v, 1)) {
      if (!c.is_backup(u)) row[static_cast<std::size_t>(u)] = 1;
    }
    lp.add(std::move(row), Relation::ge, Rational(1));
  }
  for (int u = 0; u < n; ++u) {
    if (c.is_backup(u)) continue;
    std::vector<Rational> row(static_cast<std::size_t>(n));
    row[static_cast<std::size_t>(u)] = 1;
    lp.add(std::move(row), Relation::le, Rational(1));
  }
  return lp;
}

LinearRow lpka_cut(const HallViolation& violation, const Digraph& gprime, const std::vector<Capacity>& capacities) {
  LinearRow row;
  row.coeffs.assign(static_cast<std::size_t>(gprime.size()), Rational(0));
  for (const int u : gprime.closed_out(violation.clients)) {
    if (contains(violation.failed, u)) continue;
    row.coeffs[static_cast<std::size_t>(u)] = Rational(static_cast<long>(capacities[static_cast<std::size_t>(u)]));
  }
  row.relation = Relation::ge;
  row.rhs = Rational(static_cast<long>(violation.clients.size()));
  return row;
}

LinearProgram lpu_static_rows(const Graph& g, const std::vector<Capacity>& capacities, int k) {
  const int n = g.size();
  LinearProgram lp;
  lp.variables = n;
  lp.add(std::vector<Rational>(static_cast<std::size_t>(n), Rational(1)), Relation::eq, Rational(k));
  for (int v = 0; v < n; ++v) {
    std::vector<Rational> row(static_cast<std::size_t>(n));
    for (const int u : neighborhood(g, v, 1)) {
      if (capacities[static_cast<std::size_t>(u)] > 0) row[static_cast<std::size_t>(u)] = 1;
    }
    lp.add(std::move(row), Relation::ge, Rational(1));
  }
  for (int u = 0; u < n; ++u) {
    std::vector<Rational> row(static_cast<std::size_t>(n));
    row[static_cast<std::size_t>(u)] = 1;
    lp.add(std::move(row), Relation::le, Rational(1));
  }
  return lp;
}

LinearRow lpu_cut(const VertexSet& clients, const Graph& g, const std::vector<Capacity>& capacities, int alpha) {
  const auto level = uniform_capacity(capacities);
  if (!level) throw InputError("LPU cut needs {0, L} capacities");
  LinearRow row;
  row.coeffs.assign(static_cast<std::size_t>(g.size()), Rational(0));
  for (const int u : neighborhood(g, clients, 1)) {
    if (capacities[static_cast<std::size_t>(u)] > 0) row.coeffs[static_cast<std::size_t>(u)] = Rational(static_cast<long>(*level));
  }
  row.relation = Relation::ge;
  row.rhs = Rational(static_cast<long>(clients.size())) + Rational(static_cast<long>(alpha)) * Rational(static_cast<long>(*level));
  return row;
}

LpOutcome solve_lpka(const Graph& g, const Digraph& gprime, const Clustering& c,
                     const std::vector<Capacity>& capacities, int k, int alpha) {
  const auto separator = [&](const std::vector<Rational>& y) -> std::optional<LinearRow> {
    const auto sep = separate_lpka(y, gprime, c, capacities, alpha, true);
    if (sep.ok) return std::nullopt;
    return lpka_cut(*sep.violation, gprime, capacities);
  };
  const auto cp = solve_cutting_plane(lpka_static_rows(g, c, k), separator);
  return LpOutcome{cp.feasible, cp.y, cp.rounds};
}

LpOutcome solve_lpu(const Graph& g, const std::vector<Capacity>& capacities, int k, int alpha) {
  const auto separator = [&](const std::vector<Rational>& y) -> std::optional<LinearRow> {
    const auto sep = separate_lpu(y, g, capacities, alpha);
    if (sep.ok) return std::nullopt;
    return lpu_cut(sep.violation->clients, g, capacities, alpha);
  };
  const auto cp = solve_cutting_plane(lpu_static_rows(g, capacities, k), separator);
  return LpOutcome{cp.feasible, cp.y, cp.rounds};
}

}  // namespace ftkc
