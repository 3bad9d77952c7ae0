#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "ftkc/clustering.hpp"
#include "ftkc/errors.hpp"
#include "ftkc/lp.hpp"
#include "ftkc/oracle.hpp"

using namespace ftkc;

namespace {

// Unique solution of a square system, or nullopt when singular.
std::optional<std::vector<Rational>> solve_square(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && a[pivot][col] == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(a[pivot], a[col]);
    std::swap(b[pivot], b[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || a[r][col] == 0) continue;
      const Rational f = a[r][col] / a[col][col];
      for (std::size_t c = col; c < n; ++c) a[r][c] -= f * a[col][c];
      b[r] -= f * b[col];
    }
  }
  std::vector<Rational> x(n);
  for (std::size_t i = 0; i < n; ++i) x[i] = b[i] / a[i][i];
  return x;
}

// A non-empty polyhedron inside the non-negative orthant has a vertex, so
// feasibility is decided by trying every choice of n tight constraints.
bool feasible_by_vertices(const LinearProgram& lp) {
  const int n = lp.variables;
  std::vector<std::pair<std::vector<Rational>, Rational>> hyperplanes;
  for (const auto& row : lp.rows) hyperplanes.emplace_back(row.coeffs, row.rhs);
  for (int i = 0; i < n; ++i) {
    std::vector<Rational> unit(static_cast<std::size_t>(n));
    unit[static_cast<std::size_t>(i)] = 1;
    hyperplanes.emplace_back(unit, Rational(0));
  }
  for (const auto& pick : brute::subsets(static_cast<int>(hyperplanes.size()), n)) {
    std::vector<std::vector<Rational>> a;
    std::vector<Rational> b;
    for (const int h : pick) {
      a.push_back(hyperplanes[static_cast<std::size_t>(h)].first);
      b.push_back(hyperplanes[static_cast<std::size_t>(h)].second);
    }
    const auto x = solve_square(a, b);
    if (!x) continue;
    bool nonneg = true;
    for (const auto& v : *x) nonneg = nonneg && v >= 0;
    if (nonneg && lp.satisfied_by(*x)) return true;
  }
  return false;
}

std::vector<Rational> random_opening(std::mt19937_64& rng, int n) {
  std::uniform_int_distribution<int> quarter(0, 4);
  std::vector<Rational> y;
  for (int v = 0; v < n; ++v) y.emplace_back(quarter(rng), 4);
  for (auto& v : y) v.canonicalize();
  return y;
}

std::vector<VertexSet> closed_reach(const Digraph& d) {
  std::vector<VertexSet> reach;
  for (int u = 0; u < d.size(); ++u) reach.push_back(d.closed_out(u));
  return reach;
}

}  // namespace

TEST_CASE("simplex on tiny systems") {
  LinearProgram pinned;
  pinned.variables = 1;
  pinned.add({1}, Relation::eq, 1);
  pinned.add({1}, Relation::le, 1);
  const auto s = simplex_feasible(pinned);
  REQUIRE(s.feasible);
  CHECK(s.point == std::vector<Rational>{1});

  LinearProgram empty;
  empty.variables = 1;
  empty.add({1}, Relation::ge, 2);
  empty.add({1}, Relation::le, 1);
  CHECK_FALSE(simplex_feasible(empty).feasible);

  LinearProgram negative_rhs;
  negative_rhs.variables = 2;
  negative_rhs.add({-1, 1}, Relation::le, -3);
  negative_rhs.add({1, 0}, Relation::le, 5);
  const auto t = simplex_feasible(negative_rhs);
  REQUIRE(t.feasible);
  CHECK(negative_rhs.satisfied_by(t.point));
}

TEST_CASE("simplex agrees with vertex enumeration on random programs") {
  std::mt19937_64 rng(31);
  std::uniform_int_distribution<int> coeff(-3, 3);
  std::uniform_int_distribution<int> rhs(-4, 6);
  std::uniform_int_distribution<int> rel(0, 2);
  int feasible = 0;
  for (int trial = 0; trial < 400; ++trial) {
    LinearProgram lp;
    lp.variables = 1 + trial % 4;
    const int rows = 1 + trial % 5;
    for (int r = 0; r < rows; ++r) {
      std::vector<Rational> row;
      for (int i = 0; i < lp.variables; ++i) row.emplace_back(coeff(rng));
      lp.add(row, static_cast<Relation>(rel(rng)), Rational(rhs(rng)));
    }
    const auto s = simplex_feasible(lp);
    REQUIRE(s.feasible == feasible_by_vertices(lp));
    if (s.feasible) {
      ++feasible;
      REQUIRE(static_cast<int>(s.point.size()) == lp.variables);
      for (const auto& v : s.point) REQUIRE(v >= 0);
      REQUIRE(lp.satisfied_by(s.point));
    }
  }
  CHECK(feasible > 50);
  CHECK(feasible < 400);
}

TEST_CASE("cutting plane driver adds rows until the separator accepts") {
  LinearProgram lp;
  lp.variables = 2;
  lp.add({1, 1}, Relation::eq, 1);
  int calls = 0;
  const auto r = solve_cutting_plane(lp, [&](const std::vector<Rational>& y) -> std::optional<LinearRow> {
    ++calls;
    if (y[0] <= Rational(1, 3)) return std::nullopt;
    return LinearRow{{1, 0}, Relation::le, Rational(1, 3)};
  });
  REQUIRE(r.feasible);
  CHECK(r.y[0] <= Rational(1, 3));
  CHECK(r.y[0] + r.y[1] == 1);
  CHECK(r.cuts.size() == static_cast<std::size_t>(calls - 1));

  const auto never = solve_cutting_plane(lp, [](const std::vector<Rational>&) -> std::optional<LinearRow> {
    return LinearRow{{1, 1}, Relation::le, Rational(1, 2)};
  });
  CHECK_FALSE(never.feasible);
}

TEST_CASE("LP_{k,alpha} separation examples") {
  const Graph single(1, {});
  auto c = *select_backups(monarch_clustering(single), {1}, 0).clustering;
  const auto d = build_gprime(single, c);
  CHECK(separate_lpka({1}, d, c, {1}, 0).ok);

  const Graph p = brute::path(4);
  auto cp = *select_backups(monarch_clustering(p), {2, 2, 2, 2}, 0).clustering;
  const auto r = separate_lpka({0, 0, 0, 0}, build_gprime(p, cp), cp, {2, 2, 2, 2}, 0);
  REQUIRE_FALSE(r.ok);
  REQUIRE(r.violation.has_value());
  CHECK(r.violation->clients == VertexSet{0, 1, 2, 3});
  CHECK(r.min_value == -4);
}

TEST_CASE("LP_{k,alpha} separation matches enumeration over every U and F") {
  std::mt19937_64 rng(32);
  std::uniform_int_distribution<Capacity> cap(1, 4);
  int checked = 0;
  for (int trial = 0; trial < 300 && checked < 150; ++trial) {
    const int n = 2 + trial % 6;
    const int alpha = trial % 3;
    const Graph g = brute::random_connected_graph(rng, n, 0.3);
    std::vector<Capacity> caps;
    for (int v = 0; v < n; ++v) caps.push_back(cap(rng));
    auto sel = select_backups(monarch_clustering(g), caps, alpha);
    if (!sel.clustering) continue;
    ++checked;
    const auto& c = *sel.clustering;
    const auto d = build_gprime(g, c);
    const auto y = random_opening(rng, n);
    const auto scenarios = subsets_of_size(c.all_backups, alpha);
    const Rational expect = brute::hall_minimum(y, closed_reach(d), caps, scenarios, false);
    const auto r = separate_lpka(y, d, c, caps, alpha);
    REQUIRE(r.min_value == expect);
    REQUIRE(r.ok == (expect >= 0));
    if (r.violation) {
      // The reported row is violated by exactly its own value.
      const auto reach = set_difference(d.closed_out(r.violation->clients), r.violation->failed);
      Rational lhs = -static_cast<long>(r.violation->clients.size());
      for (const int u : reach) lhs += y[static_cast<std::size_t>(u)] * caps[static_cast<std::size_t>(u)];
      REQUIRE(lhs == r.violation->value);
      REQUIRE(lhs < 0);
      REQUIRE(static_cast<int>(r.violation->failed.size()) == alpha);
    }
  }
  CHECK(checked >= 100);
}

TEST_CASE("min-cut value equals the relaxed separation LP") {
  // min sum c_u z_u - sum x_v with z_u >= x_v along arcs and 0 <= x, z <= 1:
  // the cut value is attained and nothing below it is feasible.
  std::mt19937_64 rng(33);
  std::uniform_int_distribution<Capacity> cap(1, 3);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 2 + trial % 4;
    const Graph g = brute::random_connected_graph(rng, n, 0.4);
    std::vector<Capacity> caps;
    for (int v = 0; v < n; ++v) caps.push_back(cap(rng));
    const auto y = random_opening(rng, n);
    const auto d = as_digraph(g);
    const auto value = separate_hall(y, d, caps, {VertexSet{}}, false).min_value;

    auto relaxation = [&](const Rational& bound) {
      LinearProgram lp;
      lp.variables = 2 * n;
      std::vector<Rational> objective(static_cast<std::size_t>(2 * n));
      for (int v = 0; v < n; ++v) {
        objective[static_cast<std::size_t>(v)] = -1;
        objective[static_cast<std::size_t>(n + v)] = y[static_cast<std::size_t>(v)] * caps[static_cast<std::size_t>(v)];
        std::vector<Rational> ux(static_cast<std::size_t>(2 * n)), uz(static_cast<std::size_t>(2 * n));
        ux[static_cast<std::size_t>(v)] = 1;
        uz[static_cast<std::size_t>(n + v)] = 1;
        lp.add(ux, Relation::le, 1);
        lp.add(uz, Relation::le, 1);
        for (const int u : d.closed_out(v)) {
          std::vector<Rational> row(static_cast<std::size_t>(2 * n));
          row[static_cast<std::size_t>(n + u)] += 1;
          row[static_cast<std::size_t>(v)] -= 1;
          lp.add(row, Relation::ge, 0);
        }
      }
      lp.add(objective, Relation::le, bound);
      return simplex_feasible(lp).feasible;
    };
    REQUIRE(relaxation(value));
    REQUIRE_FALSE(relaxation(value - Rational(1, 100)));
  }
}

TEST_CASE("LPU separation") {
  CHECK(separate_lpu({1}, Graph(1, {}), {1}, 0).ok);
  CHECK_THROWS_AS(separate_lpu({1, 1}, brute::path(2), {1, 2}, 0), InputError);

  // On the 16-vertex gap instance the single-client rows are the binding ones.
  const Graph g = threshold_graph(gap_instance(4), Distance::from_value(1));
  const std::vector<Rational> quarter(16, Rational(1, 4));
  const auto r = separate_lpu(quarter, g, std::vector<Capacity>(16, 16), 3);
  CHECK_FALSE(r.ok);
  std::vector<VertexSet> reach;
  for (int u = 0; u < 16; ++u) reach.push_back(neighborhood(g, u, 1));
  CHECK(r.min_value == brute::hall_minimum(quarter, reach, std::vector<Capacity>(16, 16), {VertexSet{}}, true));
  // Nine vertices within hop 1, each carrying 4: 36 - 1 < 3 * 16.
  CHECK(r.min_value == 35);
}

TEST_CASE("LPU separation matches enumeration over every nonempty U") {
  std::mt19937_64 rng(34);
  std::bernoulli_distribution zero(0.3);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 1 + trial % 8;
    const Capacity l = 1 + trial % 3;
    const int alpha = trial % 3;
    const Graph g = brute::random_graph(rng, n, 0.35);
    std::vector<Capacity> caps;
    for (int v = 0; v < n; ++v) caps.push_back(zero(rng) ? 0 : l);
    caps[0] = l;
    const auto y = random_opening(rng, n);
    std::vector<VertexSet> reach;
    for (int u = 0; u < n; ++u) {
      VertexSet heavy;
      for (const int v : neighborhood(g, u, 1)) {
        if (caps[static_cast<std::size_t>(v)] > 0) heavy.push_back(v);
      }
      reach.push_back(heavy);
    }
    const Rational expect = brute::hall_minimum(y, reach, caps, {VertexSet{}}, true);
    const auto r = separate_lpu(y, g, caps, alpha);
    REQUIRE(r.min_value == expect);
    REQUIRE(r.ok == (expect >= alpha * l));
  }
}

TEST_CASE("relaxed ILP rows accept y = 1/4 on the gap instance") {
  const auto inst = gap_instance(4);
  const Graph g = threshold_graph(inst, Distance::from_value(1));
  const std::vector<Rational> quarter(16, Rational(1, 4));
  const auto r = separate_relaxed_ilp(quarter, g, inst.capacities(), 3);
  CHECK(r.ok);
  CHECK(r.min_value == 0);
}

TEST_CASE("cutting plane verdicts on small instances") {
  // k > n leaves the static rows empty-handed.
  const Graph p = brute::path(3);
  auto c = *select_backups(monarch_clustering(p), {1, 1, 1}, 0).clustering;
  const auto over = solve_lpka(p, build_gprime(p, c), c, {1, 1, 1}, 4, 0);
  CHECK_FALSE(over.feasible);
  CHECK(over.rounds == 1);

  const std::vector<Capacity> caps{2, 0, 2, 0};
  const auto lpu = solve_lpu(brute::path(4), caps, 2, 0);
  REQUIRE(lpu.feasible);
  Rational total = 0;
  for (const auto& v : lpu.y) total += v;
  CHECK(total == 2);
  std::vector<VertexSet> reach{{0}, {0, 2}, {2}, {2}};
  CHECK(brute::hall_minimum(lpu.y, reach, caps, {VertexSet{}}, true) >= 0);

  // The six-cycle with one failure and two centers has no hop-1 solution, and
  // the relaxation certifies it.
  const Graph six = brute::cycle(6);
  const std::vector<Capacity> sixes(6, 6);
  auto c6 = *select_backups(monarch_clustering(six), sixes, 1).clustering;
  CHECK_FALSE(solve_lpka(six, build_gprime(six, c6), c6, sixes, 2, 1).feasible);
  CHECK_FALSE(exact_unweighted(six, 2, 1, sixes).solution.has_value());
}

TEST_CASE("an integral hop-1 solution implies a feasible LP_{k,alpha}") {
  std::mt19937_64 rng(35);
  std::uniform_int_distribution<Capacity> cap(1, 4);
  int solvable = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 2 + trial % 7;
    const int alpha = trial % 3;
    const int k = std::min(n, alpha + 1 + trial % 3);
    const Graph g = brute::random_connected_graph(rng, n, 0.35);
    std::vector<Capacity> caps;
    for (int v = 0; v < n; ++v) caps.push_back(cap(rng));
    auto sel = select_backups(monarch_clustering(g), caps, alpha);
    const bool integral = exact_unweighted(g, k, alpha, caps).solution.has_value();
    if (!integral) continue;
    ++solvable;
    REQUIRE(sel.clustering.has_value());
    const auto& c = *sel.clustering;
    const auto d = build_gprime(g, c);
    const auto out = solve_lpka(g, d, c, caps, k, alpha);
    REQUIRE(out.feasible);
    REQUIRE(lpka_static_rows(g, c, k).satisfied_by(out.y));
    REQUIRE(separate_lpka(out.y, d, c, caps, alpha).ok);
    for (const int b : c.all_backups) REQUIRE(out.y[static_cast<std::size_t>(b)] == 1);
  }
  CHECK(solvable >= 60);
}
