#include <doctest.h>

#include <random>

#include "brute.hpp"
#include "ftkc/errors.hpp"
#include "ftkc/graph.hpp"
#include "ftkc/instance.hpp"

using namespace ftkc;

namespace {

MetricInstance line013(int k = 1, int alpha = 0) {
  return MetricInstance::from_points("line", {{0, 0}, {1, 0}, {3, 0}}, k, alpha, {3, 3, 3});
}

using Edges = std::vector<std::pair<int, int>>;

}  // namespace

TEST_CASE("threshold graph on three collinear points") {
  const auto inst = line013();
  CHECK(threshold_graph(inst, Distance::from_value(1)).edges() == Edges{{0, 1}});
  CHECK(threshold_graph(inst, Distance::from_value(2)).edges() == Edges{{0, 1}, {1, 2}});
  CHECK(threshold_graph(inst, Distance::from_value(0)).edges().empty());
  CHECK(threshold_graph(inst, Distance::from_value(3)).edge_count() == 3);
}

TEST_CASE("thresholds are the sorted distinct distances including zero") {
  const auto taus = line013().thresholds();
  REQUIRE(taus.size() == 4);
  CHECK(taus[0] == Distance::from_value(0));
  CHECK(taus[1] == Distance::from_value(1));
  CHECK(taus[2] == Distance::from_value(2));
  CHECK(taus[3] == Distance::from_value(3));
}

TEST_CASE("neighborhoods on a path") {
  const Graph p = brute::path(4);
  CHECK(neighborhood(p, VertexSet{0}, 2) == VertexSet{0, 1, 2});
  CHECK(neighborhood(p, VertexSet{2}, 0) == VertexSet{2});
  CHECK(neighborhood(p, VertexSet{0, 3}, 1) == VertexSet{0, 1, 2, 3});
  const Graph split(4, {{0, 1}});
  CHECK(neighborhood(split, 0, 5) == VertexSet{0, 1});
}

TEST_CASE("power graphs") {
  const Graph p = brute::path(3);
  CHECK(power_graph(p, 2).edges() == Edges{{0, 1}, {0, 2}, {1, 2}});
  CHECK(power_graph(p, 1) == p);
  CHECK(power_graph(brute::cycle(6), 3).edge_count() == 15);
}

TEST_CASE("connected components") {
  CHECK(connected_components(Graph(4, {{0, 1}, {2, 3}})) == std::vector<VertexSet>{{0, 1}, {2, 3}});
  CHECK(connected_components(brute::path(5)).size() == 1);
  CHECK(connected_components(Graph(3, {})) == std::vector<VertexSet>{{0}, {1}, {2}});
}

TEST_CASE("stripping edges between zero-capacity vertices") {
  const Graph p = brute::path(3);
  CHECK(strip_zero_zero_edges(p, {0, 0, 5}).edges() == Edges{{1, 2}});
  CHECK(strip_zero_zero_edges(p, {5, 5, 5}) == p);
  CHECK_THROWS_AS(strip_zero_zero_edges(p, {0, 0, 0}), InputError);
  CHECK_THROWS_AS(strip_zero_zero_edges(p, {1, 2, 0}), InputError);
  // Every vertex has capacity 0 except one; all other edges vanish.
  const Graph k4(4, {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}});
  CHECK(strip_zero_zero_edges(k4, {7, 0, 0, 0}).edges() == Edges{{0, 1}, {0, 2}, {0, 3}});
}

TEST_CASE("hop metric properties on random graphs") {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 40; ++trial) {
    const int n = 5 + trial % 16;
    const Graph g = brute::random_graph(rng, n, 0.18);
    for (int u = 0; u < n; ++u) {
      const auto d = brute::bfs(g, u);
      for (int v = 0; v < n; ++v) REQUIRE(g.hops(u, v) == d[static_cast<std::size_t>(v)]);
    }
    for (int ell = 1; ell <= 4; ++ell) {
      const Graph pg = power_graph(g, ell);
      for (int u = 0; u < n; ++u) {
        for (int v = 0; v < n; ++v) {
          const bool expect = u != v && g.hops(u, v) <= ell;
          REQUIRE(pg.adjacent(u, v) == expect);
          REQUIRE(contains(neighborhood(g, u, ell), v) == contains(neighborhood(g, v, ell), u));
        }
      }
    }
    for (int a = 0; a <= 2; ++a) {
      for (int b = 0; b <= 2; ++b) {
        const VertexSet u{0, n / 2};
        REQUIRE(neighborhood(g, u, a + b) == neighborhood(g, neighborhood(g, u, a), b));
        REQUIRE(neighborhood(g, u, a + b) == brute::ball(g, u, a + b));
      }
    }
  }
}

TEST_CASE("threshold graphs grow with the threshold") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const auto inst = brute::random_points(rng, 8, 2, 1, {1, 2});
    const auto taus = inst.thresholds();
    for (std::size_t i = 0; i + 1 < taus.size(); ++i) {
      const auto low = threshold_graph(inst, taus[i]).edges();
      const auto high = threshold_graph(inst, taus[i + 1]).edges();
      REQUIRE(std::includes(high.begin(), high.end(), low.begin(), low.end()));
    }
  }
}

TEST_CASE("instance validation") {
  using M = std::vector<std::vector<Rational>>;
  CHECK_THROWS_AS(MetricInstance::from_matrix("x", M{{0, 1}, {2, 0}}, 1, 0, {1, 1}), InputError);
  CHECK_THROWS_AS(MetricInstance::from_matrix("x", M{{1, 1}, {1, 0}}, 1, 0, {1, 1}), InputError);
  CHECK_THROWS_AS(MetricInstance::from_matrix("x", M{{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}, 1, 0, {1, 1, 1}), InputError);
  CHECK_THROWS_AS(MetricInstance::from_matrix("x", M{{0, 1}, {1, 0}}, 1, 1, {1, 1}), InputError);
  CHECK_THROWS_AS(MetricInstance::from_matrix("x", M{{0, 1}, {1, 0}}, 3, 0, {1, 1}), InputError);
  CHECK_THROWS_AS(MetricInstance::from_matrix("x", M{{0, 1}, {1, 0}}, 1, 0, {1, -1}), InputError);
  CHECK_NOTHROW(MetricInstance::from_matrix("x", M{{0, 1, 2}, {1, 0, 1}, {2, 1, 0}}, 2, 1, {1, 1, 1}));
}

TEST_CASE("Euclidean distances stay exact") {
  const auto inst = MetricInstance::from_points("tri", {{0, 0}, {1, 1}, {2, 0}}, 1, 0, {3, 3, 3});
  CHECK(inst.distance(0, 1).to_string() == "sqrt(2)");
  CHECK(inst.distance(0, 2).to_string() == "2");
  CHECK(inst.distance(0, 1) < inst.distance(0, 2));
  CHECK(inst.distance(0, 1).scaled(2) == Distance::from_squared(8));
  CHECK(sum_at_least(inst.distance(0, 1), inst.distance(1, 2), inst.distance(0, 2)));
  CHECK_FALSE(sum_at_least(Distance::from_value(1), Distance::from_value(1), Distance::from_value(3)));
}

TEST_CASE("instance JSON round trip is byte-identical") {
  const std::string text = R"({
  "alpha": 1,
  "capacities": [
    3,
    3,
    3
  ],
  "dist": [
    [
      0,
      1,
      1
    ],
    [
      1,
      0,
      "1/3"
    ],
    [
      1,
      "1/3",
      0
    ]
  ],
  "k": 2,
  "n": 3,
  "name": "p3",
  "variant": "ft"
}
)";
  const auto inst = instance_from_json(nlohmann::json::parse(text));
  CHECK(inst.distance(1, 2) == Distance::from_value(Rational(1, 3)));
  CHECK(serialize_instance(inst) == text);
  CHECK(serialize_instance(instance_from_json(nlohmann::json::parse(serialize_instance(inst)))) == text);

  auto doc = nlohmann::json::parse(text);
  doc["extra"] = 1;
  CHECK_THROWS_AS(instance_from_json(doc), InputError);
  doc = nlohmann::json::parse(text);
  doc["n"] = 4;
  CHECK_THROWS_AS(instance_from_json(doc), InputError);
  doc = nlohmann::json::parse(text);
  doc["variant"] = "soft";
  CHECK_THROWS_AS(instance_from_json(doc), InputError);
}

TEST_CASE("points JSON round trip") {
  const auto inst = MetricInstance::from_points("pts", {{0, 0}, {Rational(1, 2), 2}}, 1, 0, {2, 0},
                                                Variant::conservative);
  const auto again = instance_from_json(instance_to_json(inst));
  CHECK(serialize_instance(again) == serialize_instance(inst));
  CHECK(again.variant() == Variant::conservative);
  CHECK(again.distance(0, 1) == inst.distance(0, 1));
}

TEST_CASE("rationals parse exactly") {
  CHECK(parse_rational("3/4") == Rational(3, 4));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("1e-3") == Rational(1, 1000));
  CHECK(rational_from_double(0.1) == Rational(1, 10));
  CHECK(to_string(Rational(3, 2)) == "1.5");
  CHECK(to_string(Rational(1, 3)) == "1/3");
  CHECK_THROWS(parse_rational("abc"));
  CHECK(uniform_capacity({0, 4, 4}) == 4);
  CHECK_FALSE(uniform_capacity({0, 4, 3}));
  CHECK_FALSE(uniform_capacity({0, 0}));
}
