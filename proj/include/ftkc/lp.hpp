#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ftkc/clustering.hpp"
#include "ftkc/graph.hpp"
#include "ftkc/rational.hpp"

namespace ftkc {

enum class Relation { le, eq, ge };

struct LinearRow {
  std::vector<Rational> coeffs;
  Relation relation = Relation::le;
  Rational rhs;
};

// Variables are implicitly non-negative.
struct LinearProgram {
  int variables = 0;
  std::vector<LinearRow> rows;

  void add(std::vector<Rational> coeffs, Relation relation, Rational rhs);
  bool satisfied_by(const std::vector<Rational>& x) const;
};

bool row_satisfied(const LinearRow& row, const std::vector<Rational>& x);

struct LpSolution {
  bool feasible = false;
  std::vector<Rational> point;
};

// Phase-1 simplex on a dense tableau, exact arithmetic, Bland's rule.
LpSolution simplex_feasible(const LinearProgram& lp);

using Separator = std::function<std::optional<LinearRow>(const std::vector<Rational>&)>;

struct CuttingPlaneResult {
  bool feasible = false;
  std::vector<Rational> y;
  int rounds = 0;
  std::vector<LinearRow> cuts;
};

// solve -> separate -> add the returned row, until the separator accepts the
// point or the LP becomes infeasible.
CuttingPlaneResult solve_cutting_plane(LinearProgram lp, const Separator& separate);

struct HallViolation {
  VertexSet clients;   // U
  VertexSet failed;    // F (empty for LPU)
  Rational value;      // capacity reachable from U minus |U|
};

struct SeparationResult {
  bool ok = true;
  Rational min_value;                    // minimum over every scenario and U
  std::optional<HallViolation> violation;  // first violated scenario, lexicographic in F
};

// min over U of sum_{u in N_arcs(U) \ F} y_u L_u - |U| for every F in
// `scenarios`, by one min-cut per scenario. N_arcs is the closed out-neighborhood.
SeparationResult separate_hall(const std::vector<Rational>& y, const Digraph& arcs,
                               const std::vector<Capacity>& capacities, const std::vector<VertexSet>& scenarios,
                               bool stop_at_first);

// Hall rows of LP_{k,alpha}: F ranges over the alpha-subsets of B.
SeparationResult separate_lpka(const std::vector<Rational>& y, const Digraph& gprime, const Clustering& c,
                               const std::vector<Capacity>& capacities, int alpha, bool stop_at_first = false);

// Hall rows of the plain relaxation: F ranges over all alpha-subsets of V
// and neighborhoods are taken in G itself.
SeparationResult separate_relaxed_ilp(const std::vector<Rational>& y, const Graph& g,
                                      const std::vector<Capacity>& capacities, int alpha);

// min over nonempty U of sum_{u in N(U)^L} y_u L - |U|, compared against
// alpha L. Throws InputError unless capacities are {0, L}.
SeparationResult separate_lpu(const std::vector<Rational>& y, const Graph& g, const std::vector<Capacity>& capacities,
                              int alpha);

std::vector<VertexSet> subsets_of_size(const VertexSet& pool, int size);
Digraph as_digraph(const Graph& g);

LinearProgram lpka_static_rows(const Graph& g, const Clustering& c, int k);
LinearRow lpka_cut(const HallViolation& violation, const Digraph& gprime, const std::vector<Capacity>& capacities);
LinearProgram lpu_static_rows(const Graph& g, const std::vector<Capacity>& capacities, int k);
LinearRow lpu_cut(const VertexSet& clients, const Graph& g, const std::vector<Capacity>& capacities, int alpha);

struct LpOutcome {
  bool feasible = false;
  std::vector<Rational> y;
  int rounds = 0;
};

LpOutcome solve_lpka(const Graph& g, const Digraph& gprime, const Clustering& c,
                     const std::vector<Capacity>& capacities, int k, int alpha);
LpOutcome solve_lpu(const Graph& g, const std::vector<Capacity>& capacities, int k, int alpha);

}  // namespace ftkc
