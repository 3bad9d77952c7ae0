#pragma once

#include <vector>

#include "ftkc/clustering.hpp"
#include "ftkc/graph.hpp"
#include "ftkc/rational.hpp"

namespace ftkc {

struct TransferCheck {
  bool ok = true;
  char condition = 0;  // 'a', 'b' or 'c' when failing
  VertexSet witness;   // U for condition (b), offending vertices for (c)
};

// Checks that y' is an H-restricted distance-r transfer of y, where H is the
// host graph restricted to the vertex set `w` and `protected_set` is B.
// Condition (b) is decided exhaustively when |W| <= 14 and by a
// transportation flow otherwise.
TransferCheck verify_transfer(const std::vector<Rational>& y, const std::vector<Rational>& yp, const Graph& host,
                              const VertexSet& w, int r, const VertexSet& protected_set,
                              const std::vector<Capacity>& capacities);
// W = every vertex of the host.
TransferCheck verify_transfer(const std::vector<Rational>& y, const std::vector<Rational>& yp, const Graph& host,
                              int r, const VertexSet& protected_set, const std::vector<Capacity>& capacities);

TransferCheck check_condition_b_exhaustive(const std::vector<Rational>& y, const std::vector<Rational>& yp,
                                           const Graph& host, const VertexSet& w, int r,
                                           const VertexSet& protected_set, const std::vector<Capacity>& capacities);
TransferCheck check_condition_b_flow(const std::vector<Rational>& y, const std::vector<Rational>& yp,
                                     const Graph& host, const VertexSet& w, int r, const VertexSet& protected_set,
                                     const std::vector<Capacity>& capacities);

std::vector<Rational> indicator(const VertexSet& set, int size);

// Integral T-restricted distance-2 transfer of y. `forced` (the internal
// nodes) must already be fully open and stays open. Throws ContractViolation
// when no integral transfer exists.
std::vector<Rational> tree_transfer(const Graph& tree, const VertexSet& w, const VertexSet& forced,
                                    const std::vector<Rational>& y, const std::vector<Capacity>& capacities,
                                    const VertexSet& protected_set);

struct GeneralRounding {
  VertexSet centers;                // R, |R| = k, B ⊆ R
  AuxiliaryGraph aux;
  std::vector<Rational> y1;         // after step 1, on V plus auxiliaries
  Graph tree;                       // step-2 tree, on V plus auxiliaries
  VertexSet tree_nodes;             // W of the tree transfer
  VertexSet opened_extended;        // R before auxiliaries are moved back
};

GeneralRounding round_general(const std::vector<Rational>& y, const Graph& g, const Clustering& c,
                              const std::vector<Capacity>& capacities);

// phi: V -> R \ F for F ⊆ B with |F| = alpha. Guarantees d(u, phi(u)) <= 9
// and d(u, δ(phi(u))) <= 8; throws ContractViolation otherwise.
std::vector<int> assign_scenario_B(const GeneralRounding& rounding, const VertexSet& failed, const Graph& g,
                                   const Digraph& gprime, const Clustering& c,
                                   const std::vector<Capacity>& capacities);

// phi: V -> R \ F for any F ⊆ R with |F| <= alpha, within distance 10.
std::vector<int> assign_scenario_general(const GeneralRounding& rounding, const VertexSet& failed, const Graph& g,
                                         const Digraph& gprime, const Clustering& c,
                                         const std::vector<Capacity>& capacities, int alpha);

// Integral distance-5 transfer of an LPU point on a graph without 0-0 edges:
// k vertices, L-vertices first. Throws ContractViolation when none exists.
VertexSet round_uniform(const std::vector<Rational>& y, const Graph& stripped,
                        const std::vector<Capacity>& capacities);

// phi: V -> R \ F with every client within `radius` hops, capacity L per center.
std::vector<int> assign_scenario_uniform(const VertexSet& centers, const VertexSet& failed, const Graph& stripped,
                                         const std::vector<Capacity>& capacities, int radius = 6);

}  // namespace ftkc
