#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ftkc/bottleneck.hpp"
#include "ftkc/graph.hpp"

namespace ftkc {

struct ConservativeSolution {
  VertexSet centers;                    // S ∪ B
  VertexSet backups;                    // B
  VertexSet anchors;                    // A (first algorithm only)
  std::vector<VertexSet> anchor_backups;  // B(a) per anchor (first algorithm only)
  std::vector<int> phi0;
  std::vector<Capacity> capacities;     // capacities the reassignment may use
  int initial_stretch = 0;
  int failure_stretch = 0;
};

struct ConservativeOutcome {
  std::optional<ConservativeSolution> solution;
  std::string reason;
};

// {0,L} conservative algorithm on a connected graph: anchors at pairwise
// distance >= 7, alpha L-vertices pre-opened next to each anchor, and `alg`
// (an alpha = 0 solver with hop bound beta) on the remaining budget with the
// backups' capacities zeroed.
ConservativeOutcome algorithm1(const Graph& g, int k, const std::vector<Capacity>& capacities, int alpha,
                               const UnweightedSolver& alg);

// Clients of F \ B go to their nearest anchor's surviving backups.
std::vector<int> reassign_0L(const ConservativeSolution& sol, const VertexSet& failed, const Graph& g);

struct BackupLoop {
  VertexSet backups;
  std::vector<Capacity> capped;           // min(L_u, |V|)
  std::vector<Capacity> backup_capacity;  // L(B) after every iteration, starting at 0
};

// Grows B while some U with |U| <= alpha has L(U) > L(B ∩ N^6(U)), taking
// the largest excess (lexicographically first U on ties).
BackupLoop build_backup_loop(const Graph& g, const std::vector<Capacity>& capacities, int alpha);

// General conservative algorithm on a connected graph.
ConservativeOutcome algorithm2(const Graph& g, int k, const std::vector<Capacity>& capacities, int alpha,
                               const UnweightedSolver& alg);

struct FlowReassignment {
  std::vector<int> phi;  // phi_F
  long demand = 0;       // |phi0^{-1}(F)|
  long flow_value = 0;
  int longest_detour = 0;  // max hops between phi0(y) and its new center
};

// Routes the clients of F through the backup network: y -> phi0(y) -> B within
// six hops, hopping across failed backups through their second copies.
FlowReassignment conservative_reassign_flow(const ConservativeSolution& sol, const VertexSet& failed, const Graph& g,
                                            int alpha);

// Wraps a conservative algorithm as a per-component unweighted solver whose
// output has been checked against every scenario |F| = alpha.
UnweightedSolver conservative_solver(bool general, const UnweightedSolver& alg);

}  // namespace ftkc
