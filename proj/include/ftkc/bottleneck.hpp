#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ftkc/graph.hpp"
#include "ftkc/instance.hpp"

namespace ftkc {

// A distance-r answer on an unweighted graph: `assignment` is the initial
// (failure-free) client -> center map and `stretch` the hop bound r that
// every failure scenario respects. Conservative solvers also report the
// pre-opened backups and the bound of the initial assignment.
struct UnweightedSolution {
  VertexSet centers;
  std::vector<int> assignment;
  int stretch = 0;
  int initial_stretch = 0;
  VertexSet backups;
};

struct UnweightedOutcome {
  std::optional<UnweightedSolution> solution;  // empty: certified no distance-1 solution
  std::string reason;
};

// (G, k, alpha, capacities) -> distance-r solution or certificate.
using UnweightedSolver =
    std::function<UnweightedOutcome(const Graph&, int k, int alpha, const std::vector<Capacity>&)>;

// Thrown when the solver certifies infeasibility at every threshold.
class InfeasibleInstance : public std::runtime_error {
 public:
  InfeasibleInstance(Distance tau, std::string reason)
      : std::runtime_error(reason), tau_(std::move(tau)), reason_(std::move(reason)) {}
  const Distance& tau() const { return tau_; }
  const std::string& reason() const { return reason_; }

 private:
  Distance tau_;
  std::string reason_;
};

// Runs `solver` on each connected component with the smallest budget in
// [alpha+1, min(k, |component|)] that succeeds, then spends any leftover
// budget on component 0 first (re-solving with the larger budget), then on
// later components. Infeasible when some component has no budget or the
// minimal budgets exceed k.
UnweightedOutcome solve_components(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities,
                                   const UnweightedSolver& solver);

struct SweepResult {
  Distance tau_star;
  Graph graph;  // threshold graph at tau_star
  UnweightedSolution solution;
  int thresholds_tried = 0;
};

// First threshold (in increasing order) at which `solver` succeeds on the
// threshold graph. Throws InfeasibleInstance when it never does.
SweepResult sweep(const MetricInstance& inst, const UnweightedSolver& solver);

}  // namespace ftkc
