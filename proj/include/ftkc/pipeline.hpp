#pragma once

#include <string>

#include "ftkc/bottleneck.hpp"
#include "ftkc/instance.hpp"

namespace ftkc {

enum class Algorithm { cons_0l, cons_general, ft_general, ft_0l };

std::string to_string(Algorithm algorithm);
Algorithm parse_algorithm(const std::string& text);  // "cons-0l", "cons-general", "ft-general", "ft-0l"
bool is_conservative(Algorithm algorithm);

struct PipelineOptions {
  bool exact_subroutine = false;  // exact distance-1 solver in place of the LP-based subroutine
  int alpha_bound = 3;            // largest alpha the fixed-alpha algorithms accept
};

// Per-component solvers (connected graph in, distance-r solution out).
// The {0,L} one expects a graph without 0-0 edges.
UnweightedOutcome solve_ft_general_component(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities);
UnweightedOutcome solve_ft_0l_component(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities);

// Decision procedure on a whole threshold graph: preprocessing, components,
// and the per-component solver of `algorithm`.
UnweightedSolver graph_solver(Algorithm algorithm, const PipelineOptions& options = {});

// Throws InputError when `algorithm` does not accept the instance.
void check_applicable(const MetricInstance& inst, Algorithm algorithm, const PipelineOptions& options = {});

// check_applicable + sweep. Throws InfeasibleInstance when no threshold works.
SweepResult run_pipeline(const MetricInstance& inst, Algorithm algorithm, const PipelineOptions& options = {});

}  // namespace ftkc
