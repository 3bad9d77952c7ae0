#include "ftkc/pipeline.hpp"

#include "ftkc/clustering.hpp"
#include "ftkc/conservative.hpp"
#include "ftkc/errors.hpp"
#include "ftkc/lp.hpp"
#include "ftkc/oracle.hpp"
#include "ftkc/rounding.hpp"

namespace ftkc {

namespace {

UnweightedOutcome infeasible(std::string reason) { return UnweightedOutcome{std::nullopt, std::move(reason)}; }

UnweightedOutcome exact_distance_one(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities) {
  return exact_unweighted(g, k, alpha, capacities, 1);
}

// {0,L} subroutine on any graph: drop 0-0 edges, then solve per component.
UnweightedOutcome solve_ft_0l_graph(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities) {
  return solve_components(strip_zero_zero_edges(g, capacities), k, alpha, capacities, solve_ft_0l_component);
}

}  // namespace

std::string to_string(Algorithm algorithm) {
  switch (algorithm) {
    case Algorithm::cons_0l:
      return "cons-0l";
    case Algorithm::cons_general:
      return "cons-general";
    case Algorithm::ft_general:
      return "ft-general";
    case Algorithm::ft_0l:
      return "ft-0l";
  }
  return "?";
}

Algorithm parse_algorithm(const std::string& text) {
  for (const auto a : {Algorithm::cons_0l, Algorithm::cons_general, Algorithm::ft_general, Algorithm::ft_0l}) {
    if (to_string(a) == text) return a;
  }
  throw InputError("unknown algorithm '" + text + "'");
}

bool is_conservative(Algorithm algorithm) {
  return algorithm == Algorithm::cons_0l || algorithm == Algorithm::cons_general;
}

UnweightedOutcome solve_ft_general_component(const Graph& g, int k, int alpha,
                                             const std::vector<Capacity>& capacities) {
  auto selection = select_backups(monarch_clustering(g), capacities, alpha);
  if (!selection.clustering) return infeasible(selection.reason);
  const Clustering& c = *selection.clustering;
  const Digraph gprime = build_gprime(g, c);
  const auto lp = solve_lpka(g, gprime, c, capacities, k, alpha);
  if (!lp.feasible) return infeasible("LP_{k,alpha} is infeasible with k = " + std::to_string(k));

  const auto rounding = round_general(lp.y, g, c, capacities);
  UnweightedSolution sol;
  sol.centers = rounding.centers;
  sol.backups = c.all_backups;
  sol.stretch = alpha == 0 ? 9 : 10;
  sol.initial_stretch = sol.stretch;
  sol.assignment = assign_scenario_general(rounding, {}, g, gprime, c, capacities, alpha);
  for (const auto& failed : subsets_of_size(rounding.centers, alpha)) {
    assign_scenario_general(rounding, failed, g, gprime, c, capacities, alpha);
  }
  return UnweightedOutcome{std::move(sol), {}};
}

UnweightedOutcome solve_ft_0l_component(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities) {
  if (!uniform_capacity(capacities)) return infeasible("component has no capacity");
  const auto lp = solve_lpu(g, capacities, k, alpha);
  if (!lp.feasible) return infeasible("LPU is infeasible with k = " + std::to_string(k));
  UnweightedSolution sol;
  sol.centers = round_uniform(lp.y, g, capacities);
  sol.stretch = 6;
  sol.initial_stretch = 6;
  sol.assignment = assign_scenario_uniform(sol.centers, {}, g, capacities);
  for (const auto& failed : subsets_of_size(sol.centers, alpha)) {
    assign_scenario_uniform(sol.centers, failed, g, capacities);
  }
  return UnweightedOutcome{std::move(sol), {}};
}

UnweightedSolver graph_solver(Algorithm algorithm, const PipelineOptions& options) {
  const bool exact = options.exact_subroutine;
  switch (algorithm) {
    case Algorithm::ft_general:
      return [](const Graph& g, int k, int alpha, const std::vector<Capacity>& caps) {
        return solve_components(g, k, alpha, caps, solve_ft_general_component);
      };
    case Algorithm::ft_0l:
      return solve_ft_0l_graph;
    case Algorithm::cons_0l: {
      const UnweightedSolver alg = exact ? UnweightedSolver(exact_distance_one) : UnweightedSolver(solve_ft_0l_graph);
      const auto per_component = conservative_solver(false, alg);
      return [per_component](const Graph& g, int k, int alpha, const std::vector<Capacity>& caps) {
        return solve_components(g, k, alpha, caps, per_component);
      };
    }
    case Algorithm::cons_general: {
      const UnweightedSolver alg =
          exact ? UnweightedSolver(exact_distance_one) : UnweightedSolver(solve_ft_general_component);
      const auto per_component = conservative_solver(true, alg);
      return [per_component](const Graph& g, int k, int alpha, const std::vector<Capacity>& caps) {
        return solve_components(g, k, alpha, caps, per_component);
      };
    }
  }
  throw InputError("unknown algorithm");
}

void check_applicable(const MetricInstance& inst, Algorithm algorithm, const PipelineOptions& options) {
  const bool zero_l = algorithm == Algorithm::cons_0l || algorithm == Algorithm::ft_0l;
  if (zero_l && !uniform_capacity(inst.capacities())) {
    throw InputError(to_string(algorithm) + " needs {0,L} capacities with one L > 0");
  }
  const bool fixed_alpha = algorithm == Algorithm::cons_general || algorithm == Algorithm::ft_general;
  if (fixed_alpha && inst.alpha() > options.alpha_bound) {
    throw InputError(to_string(algorithm) + " enumerates alpha-subsets; alpha = " + std::to_string(inst.alpha()) +
                     " exceeds the bound " + std::to_string(options.alpha_bound));
  }
}

SweepResult run_pipeline(const MetricInstance& inst, Algorithm algorithm, const PipelineOptions& options) {
  check_applicable(inst, algorithm, options);
  return sweep(inst, graph_solver(algorithm, options));
}

}  // namespace ftkc
