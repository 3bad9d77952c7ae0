#include "ftkc/bottleneck.hpp"

#include <algorithm>

#include "ftkc/errors.hpp"

namespace ftkc {

namespace {

struct ComponentRun {
  VertexSet vertices;
  Graph local;
  std::vector<Capacity> capacities;
  int budget = 0;
  UnweightedSolution solution;
};

}  // namespace

UnweightedOutcome solve_components(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities,
                                   const UnweightedSolver& solver) {
  UnweightedOutcome out;
  const auto parts = connected_components(g);
  if (static_cast<long>(parts.size()) * (alpha + 1) > k) {
    out.reason = std::to_string(parts.size()) + " components need at least " + std::to_string(alpha + 1) +
                 " centers each, budget is " + std::to_string(k);
    return out;
  }

  std::vector<ComponentRun> runs;
  int used = 0;
  for (const auto& part : parts) {
    ComponentRun run;
    run.vertices = part;
    run.local = induced_subgraph(g, part);
    for (const int v : part) run.capacities.push_back(capacities[static_cast<std::size_t>(v)]);
    const int top = std::min(k - used, static_cast<int>(part.size()));
    std::string last_reason = "component smaller than alpha + 1";
    for (int budget = alpha + 1; budget <= top; ++budget) {
      auto attempt = solver(run.local, budget, alpha, run.capacities);
      if (attempt.solution) {
        run.budget = budget;
        run.solution = std::move(*attempt.solution);
        break;
      }
      last_reason = attempt.reason;
    }
    if (run.budget == 0) {
      out.reason = "component containing vertex " + std::to_string(part.front()) + ": " + last_reason;
      return out;
    }
    used += run.budget;
    runs.push_back(std::move(run));
  }

  int leftover = k - used;
  for (auto& run : runs) {
    if (leftover == 0) break;
    const int extra = std::min(leftover, static_cast<int>(run.vertices.size()) - run.budget);
    if (extra <= 0) continue;
    auto attempt = solver(run.local, run.budget + extra, alpha, run.capacities);
    if (!attempt.solution) throw ContractViolation("solver lost feasibility when its budget grew: " + attempt.reason);
    run.budget += extra;
    run.solution = std::move(*attempt.solution);
    leftover -= extra;
  }

  UnweightedSolution merged;
  merged.assignment.assign(static_cast<std::size_t>(g.size()), -1);
  for (const auto& run : runs) {
    auto global = [&](int local) { return run.vertices[static_cast<std::size_t>(local)]; };
    for (const int c : run.solution.centers) merged.centers.push_back(global(c));
    for (const int b : run.solution.backups) merged.backups.push_back(global(b));
    for (std::size_t i = 0; i < run.vertices.size(); ++i) {
      merged.assignment[static_cast<std::size_t>(run.vertices[i])] = global(run.solution.assignment[i]);
    }
    merged.stretch = std::max(merged.stretch, run.solution.stretch);
    merged.initial_stretch = std::max(merged.initial_stretch, run.solution.initial_stretch);
  }
  std::sort(merged.centers.begin(), merged.centers.end());
  std::sort(merged.backups.begin(), merged.backups.end());
  out.solution = std::move(merged);
  return out;
}

SweepResult sweep(const MetricInstance& inst, const UnweightedSolver& solver) {
  const auto taus = inst.thresholds();
  std::string reason;
  int tried = 0;
  for (const auto& tau : taus) {
    ++tried;
    Graph g = threshold_graph(inst, tau);
    auto outcome = solver(g, inst.k(), inst.alpha(), inst.capacities());
    if (outcome.solution) return SweepResult{tau, std::move(g), std::move(*outcome.solution), tried};
    reason = outcome.reason;
  }
  throw InfeasibleInstance(taus.back(), reason);
}

}  // namespace ftkc
