#pragma once

#include <optional>
#include <vector>

#include <json.hpp>

#include "ftkc/bottleneck.hpp"
#include "ftkc/instance.hpp"
#include "ftkc/oracle.hpp"
#include "ftkc/pipeline.hpp"

namespace ftkc {

struct SolveReport {
  Algorithm algorithm = Algorithm::ft_general;
  Distance tau_star;
  int factor = 0;
  Distance radius_bound;  // factor * tau_star
  VertexSet centers;
  std::vector<int> initial_assignment;  // conservative algorithms only
  bool verified = false;
  Distance verified_radius;  // smallest threshold at which the solution verifies
  std::optional<Distance> opt;
  std::optional<double> factor_observed;
  int thresholds_tried = 0;
};

// Verifies the solution with the verifier matching the algorithm's variant.
VerificationReport verify_solution(const MetricInstance& inst, bool conservative, const VertexSet& centers,
                                   const std::vector<int>& phi0, const Distance& radius);

// Re-verifies the sweep result at factor * tau_star, searches the smallest
// passing threshold, and (when asked and within the oracle's bounds) adds
// the exact optimum.
SolveReport build_report(const MetricInstance& inst, Algorithm algorithm, const SweepResult& result,
                         bool with_oracle);

// Distances as exact strings, factor_observed as a float.
nlohmann::json report_to_json(const SolveReport& report);
nlohmann::json verification_to_json(const VerificationReport& report, const Distance& radius);

}  // namespace ftkc
