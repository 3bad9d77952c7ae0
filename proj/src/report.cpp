#include "ftkc/report.hpp"

#include "ftkc/errors.hpp"

namespace ftkc {

VerificationReport verify_solution(const MetricInstance& inst, bool conservative, const VertexSet& centers,
                                   const std::vector<int>& phi0, const Distance& radius) {
  if (centers.size() > static_cast<std::size_t>(inst.k())) {
    VerificationReport report;
    report.pass = false;
    report.failure = "more than k centers";
    return report;
  }
  return conservative ? verify_conservative(inst, centers, phi0, radius) : verify_ft(inst, centers, radius);
}

SolveReport build_report(const MetricInstance& inst, Algorithm algorithm, const SweepResult& result,
                         bool with_oracle) {
  const bool conservative = is_conservative(algorithm);
  SolveReport report;
  report.algorithm = algorithm;
  report.tau_star = result.tau_star;
  report.factor = result.solution.stretch;
  report.radius_bound = result.tau_star.scaled(report.factor);
  report.centers = result.solution.centers;
  if (conservative) report.initial_assignment = result.solution.assignment;
  report.thresholds_tried = result.thresholds_tried;

  auto passes = [&](const Distance& r) {
    return verify_solution(inst, conservative, report.centers, result.solution.assignment, r).pass;
  };
  report.verified = passes(report.radius_bound);
  report.verified_radius = report.radius_bound;
  if (report.verified) {
    // Verification is monotone in the radius; the pairs within any radius
    // are those within the largest threshold not above it.
    std::vector<Distance> below;
    for (const auto& tau : inst.thresholds()) {
      if (tau <= report.radius_bound) below.push_back(tau);
    }
    std::size_t lo = 0;
    std::size_t hi = below.size() - 1;
    while (lo < hi) {
      const std::size_t mid = (lo + hi) / 2;
      if (passes(below[mid])) {
        hi = mid;
      } else {
        lo = mid + 1;
      }
    }
    report.verified_radius = below[lo];
  }

  if (with_oracle) {
    try {
      if (conservative) {
        if (auto exact = exact_opt_conservative(inst)) report.opt = exact->opt;
      } else if (auto exact = exact_opt_ft(inst)) {
        report.opt = exact->opt;
      }
    } catch (const SizeLimitError&) {
      // Beyond the oracle's reach: the report simply carries no optimum.
    }
    if (report.opt && report.opt->squared() > 0) {
      report.factor_observed = report.verified_radius.to_double() / report.opt->to_double();
    }
  }
  return report;
}

nlohmann::json report_to_json(const SolveReport& report) {
  nlohmann::json doc;
  doc["algorithm"] = to_string(report.algorithm);
  doc["tau_star"] = report.tau_star.to_string();
  doc["factor"] = report.factor;
  doc["radius_bound"] = report.radius_bound.to_string();
  doc["centers"] = report.centers;
  if (report.algorithm == Algorithm::cons_0l || report.algorithm == Algorithm::cons_general) {
    doc["initial_assignment"] = report.initial_assignment;
  }
  doc["verified"] = report.verified;
  doc["verified_radius"] = report.verified_radius.to_string();
  if (report.opt) doc["opt"] = report.opt->to_string();
  if (report.factor_observed) doc["factor_observed"] = *report.factor_observed;
  doc["thresholds_tried"] = report.thresholds_tried;
  return doc;
}

nlohmann::json verification_to_json(const VerificationReport& report, const Distance& radius) {
  nlohmann::json doc;
  doc["radius_checked"] = radius.to_string();
  doc["scenarios_checked"] = report.scenarios_checked;
  doc["pass"] = report.pass;
  if (!report.pass) {
    nlohmann::json failure;
    failure["reason"] = report.failure;
    failure["witness"] = report.witness;
    if (report.failed_scenario) failure["failed"] = *report.failed_scenario;
    doc["first_failure"] = failure;
  }
  return doc;
}

}  // namespace ftkc
