#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "ftkc/errors.hpp"
#include "ftkc/instance.hpp"
#include "ftkc/oracle.hpp"
#include "ftkc/pipeline.hpp"
#include "ftkc/report.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInput = 1;
constexpr int kExitInfeasible = 2;
constexpr int kExitInternal = 3;

// Writes to a sibling temporary file first so readers never see half a document.
void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    std::cout.flush();
    return;
  }
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw ftkc::InputError("cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw ftkc::InputError("cannot write " + tmp.string());
  }
  fs::rename(tmp, target);
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ftkc::InputError("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw ftkc::InputError(path + ": " + e.what());
  }
}

std::string dump(const json& doc) { return doc.dump(2) + "\n"; }

struct SolveArgs {
  std::string alg;
  std::string input;
  std::string output;
  bool with_oracle = false;
  bool exact_subroutine = false;
  int alpha_bound = 3;
};

int run_solve(const SolveArgs& args) {
  const auto inst = ftkc::load_instance(args.input);
  const auto algorithm = ftkc::parse_algorithm(args.alg);
  ftkc::PipelineOptions options;
  options.exact_subroutine = args.exact_subroutine;
  options.alpha_bound = args.alpha_bound;
  try {
    const auto result = ftkc::run_pipeline(inst, algorithm, options);
    const auto report = ftkc::build_report(inst, algorithm, result, args.with_oracle);
    emit(dump(ftkc::report_to_json(report)), args.output);
    return report.verified ? kExitOk : kExitInternal;
  } catch (const ftkc::InfeasibleInstance& e) {
    json doc;
    doc["infeasible_at"] = e.tau().to_string();
    doc["reason"] = e.reason();
    emit(dump(doc), args.output);
    return kExitInfeasible;
  }
}

struct VerifyArgs {
  std::string input;
  std::string solution;
  std::string radius;
  std::string output;
};

int run_verify(const VerifyArgs& args) {
  const auto inst = ftkc::load_instance(args.input);
  const json sol = read_json(args.solution);
  if (!sol.contains("centers")) throw ftkc::InputError("solution needs a \"centers\" list");
  auto centers = sol.at("centers").get<std::vector<int>>();
  std::sort(centers.begin(), centers.end());
  for (const int c : centers) {
    if (c < 0 || c >= inst.size()) throw ftkc::InputError("center index out of range");
  }
  std::vector<int> phi0;
  const bool conservative = sol.contains("initial_assignment");
  if (conservative) phi0 = sol.at("initial_assignment").get<std::vector<int>>();
  ftkc::Distance radius;
  try {
    radius = ftkc::Distance::from_value(ftkc::parse_rational(args.radius));
  } catch (const std::invalid_argument&) {
    throw ftkc::InputError("bad radius '" + args.radius + "'");
  }
  const auto report = ftkc::verify_solution(inst, conservative, centers, phi0, radius);
  emit(dump(ftkc::verification_to_json(report, radius)), args.output);
  return kExitOk;
}

int run_oracle(const std::string& input, bool conservative, const std::string& output) {
  const auto inst = ftkc::load_instance(input);
  json doc;
  if (conservative) {
    const auto exact = ftkc::exact_opt_conservative(inst);
    if (!exact) throw ftkc::InfeasibleInstance(inst.thresholds().back(), "no conservative solution at any threshold");
    doc["opt"] = exact->opt.to_string();
    doc["centers"] = exact->centers;
    doc["initial_assignment"] = exact->phi0;
  } else {
    const auto exact = ftkc::exact_opt_ft(inst);
    if (!exact) throw ftkc::InfeasibleInstance(inst.thresholds().back(), "no fault-tolerant solution at any threshold");
    doc["opt"] = exact->opt.to_string();
    doc["centers"] = exact->centers;
  }
  emit(dump(doc), output);
  return kExitOk;
}

struct BenchArgs {
  std::string alg = "ft-general";
  int count = 20;
  int n = 7;
  int k = 3;
  int alpha = 1;
  std::vector<long> capacities{2, 3, 4};
  std::uint64_t seed = 1;
  bool exact_subroutine = false;
  std::string output;
};

int run_bench(const BenchArgs& args) {
  const auto algorithm = ftkc::parse_algorithm(args.alg);
  if (args.capacities.empty()) throw ftkc::InputError("bench needs at least one capacity value");
  std::mt19937_64 rng(args.seed);
  std::uniform_int_distribution<int> coord(0, 1000);
  std::uniform_int_distribution<std::size_t> pick(0, args.capacities.size() - 1);
  ftkc::PipelineOptions options;
  options.exact_subroutine = args.exact_subroutine;

  std::ostringstream lines;
  double worst = 0;
  int measured = 0;
  int infeasible = 0;
  for (int i = 0; i < args.count; ++i) {
    std::vector<ftkc::Point> points;
    std::vector<ftkc::Capacity> caps;
    for (int v = 0; v < args.n; ++v) {
      points.push_back({ftkc::Rational(coord(rng), 1000), ftkc::Rational(coord(rng), 1000)});
      caps.push_back(args.capacities[pick(rng)]);
    }
    for (auto& p : points) {
      p[0].canonicalize();
      p[1].canonicalize();
    }
    const auto inst = ftkc::MetricInstance::from_points("bench-" + std::to_string(i), points, args.k, args.alpha, caps,
                                                        ftkc::is_conservative(algorithm) ? ftkc::Variant::conservative
                                                                                        : ftkc::Variant::fault_tolerant);
    json row;
    row["instance"] = i;
    row["algorithm"] = args.alg;
    try {
      const auto result = ftkc::run_pipeline(inst, algorithm, options);
      const auto report = ftkc::build_report(inst, algorithm, result, true);
      row["tau_star"] = report.tau_star.to_string();
      row["factor"] = report.factor;
      row["verified"] = report.verified;
      row["verified_radius"] = report.verified_radius.to_string();
      if (report.opt) row["opt"] = report.opt->to_string();
      if (report.factor_observed) {
        row["factor_observed"] = *report.factor_observed;
        worst = std::max(worst, *report.factor_observed);
        ++measured;
      }
    } catch (const ftkc::InfeasibleInstance& e) {
      row["infeasible_at"] = e.tau().to_string();
      ++infeasible;
    }
    lines << row.dump() << "\n";
  }
  emit(lines.str(), args.output);
  std::cerr << "algorithm  instances  infeasible  measured  worst_factor\n"
            << args.alg << "  " << args.count << "  " << infeasible << "  " << measured << "  " << worst << "\n";
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Capacitated fault-tolerant k-center solvers, verifiers and exact oracles"};
  app.require_subcommand(1);

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Run one of the approximation algorithms");
  solve_cmd->add_option("--alg", solve.alg, "cons-0l | cons-general | ft-general | ft-0l")->required();
  solve_cmd->add_option("--input", solve.input, "instance JSON")->required();
  solve_cmd->add_option("--output", solve.output, "report path (default stdout)");
  solve_cmd->add_flag("--with-oracle", solve.with_oracle, "add the exact optimum when the oracle can run");
  solve_cmd->add_flag("--exact-subroutine", solve.exact_subroutine, "exact distance-1 subroutine inside the conservative algorithms");
  solve_cmd->add_option("--alpha-bound", solve.alpha_bound, "largest alpha for the fixed-alpha algorithms");
  std::uint64_t unused_seed = 0;
  solve_cmd->add_option("--seed", unused_seed, "accepted for symmetry with the generators");

  VerifyArgs verify;
  auto* verify_cmd = app.add_subcommand("verify", "Check a solution at a radius");
  verify_cmd->add_option("--input", verify.input)->required();
  verify_cmd->add_option("--solution", verify.solution, "JSON with centers (and initial_assignment for conservative)")->required();
  verify_cmd->add_option("--radius", verify.radius, "rational radius, e.g. 7 or 3/2")->required();
  verify_cmd->add_option("--output", verify.output);

  std::string oracle_input;
  std::string oracle_output;
  bool oracle_conservative = false;
  auto* oracle_cmd = app.add_subcommand("oracle", "Exact optimum by enumeration (small instances)");
  oracle_cmd->add_option("--input", oracle_input)->required();
  oracle_cmd->add_flag("--conservative", oracle_conservative);
  oracle_cmd->add_option("--output", oracle_output);

  int gap_s = 4;
  std::string gap_output;
  auto* gap_cmd = app.add_subcommand("gap", "Emit the integrality-gap instance");
  gap_cmd->add_option("--s", gap_s, "even s >= 2; n = s^2")->required();
  gap_cmd->add_option("--output", gap_output);

  BenchArgs bench;
  auto* bench_cmd = app.add_subcommand("bench", "Observed factors on random instances (JSON lines)");
  bench_cmd->add_option("--alg", bench.alg);
  bench_cmd->add_option("--count", bench.count);
  bench_cmd->add_option("--n", bench.n);
  bench_cmd->add_option("--k", bench.k);
  bench_cmd->add_option("--alpha", bench.alpha);
  bench_cmd->add_option("--capacities", bench.capacities)->delimiter(',');
  bench_cmd->add_option("--seed", bench.seed);
  bench_cmd->add_flag("--exact-subroutine", bench.exact_subroutine);
  bench_cmd->add_option("--output", bench.output);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitInput;
  }

  try {
    if (*solve_cmd) return run_solve(solve);
    if (*verify_cmd) return run_verify(verify);
    if (*oracle_cmd) return run_oracle(oracle_input, oracle_conservative, oracle_output);
    if (*gap_cmd) {
      emit(ftkc::serialize_instance(ftkc::gap_instance(gap_s)), gap_output);
      return kExitOk;
    }
    if (*bench_cmd) return run_bench(bench);
  } catch (const ftkc::InfeasibleInstance& e) {
    json doc;
    doc["infeasible_at"] = e.tau().to_string();
    doc["reason"] = e.reason();
    std::cout << dump(doc);
    return kExitInfeasible;
  } catch (const ftkc::InputError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ftkc::SizeLimitError& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const json::exception& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const fs::filesystem_error& e) {
    std::cerr << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const ftkc::ContractViolation& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
  return kExitInput;
}
