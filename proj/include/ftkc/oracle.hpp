#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ftkc/bottleneck.hpp"
#include "ftkc/graph.hpp"
#include "ftkc/instance.hpp"

namespace ftkc {

struct VerificationReport {
  long scenarios_checked = 0;
  bool pass = true;
  std::optional<VertexSet> failed_scenario;  // first failing F, lexicographic
  VertexSet witness;                         // Hall-violating clients, or offending vertices
  std::string failure;
};

// within(client, center): the pair is close enough at the radius under test.
using Reach = std::function<bool(int, int)>;

// Every F subset of S with |F| = alpha (lexicographic) admits a capacitated
// assignment of all n clients into S \ F along `within`. Smaller F are implied.
VerificationReport check_fault_tolerant(int n, const std::vector<Capacity>& capacities, const VertexSet& centers,
                                        int alpha, const Reach& within);

// phi0 stays within reach and capacity, and for every F the clients of F fit
// into the residual capacity of S \ F along `within`.
VerificationReport check_conservative(int n, const std::vector<Capacity>& capacities, const VertexSet& centers,
                                      const std::vector<int>& phi0, int alpha, const Reach& within);

VerificationReport verify_ft(const MetricInstance& inst, const VertexSet& centers, const Distance& radius);
VerificationReport verify_conservative(const MetricInstance& inst, const VertexSet& centers,
                                       const std::vector<int>& phi0, const Distance& radius);
VerificationReport verify_ft_hops(const Graph& g, const std::vector<Capacity>& capacities, const VertexSet& centers,
                                  int alpha, int radius);
VerificationReport verify_conservative_hops(const Graph& g, const std::vector<Capacity>& capacities,
                                            const VertexSet& centers, const std::vector<int>& phi0, int alpha,
                                            int radius);

struct OracleLimits {
  int max_n = 10;
  int max_k = 10;
  int max_alpha = 3;
};

struct ExactFt {
  Distance opt;
  VertexSet centers;
};

// Smallest threshold admitting k centers that pass verify_ft; nullopt when
// even the largest threshold fails. Throws SizeLimitError past `limits`.
std::optional<ExactFt> exact_opt_ft(const MetricInstance& inst, OracleLimits limits = {});

struct ExactConservative {
  Distance opt;
  VertexSet centers;
  std::vector<int> phi0;
};

inline constexpr OracleLimits kConservativeLimits{8, 4, 2};

std::optional<ExactConservative> exact_opt_conservative(const MetricInstance& inst,
                                                        OracleLimits limits = kConservativeLimits);

// Exhaustive distance-`radius` solver on an unweighted graph: the first
// k-subset (lexicographic) passing every |F| = alpha scenario.
UnweightedOutcome exact_unweighted(const Graph& g, int k, int alpha, const std::vector<Capacity>& capacities,
                                   int radius = 1);

// Cycle on n = s^2 vertices with d(u, v) = ceil(cycle hops / s); L = n,
// k = s, alpha = s - 1. At threshold 1 this is the cycle with chords of
// length up to s.
MetricInstance gap_instance(int s);

}  // namespace ftkc
