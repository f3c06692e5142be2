#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <variant>
#include <vector>

#include "netdesign/game.hpp"

namespace netdesign {

struct UnitWeights {};
struct UniformWeights {
  double lo = 0.0;
  double hi = 1.0;
};
struct GaussianWeights {
  double mu = 0.0;
  double sigma = 1.0;
};
using WeightLaw = std::variant<UnitWeights, UniformWeights, GaussianWeights>;

// Erdos-Renyi G(n, p): each off-diagonal entry (each unordered pair when
// undirected) is present with probability p and weighted per the law.
struct ErConfig {
  int n = 10;
  double p = 0.5;
  WeightLaw weights = UnitWeights{};
  bool directed = false;
  int samples = 1;
  std::uint64_t seed = 0;
};

void validate(const ErConfig& config);

// Sample `index` depends only on (seed, index), so any evaluation order
// reproduces the same matrices.
AdjacencyMatrix sample_er_one(const ErConfig& config, int index);

/// Calls `visit` on every sample in index order.
void for_each_er_sample(const ErConfig& config,
                        const std::function<void(int, const AdjacencyMatrix&)>& visit);

std::vector<AdjacencyMatrix> sample_er(const ErConfig& config);

struct SingularityStats {
  double fraction_singular = 0.0;
  double mean_min_sv = 0.0;
};

SingularityStats singularity_stats(const ErConfig& config, double rank_tol = 1e-10);

struct CoincidenceScan {
  int tested = 0;
  int singular = 0;
  int coincident = 0;
};

// Per sample: singularity at rank_tol, and check_coincidence(G, a, tol). A
// singular I + G counts as not coincident.
CoincidenceScan coincidence_feasibility_scan(const ErConfig& config, const Vector& a,
                                             double tol = 1e-8,
                                             double rank_tol = 1e-10);

/// Header n,p,samples,fraction_singular,mean_min_sv,coincident plus one row.
std::string random_stats_csv(const ErConfig& config, const SingularityStats& stats,
                             const CoincidenceScan& scan);

}  // namespace netdesign
