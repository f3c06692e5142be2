#include "netdesign/random_networks.hpp"

#include <random>
#include <sstream>

#include "netdesign/design.hpp"
#include "netdesign/errors.hpp"
#include "netdesign/format.hpp"

namespace netdesign {

void validate(const ErConfig& config) {
  if (config.n < 1) throw Error(ErrorKind::kInvalidArgument, "n must be >= 1");
  if (!(config.p > 0.0 && config.p < 1.0)) {
    throw Error(ErrorKind::kInvalidArgument, "p must lie in (0, 1)");
  }
  if (config.samples < 1) {
    throw Error(ErrorKind::kInvalidArgument, "samples must be >= 1");
  }
  if (const auto* u = std::get_if<UniformWeights>(&config.weights)) {
    if (!(u->lo < u->hi)) throw Error(ErrorKind::kInvalidArgument, "uniform needs lo < hi");
  }
  if (const auto* g = std::get_if<GaussianWeights>(&config.weights)) {
    if (!(g->sigma > 0.0)) throw Error(ErrorKind::kInvalidArgument, "gaussian needs sigma > 0");
  }
}

AdjacencyMatrix sample_er_one(const ErConfig& config, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(config.seed),
                    static_cast<std::uint32_t>(config.seed >> 32),
                    static_cast<std::uint32_t>(index)};
  std::mt19937_64 rng(seq);
  std::uniform_real_distribution<double> coin(0.0, 1.0);

  auto weight = [&]() {
    return std::visit(
        [&](const auto& law) -> double {
          using T = std::decay_t<decltype(law)>;
          if constexpr (std::is_same_v<T, UnitWeights>) {
            return 1.0;
          } else if constexpr (std::is_same_v<T, UniformWeights>) {
            return std::uniform_real_distribution<double>(law.lo, law.hi)(rng);
          } else {
            return std::normal_distribution<double>(law.mu, law.sigma)(rng);
          }
        },
        config.weights);
  };

  const int n = config.n;
  Matrix g = Matrix::Zero(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = config.directed ? 0 : i + 1; j < n; ++j) {
      if (i == j) continue;
      if (coin(rng) < config.p) {
        const double w = weight();
        g(i, j) = w;
        if (!config.directed) g(j, i) = w;
      }
    }
  }
  return AdjacencyMatrix(std::move(g));
}

void for_each_er_sample(const ErConfig& config,
                        const std::function<void(int, const AdjacencyMatrix&)>& visit) {
  validate(config);
  for (int s = 0; s < config.samples; ++s) visit(s, sample_er_one(config, s));
}

std::vector<AdjacencyMatrix> sample_er(const ErConfig& config) {
  std::vector<AdjacencyMatrix> out;
  for_each_er_sample(config, [&](int, const AdjacencyMatrix& g) { out.push_back(g); });
  return out;
}

SingularityStats singularity_stats(const ErConfig& config, double rank_tol) {
  int singular = 0;
  double min_sv_sum = 0.0;
  for_each_er_sample(config, [&](int, const AdjacencyMatrix& g) {
    const Vector sv = singular_values(g.matrix());
    const double smallest = sv(sv.size() - 1);
    if (smallest <= rank_tol * sv(0)) ++singular;
    min_sv_sum += smallest;
  });
  SingularityStats out;
  out.fraction_singular = static_cast<double>(singular) / config.samples;
  out.mean_min_sv = min_sv_sum / config.samples;
  return out;
}

CoincidenceScan coincidence_feasibility_scan(const ErConfig& config, const Vector& a,
                                             double tol, double rank_tol) {
  if (a.size() != config.n) {
    throw Error(ErrorKind::kDimensionMismatch, "a length does not match n");
  }
  CoincidenceScan scan;
  for_each_er_sample(config, [&](int, const AdjacencyMatrix& g) {
    ++scan.tested;
    if (necessary_condition_det(g, rank_tol).singular) ++scan.singular;
    try {
      if (check_coincidence(NetworkGame(g, a), tol).holds) ++scan.coincident;
    } catch (const Error& e) {
      if (e.kind() != ErrorKind::kSingularSystem) throw;
    }
  });
  return scan;
}

std::string random_stats_csv(const ErConfig& config, const SingularityStats& stats,
                             const CoincidenceScan& scan) {
  std::ostringstream out;
  out << "n,p,samples,fraction_singular,mean_min_sv,coincident\n"
      << config.n << ',' << format_number(config.p) << ',' << config.samples << ','
      << format_number(stats.fraction_singular) << ','
      << format_number(stats.mean_min_sv) << ',' << scan.coincident << '\n';
  return out.str();
}

}  // namespace netdesign
