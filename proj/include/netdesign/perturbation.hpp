#pragma once

#include <optional>
#include <string>
#include <vector>

#include "netdesign/game.hpp"

namespace netdesign {

enum class SweepSolver { kInterior, kConstrained };

// Family of games G(delta) = G + delta * pattern over an increasing grid.
struct SweepConfig {
  NetworkGame base_game;
  Matrix delta_pattern;
  std::vector<double> delta_grid;
  SweepSolver solver = SweepSolver::kInterior;
};

/// `points` evenly spaced values from `from` to `to` inclusive.
std::vector<double> linear_grid(double from, double to, int points);

struct SweepRow {
  double delta = 0.0;
  ActionProfile x;  // empty when singular
  double social_cost = 0.0;
  // False when the interior solve has a negative component or the system is
  // singular. Constrained rows are feasible unless the solver failed.
  bool feasible = false;
  bool singular = false;
  double min_x = 0.0;
  double spectral_margin = 0.0;  // 1 - ||G(delta)||_2
  double rowsum_margin = 0.0;    // 1 - ||G(delta)||_inf
};

struct SweepReport {
  std::vector<SweepRow> rows;  // ordered by delta
  // Max over adjacent feasible pairs of ||dx||_2 / ||dG||_2 and
  // |dC| / ||dG||_2; zero when no pair qualifies.
  double lipschitz_x = 0.0;
  double lipschitz_cost = 0.0;
  // max ||x||_2 over the action set when it is bounded, otherwise over the
  // computed equilibria.
  double delta_cap = 0.0;
};

// Never aborts on an infeasible or singular grid point; such rows are marked.
SweepReport sweep(const SweepConfig& config);

struct LipschitzCheck {
  bool bounded = false;
  double max_ratio = 0.0;
};

/// bounded = (lipschitz_cost <= k_cap * delta_cap). Throws kInsufficientData
/// when the report has fewer than two feasible rows.
LipschitzCheck lipschitz_check(const SweepReport& report, double k_cap);

// Largest |C(delta_{k+1}) - C(delta_k)| over adjacent feasible rows whose
// deltas lie in [lo, hi].
double max_adjacent_cost_jump(const SweepReport& report, double lo, double hi);

// Endpoints of the maximal run of feasible rows containing the row closest to
// `anchor`; empty if that row is infeasible.
std::optional<std::pair<double, double>> feasible_interval(const SweepReport& report,
                                                           double anchor);

/// CSV with header delta,social_cost,feasible,min_x,spectral_margin.
std::string sweep_csv(const SweepReport& report);

}  // namespace netdesign
