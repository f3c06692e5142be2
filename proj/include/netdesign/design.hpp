#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "netdesign/game.hpp"

namespace netdesign {

struct CoincidenceCheck {
  bool holds = false;
  ActionProfile x;
  double residual_orth = 0.0;  // ||G^T x||_inf
  // ||x - y||_inf against the interior social optimum; empty when
  // I + G + G^T is singular.
  std::optional<double> social_gap;
};

// x solves (I + G) x = a; holds when ||G^T x||_inf <= tol (1 + ||a||_inf)
// and x >= -kTolNonneg.
CoincidenceCheck check_coincidence(const NetworkGame& game, double tol = 1e-8);

struct DeterminantReport {
  double det = 0.0;
  bool singular = true;
  int rank = 0;
  double min_singular_value = 0.0;
  double max_singular_value = 0.0;
};

/// A coincident equilibrium with x != 0 needs det(G) = 0. Singular means
/// sigma_min <= rank_tol * sigma_max; rank counts sigma > rank_tol * sigma_max.
DeterminantReport necessary_condition_det(const AdjacencyMatrix& g,
                                          double rank_tol = 1e-10);

/// ||G - G^T||_inf <= tol, i.e. the game admits an exact potential.
bool potential_check(const AdjacencyMatrix& g, double tol = 1e-12);

struct EntryPosition {
  int row = 0;
  int col = 0;
  friend bool operator==(const EntryPosition&, const EntryPosition&) = default;
};

struct FixedEntry {
  EntryPosition pos;
  double value = 0.0;
};

// Designer's degrees of freedom: clamped entries, entries to determine, and
// everything else held at zero. Positions are zero-based and off-diagonal.
class DesignProblem {
 public:
  DesignProblem(Vector a, std::vector<FixedEntry> fixed,
                std::vector<EntryPosition> free);

  int size() const { return static_cast<int>(a_.size()); }
  const Vector& a() const { return a_; }
  const std::vector<FixedEntry>& fixed() const { return fixed_; }
  const std::vector<EntryPosition>& free() const { return free_; }

  /// G with fixed entries set and the free entries taken from free_values.
  Matrix assemble(const Vector& free_values) const;

 private:
  Vector a_;
  std::vector<FixedEntry> fixed_;
  std::vector<EntryPosition> free_;
};

struct DesignSolution {
  AdjacencyMatrix adjacency;
  ActionProfile x_star;
  Vector free_values;
  double residual_ne = 0.0;    // ||(I + G) x - a||_inf
  double residual_orth = 0.0;  // ||G^T x||_inf
  int branch_id = 0;
};

struct DesignOptions {
  int starts = 64;
  std::uint64_t seed = 0;
  double tol = 1e-8;
  double free_range = 5.0;
  // Second pass used only when the first finds nothing.
  double widened_free_range = 50.0;
  int max_newton_iters = 300;
  double distinct_threshold = 1e-4;
};

struct DesignReport {
  std::vector<DesignSolution> solutions;
  // Converged points with some x_i < -tol; kept for inspection.
  std::vector<DesignSolution> negative_solutions;
  int failed_starts = 0;
  double best_residual = 0.0;
};

// Multi-start Levenberg-Marquardt on R(x, g_free) = [(I + G) x - a; G^T x].
// Starts draw x from U[0, max(a)]^n and free entries from
// U[-free_range, free_range], each start from its own RNG stream keyed by
// (seed, start index). Solutions are canonically sorted, then deduplicated.
// Throws kNoSolutionFound (message carries the best residual) when neither
// pass yields a nonnegative solution.
DesignReport design_solve(const DesignProblem& problem,
                          const DesignOptions& options = {});

// Random symmetric G with zero diagonal and G a = 0, drawn from the null space
// of the row-sum constraints and scaled to the requested spectral norm.
// x_star = a. Throws kInfeasibleDesign when only G = 0 satisfies the
// constraints.
DesignSolution symmetric_design(const Vector& a, std::uint64_t seed,
                                double spectral_norm = 0.4);

struct PgCoincidence {
  bool holds = false;
  ActionProfile x;
  double residual = 0.0;  // ||G^T V x||_inf
};

/// Public-goods analogue: x from solve_ne_pg, holds iff ||G^T V x||_inf <= tol
/// with V = diag(1 - d). Affine gamma only.
PgCoincidence pg_coincidence(const PublicGoodsGame& game, double tol = 1e-8);

}  // namespace netdesign
