#pragma once

#include <string>
#include <string_view>

#include "netdesign/errors.hpp"
#include "netdesign/game.hpp"

namespace netdesign {

enum class SolutionKind {
  kInteriorNe,
  kInteriorSocial,
  kConstrainedNe,
  kConstrainedSocial,
  kPgNe,
  kPgSocial,
};

std::string_view to_string(SolutionKind kind);

// For interior and public-goods kinds, stationarity_residual is the sup-norm
// of the defining linear system's residual. For constrained kinds it is the
// sup-norm of the natural map x - proj(x - F(x)), which vanishes exactly at
// solutions of the variational inequality.
struct EquilibriumResult {
  ActionProfile x;
  SolutionKind kind = SolutionKind::kInteriorNe;
  double stationarity_residual = 0.0;
  double complementarity_residual = 0.0;
  bool interior = false;
  int iterations = 0;
};

// Raised by the iterative solvers; carries the best iterate seen.
class SolverError : public Error {
 public:
  SolverError(ErrorKind kind, const std::string& what, EquilibriumResult best)
      : Error(kind, what), best_(std::move(best)) {}

  const EquilibriumResult& best() const { return best_; }

 private:
  EquilibriumResult best_;
};

enum class ViTarget { kNe, kSocial };

struct ViOptions {
  int max_iters = 100000;
  double tol = 1e-10;
};

/// Solves (I + G) x = a. Negative entries are returned as-is with
/// interior = false.
EquilibriumResult solve_ne_interior(const NetworkGame& game);

/// Solves (I + G + G^T) y = a.
EquilibriumResult solve_social_interior(const NetworkGame& game);

// Nonnegativity-constrained equilibrium (kNe, mapping F) or social optimum
// (kSocial, mapping W) on [0, upper]^n. Projected fixed-point iteration
// x <- proj(x - eta * map(x)) with eta = 1/(1 + ||G||_inf) (ne) or
// 1/(1 + 2||G||_inf) (social); a step is rejected and eta halved whenever the
// natural residual fails to decrease. Once the iterate is close, the active
// set it identifies is solved exactly and accepted if it satisfies the KKT
// conditions to tol.
EquilibriumResult solve_vi(const NetworkGame& game, ViTarget which,
                           const ActionProfile& x0, const ViOptions& options = {});

/// Natural-map residual ||x - proj(x - map(x))||_inf on the game's action set.
double natural_residual(const NetworkGame& game, ViTarget which,
                        const ActionProfile& x);

// Public-goods equilibrium (I + G) x = gamma(theta + G x). Affine gamma is
// solved directly as (I + (I - D) G) x = c + d .* theta; custom gamma iterates
// x <- (I + G)^{-1} gamma(theta + G x) and throws kNoConvergence.
EquilibriumResult solve_ne_pg(const PublicGoodsGame& game, double tol = 1e-10,
                              int max_iters = 10000);

// Public-goods social optimum for affine gamma:
// (I + (I - D) G + G^T V) y = c + d .* theta, V = diag(1 - d).
EquilibriumResult solve_social_pg(const PublicGoodsGame& game);

}  // namespace netdesign
