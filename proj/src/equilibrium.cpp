#include "netdesign/equilibrium.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <vector>

namespace netdesign {

std::string_view to_string(SolutionKind kind) {
  switch (kind) {
    case SolutionKind::kInteriorNe: return "interior-ne";
    case SolutionKind::kInteriorSocial: return "interior-social";
    case SolutionKind::kConstrainedNe: return "constrained-ne";
    case SolutionKind::kConstrainedSocial: return "constrained-social";
    case SolutionKind::kPgNe: return "pg-ne";
    case SolutionKind::kPgSocial: return "pg-social";
  }
  return "unknown";
}

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

bool all_interior(const Vector& x) {
  return x.size() == 0 || x.minCoeff() > kTolNonneg;
}

// Dense solve followed by one step of iterative refinement.
Vector refined_solve(const Matrix& m, const Vector& rhs, const char* what) {
  Vector x = solve_dense(m, rhs, what);
  const Vector r = rhs - m * x;
  if (r.size() > 0 && inf_norm(r) > 0.0) {
    Eigen::PartialPivLU<Matrix> lu(m);
    x += lu.solve(r);
  }
  return x;
}

EquilibriumResult linear_result(const Matrix& m, const Vector& rhs,
                                SolutionKind kind, const char* what) {
  EquilibriumResult out;
  out.kind = kind;
  out.x = refined_solve(m, rhs, what);
  out.stationarity_residual = inf_norm(Vector(m * out.x - rhs));
  out.complementarity_residual = 0.0;
  out.interior = all_interior(out.x);
  return out;
}

// Affine map x -> m x - a on the box [0, upper].
struct AffineVi {
  Matrix m;
  Vector a;
  Vector upper;  // +inf where unbounded

  int size() const { return static_cast<int>(a.size()); }
  Vector map(const Vector& x) const { return m * x - a; }

  Vector project(const Vector& x) const {
    return x.cwiseMax(0.0).cwiseMin(upper);
  }

  double natural_residual(const Vector& x, const Vector& f) const {
    return inf_norm(Vector(x - project(x - f)));
  }

  double complementarity(const Vector& x, const Vector& f) const {
    double worst = 0.0;
    for (int i = 0; i < size(); ++i) {
      const double slack = std::min(std::abs(x(i)), std::abs(upper(i) - x(i)));
      worst = std::max(worst, slack * std::abs(f(i)));
    }
    return worst;
  }
};

AffineVi make_vi(const NetworkGame& game, ViTarget which) {
  const int n = game.size();
  AffineVi vi;
  vi.m = Matrix::Identity(n, n) + game.g();
  if (which == ViTarget::kSocial) vi.m += game.g().transpose();
  vi.a = game.a();
  vi.upper = game.upper() ? *game.upper() : Vector::Constant(n, kInf);
  return vi;
}

// Solves the linear system restricted to the components the current iterate
// leaves off their bounds; returns the candidate if it satisfies KKT to tol.
std::optional<Vector> polish_active_set(const AffineVi& vi, const Vector& x,
                                        const Vector& f, double tol) {
  const int n = vi.size();
  Vector candidate = Vector::Zero(n);
  std::vector<int> free_idx;
  for (int i = 0; i < n; ++i) {
    const double step = x(i) - f(i);
    if (step <= 0.0) {
      candidate(i) = 0.0;
    } else if (step >= vi.upper(i)) {
      candidate(i) = vi.upper(i);
    } else {
      free_idx.push_back(i);
    }
  }
  const int k = static_cast<int>(free_idx.size());
  if (k > 0) {
    Matrix mff(k, k);
    Vector rhs(k);
    for (int r = 0; r < k; ++r) {
      const int i = free_idx[r];
      double bound_part = 0.0;
      for (int j = 0; j < n; ++j) {
        if (candidate(j) != 0.0) bound_part += vi.m(i, j) * candidate(j);
      }
      rhs(r) = vi.a(i) - bound_part;
      for (int c = 0; c < k; ++c) mff(r, c) = vi.m(i, free_idx[c]);
    }
    Eigen::PartialPivLU<Matrix> lu(mff);
    if (!(lu.rcond() >= kMinReciprocalCondition)) return std::nullopt;
    const Vector xf = lu.solve(rhs);
    for (int r = 0; r < k; ++r) candidate(free_idx[r]) = xf(r);
  }
  if (!candidate.allFinite()) return std::nullopt;
  if ((candidate.array() < -tol).any() ||
      (candidate.array() > vi.upper.array() + tol).any()) {
    return std::nullopt;
  }
  candidate = vi.project(candidate);
  const Vector fc = vi.map(candidate);
  if (vi.natural_residual(candidate, fc) > tol) return std::nullopt;
  if (vi.complementarity(candidate, fc) > tol) return std::nullopt;
  return candidate;
}

// Least-index principal pivoting on the box LCP, each component at its lower
// bound (0), free (1) or at its upper bound (2). Finite when m is a P-matrix;
// otherwise gives up after max_pivots linear solves.
std::optional<Vector> principal_pivot(const AffineVi& vi, std::vector<char> state,
                                      int max_pivots, double tol, int& pivots) {
  const int n = vi.size();
  for (pivots = 0; pivots < max_pivots; ++pivots) {
    Vector x = Vector::Zero(n);
    std::vector<int> free_idx;
    for (int i = 0; i < n; ++i) {
      if (state[i] == 2) x(i) = vi.upper(i);
      if (state[i] == 1) free_idx.push_back(i);
    }
    const int k = static_cast<int>(free_idx.size());
    if (k > 0) {
      const Vector rhs_full = vi.a - vi.m * x;
      Matrix mff(k, k);
      Vector rhs(k);
      for (int r = 0; r < k; ++r) {
        rhs(r) = rhs_full(free_idx[r]);
        for (int c = 0; c < k; ++c) mff(r, c) = vi.m(free_idx[r], free_idx[c]);
      }
      Eigen::PartialPivLU<Matrix> lu(mff);
      if (!(lu.rcond() >= kMinReciprocalCondition)) return std::nullopt;
      const Vector xf = lu.solve(rhs);
      for (int r = 0; r < k; ++r) x(free_idx[r]) = xf(r);
    }
    if (!x.allFinite()) return std::nullopt;
    const Vector f = vi.map(x);
    int flip = -1;
    for (int i = 0; i < n && flip < 0; ++i) {
      const bool bad = (state[i] == 0 && f(i) < -tol) || (state[i] == 2 && f(i) > tol) ||
                       (state[i] == 1 && (x(i) < -tol || x(i) > vi.upper(i) + tol));
      if (bad) flip = i;
    }
    if (flip < 0) return vi.project(x);
    if (state[flip] != 1) {
      state[flip] = 1;
    } else {
      state[flip] = x(flip) < 0.0 ? 0 : 2;
    }
  }
  return std::nullopt;
}

EquilibriumResult vi_result(const AffineVi& vi, const Vector& x, ViTarget which,
                            int iterations) {
  const Vector f = vi.map(x);
  EquilibriumResult out;
  out.x = x;
  out.kind = which == ViTarget::kNe ? SolutionKind::kConstrainedNe
                                    : SolutionKind::kConstrainedSocial;
  out.stationarity_residual = vi.natural_residual(x, f);
  out.complementarity_residual = vi.complementarity(x, f);
  out.interior = all_interior(x);
  out.iterations = iterations;
  return out;
}

// Polishing is only attempted once the iterate is this close.
constexpr double kPolishThreshold = 1e-2;

}  // namespace

EquilibriumResult solve_ne_interior(const NetworkGame& game) {
  const int n = game.size();
  return linear_result(Matrix::Identity(n, n) + game.g(), game.a(),
                       SolutionKind::kInteriorNe, "I + G");
}

EquilibriumResult solve_social_interior(const NetworkGame& game) {
  const int n = game.size();
  const Matrix m = Matrix::Identity(n, n) + game.g() + game.g().transpose();
  return linear_result(m, game.a(), SolutionKind::kInteriorSocial,
                       "I + G + G^T");
}

double natural_residual(const NetworkGame& game, ViTarget which,
                        const ActionProfile& x) {
  const AffineVi vi = make_vi(game, which);
  if (x.size() != vi.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "action profile length mismatch");
  }
  return vi.natural_residual(x, vi.map(x));
}

EquilibriumResult solve_vi(const NetworkGame& game, ViTarget which,
                           const ActionProfile& x0, const ViOptions& options) {
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "solve_vi tolerance must be > 0");
  }
  if (options.max_iters < 0) {
    throw Error(ErrorKind::kInvalidArgument, "max_iters must be >= 0");
  }
  const AffineVi vi = make_vi(game, which);
  if (x0.size() != vi.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "x0 length mismatch");
  }
  if (!x0.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "x0 has non-finite entries");
  }

  const double g_inf = inf_norm(game.g());
  const double eta0 =
      which == ViTarget::kNe ? 1.0 / (1.0 + g_inf) : 1.0 / (1.0 + 2.0 * g_inf);
  const double tol = options.tol;

  Vector x = vi.project(x0);
  Vector f = vi.map(x);
  double eta = eta0;
  Vector best = x;
  double best_residual = vi.natural_residual(x, f);

  auto step_residuals = [&](const Vector& at, const Vector& f_at, double step) {
    const Vector d = at - vi.project(at - step * f_at);
    return std::pair{d.norm(), inf_norm(d)};
  };

  // Fallback once the projection phase stalls; starts from the best iterate's
  // active pattern, spends what is left of max_iters and accepts only a KKT
  // point.
  auto pivot_from = [&](const Vector& at, int it) -> std::optional<EquilibriumResult> {
    const Vector f_at = vi.map(at);
    std::vector<char> state(vi.size());
    for (int i = 0; i < vi.size(); ++i) {
      const double s = at(i) - f_at(i);
      state[i] = s <= 0.0 ? 0 : (s >= vi.upper(i) ? 2 : 1);
    }
    int pivots = 0;
    const int budget = std::min(100 * vi.size() + 1000, options.max_iters - it);
    const auto x = principal_pivot(vi, state, budget, 1e-3 * tol, pivots);
    if (!x) return std::nullopt;
    const Vector fx = vi.map(*x);
    if (vi.natural_residual(*x, fx) > tol || vi.complementarity(*x, fx) > tol) {
      return std::nullopt;
    }
    return vi_result(vi, *x, which, it + pivots);
  };

  std::vector<char> last_pattern;
  for (int it = 0; it <= options.max_iters; ++it) {
    const double residual = vi.natural_residual(x, f);
    if (residual < best_residual) {
      best_residual = residual;
      best = x;
    }
    if (residual <= tol && vi.complementarity(x, f) <= tol) {
      return vi_result(vi, x, which, it);
    }
    if (residual <= kPolishThreshold) {
      std::vector<char> pattern(vi.size());
      for (int i = 0; i < vi.size(); ++i) {
        const double s = x(i) - f(i);
        pattern[i] = s <= 0.0 ? 0 : (s >= vi.upper(i) ? 2 : 1);
      }
      if (pattern != last_pattern) {
        last_pattern = pattern;
        if (auto polished = polish_active_set(vi, x, f, tol)) {
          return vi_result(vi, *polished, which, it);
        }
      }
    }
    if (it == options.max_iters) break;

    // Step acceptance: the fixed-point residual at the current eta must drop
    // in the 2-norm or the sup-norm.
    while (true) {
      const auto [base2, base_inf] = step_residuals(x, f, eta);
      const Vector trial = vi.project(x - eta * f);
      const Vector f_trial = vi.map(trial);
      const auto [next2, next_inf] = step_residuals(trial, f_trial, eta);
      if (next2 < base2 || next_inf < base_inf) {
        x = trial;
        f = f_trial;
        break;
      }
      if (base2 == 0.0) break;
      eta *= 0.5;
      if (eta < 1e-14 * eta0) {
        if (auto exact = pivot_from(best, it)) return *exact;
        throw SolverError(ErrorKind::kStepSelectionFailed,
                          "solve_vi: step size underflow at residual " +
                              std::to_string(residual),
                          vi_result(vi, best, which, it));
      }
    }
  }
  if (auto exact = pivot_from(best, options.max_iters)) return *exact;
  throw SolverError(ErrorKind::kMaxItersExceeded,
                    "solve_vi: no convergence after " +
                        std::to_string(options.max_iters) +
                        " iterations (best natural residual " +
                        std::to_string(best_residual) + ")",
                    vi_result(vi, best, which, options.max_iters));
}

EquilibriumResult solve_ne_pg(const PublicGoodsGame& game, double tol,
                              int max_iters) {
  const int n = game.size();
  const Matrix& g = game.g();
  const GammaFamily& gamma = game.gamma();
  const Matrix i_plus_g = Matrix::Identity(n, n) + g;

  auto residual_at = [&](const Vector& x) {
    return inf_norm(
        Vector(i_plus_g * x - gamma.value(Vector(game.theta() + g * x))));
  };

  EquilibriumResult out;
  out.kind = SolutionKind::kPgNe;
  if (gamma.is_affine()) {
    const Matrix m = Matrix::Identity(n, n) +
                     (Vector::Ones(n) - gamma.d()).asDiagonal() * g;
    const Vector rhs = gamma.c() + gamma.d().cwiseProduct(game.theta());
    out.x = refined_solve(m, rhs, "I + (I - D) G");
    out.stationarity_residual = residual_at(out.x);
    out.interior = all_interior(out.x);
    return out;
  }

  if (!(tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "solve_ne_pg tolerance must be > 0");
  }
  // Validates the factorization once.
  solve_dense(i_plus_g, Vector::Zero(n), "I + G");
  const Eigen::PartialPivLU<Matrix> lu(i_plus_g);
  Vector x = Vector::Zero(n);
  for (int it = 0; it < max_iters; ++it) {
    const Vector next = lu.solve(gamma.value(Vector(game.theta() + g * x)));
    const double step = inf_norm(Vector(next - x));
    x = next;
    if (!x.allFinite()) break;
    if (step <= tol) {
      out.x = x;
      out.stationarity_residual = residual_at(x);
      out.interior = all_interior(x);
      out.iterations = it + 1;
      return out;
    }
  }
  out.x = x;
  out.stationarity_residual = x.allFinite() ? residual_at(x) : kInf;
  out.interior = x.allFinite() && all_interior(x);
  out.iterations = max_iters;
  throw SolverError(ErrorKind::kNoConvergence,
                    "solve_ne_pg: fixed-point iteration did not converge",
                    out);
}

EquilibriumResult solve_social_pg(const PublicGoodsGame& game) {
  const GammaFamily& gamma = game.gamma();
  if (!gamma.is_affine()) {
    throw Error(ErrorKind::kInvalidArgument,
                "social optimum is only available for affine gamma");
  }
  const int n = game.size();
  const Matrix& g = game.g();
  const Vector v = Vector::Ones(n) - gamma.d();
  const Matrix m = Matrix::Identity(n, n) + v.asDiagonal() * g +
                   g.transpose() * v.asDiagonal();
  const Vector rhs = gamma.c() + gamma.d().cwiseProduct(game.theta());
  return linear_result(m, rhs, SolutionKind::kPgSocial,
                       "I + (I - D) G + G^T V");
}

}  // namespace netdesign
