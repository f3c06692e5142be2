#include "netdesign/design.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <utility>

#include "netdesign/equilibrium.hpp"
#include "netdesign/errors.hpp"

namespace netdesign {

CoincidenceCheck check_coincidence(const NetworkGame& game, double tol) {
  CoincidenceCheck out;
  out.x = solve_ne_interior(game).x;
  out.residual_orth = inf_norm(Vector(game.g().transpose() * out.x));
  const bool nonneg = out.x.size() == 0 || out.x.minCoeff() >= -kTolNonneg;
  out.holds = nonneg && out.residual_orth <= tol * (1.0 + inf_norm(game.a()));
  try {
    const Vector y = solve_social_interior(game).x;
    out.social_gap = inf_norm(Vector(out.x - y));
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::kSingularSystem) throw;
  }
  return out;
}

DeterminantReport necessary_condition_det(const AdjacencyMatrix& g,
                                          double rank_tol) {
  DeterminantReport out;
  const int n = g.size();
  if (n == 0) return out;
  out.det = g.matrix().partialPivLu().determinant();
  const Vector sv = singular_values(g.matrix());
  out.max_singular_value = sv(0);
  out.min_singular_value = sv(n - 1);
  const double cutoff = rank_tol * out.max_singular_value;
  out.rank = static_cast<int>((sv.array() > cutoff).count());
  out.singular = out.min_singular_value <= cutoff;
  return out;
}

bool potential_check(const AdjacencyMatrix& g, double tol) {
  return inf_norm(Matrix(g.matrix() - g.matrix().transpose())) <= tol;
}

DesignProblem::DesignProblem(Vector a, std::vector<FixedEntry> fixed,
                             std::vector<EntryPosition> free)
    : a_(std::move(a)), fixed_(std::move(fixed)), free_(std::move(free)) {
  const int n = size();
  if (n == 0) throw Error(ErrorKind::kInvalidArgument, "design problem is empty");
  if (!a_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "a has non-finite entries");
  }
  std::vector<char> used(static_cast<size_t>(n) * n, 0);
  auto claim = [&](const EntryPosition& p, const char* what) {
    if (p.row < 0 || p.row >= n || p.col < 0 || p.col >= n) {
      throw Error(ErrorKind::kIndexOutOfRange,
                  std::string(what) + " entry (" + std::to_string(p.row) +
                      ", " + std::to_string(p.col) + ") out of range");
    }
    if (p.row == p.col) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(what) + " entry on the diagonal");
    }
    char& slot = used[static_cast<size_t>(p.row) * n + p.col];
    if (slot) {
      throw Error(ErrorKind::kInvalidArgument,
                  std::string(what) + " entry (" + std::to_string(p.row) +
                      ", " + std::to_string(p.col) + ") listed twice");
    }
    slot = 1;
  };
  for (const FixedEntry& f : fixed_) {
    claim(f.pos, "fixed");
    if (!std::isfinite(f.value)) {
      throw Error(ErrorKind::kInvalidArgument, "fixed entry is not finite");
    }
  }
  for (const EntryPosition& p : free_) claim(p, "free");
}

Matrix DesignProblem::assemble(const Vector& free_values) const {
  const int n = size();
  Matrix g = Matrix::Zero(n, n);
  for (const FixedEntry& f : fixed_) g(f.pos.row, f.pos.col) = f.value;
  for (size_t t = 0; t < free_.size(); ++t) {
    g(free_[t].row, free_[t].col) = free_values(static_cast<Eigen::Index>(t));
  }
  return g;
}

namespace {

struct Candidate {
  Vector x;
  Vector free_values;
  double residual_ne;
  double residual_orth;
};

Vector residual_map(const DesignProblem& problem, const Vector& x,
                    const Matrix& g) {
  const int n = problem.size();
  Vector r(2 * n);
  r.head(n) = x + g * x - problem.a();
  r.tail(n) = g.transpose() * x;
  return r;
}

Matrix jacobian(const DesignProblem& problem, const Vector& x, const Matrix& g) {
  const int n = problem.size();
  const int k = static_cast<int>(problem.free().size());
  Matrix j = Matrix::Zero(2 * n, n + k);
  j.topLeftCorner(n, n) = Matrix::Identity(n, n) + g;
  j.bottomLeftCorner(n, n) = g.transpose();
  for (int t = 0; t < k; ++t) {
    const EntryPosition& p = problem.free()[t];
    j(p.row, n + t) = x(p.col);
    j(n + p.col, n + t) = x(p.row);
  }
  return j;
}

// Levenberg-Marquardt from one start; returns the final point.
Candidate run_start(const DesignProblem& problem, Vector x, Vector free_values,
                    const DesignOptions& options) {
  const int n = problem.size();
  const int k = static_cast<int>(free_values.size());
  Matrix g = problem.assemble(free_values);
  Vector r = residual_map(problem, x, g);
  double cost = r.squaredNorm();
  double lambda = 1e-3;
  const double target = 1e-3 * options.tol;

  for (int it = 0; it < options.max_newton_iters; ++it) {
    if (inf_norm(r) <= target) break;
    const Matrix j = jacobian(problem, x, g);
    const Matrix jtj = j.transpose() * j;
    const Vector jtr = j.transpose() * r;
    bool improved = false;
    while (lambda < 1e16) {
      Matrix lhs = jtj;
      lhs.diagonal().array() += lambda;
      const Vector step = lhs.ldlt().solve(-jtr);
      if (!step.allFinite()) {
        lambda *= 4.0;
        continue;
      }
      const Vector x_new = x + step.head(n);
      const Vector f_new = free_values + step.tail(k);
      const Matrix g_new = problem.assemble(f_new);
      const Vector r_new = residual_map(problem, x_new, g_new);
      const double cost_new = r_new.squaredNorm();
      if (std::isfinite(cost_new) && cost_new < cost) {
        x = x_new;
        free_values = f_new;
        g = g_new;
        r = r_new;
        cost = cost_new;
        lambda = std::max(lambda / 3.0, 1e-15);
        improved = true;
        break;
      }
      lambda *= 4.0;
    }
    if (!improved) break;
  }
  return {x, free_values, inf_norm(Vector(r.head(n))), inf_norm(Vector(r.tail(n)))};
}

Vector stacked(const Candidate& c) {
  Vector v(c.x.size() + c.free_values.size());
  v << c.x, c.free_values;
  return v;
}

bool same_point(const Vector& u, const Vector& v, double threshold) {
  const double scale = 1.0 + std::max(inf_norm(u), inf_norm(v));
  return inf_norm(Vector(u - v)) / scale <= threshold;
}

// Canonical lexicographic order, then greedy deduplication.
std::vector<Candidate> distinct(std::vector<Candidate> found, double threshold) {
  std::sort(found.begin(), found.end(), [](const Candidate& a, const Candidate& b) {
    const Vector u = stacked(a);
    const Vector v = stacked(b);
    return std::lexicographical_compare(u.begin(), u.end(), v.begin(), v.end());
  });
  std::vector<Candidate> kept;
  for (Candidate& c : found) {
    const Vector v = stacked(c);
    const bool dup = std::any_of(kept.begin(), kept.end(), [&](const Candidate& k) {
      return same_point(stacked(k), v, threshold);
    });
    if (!dup) kept.push_back(std::move(c));
  }
  return kept;
}

std::vector<DesignSolution> to_solutions(const DesignProblem& problem,
                                         std::vector<Candidate> found,
                                         double threshold) {
  std::vector<DesignSolution> out;
  int id = 0;
  for (Candidate& c : distinct(std::move(found), threshold)) {
    DesignSolution s;
    s.adjacency = AdjacencyMatrix(problem.assemble(c.free_values));
    s.x_star = std::move(c.x);
    s.free_values = std::move(c.free_values);
    s.residual_ne = c.residual_ne;
    s.residual_orth = c.residual_orth;
    s.branch_id = id++;
    out.push_back(std::move(s));
  }
  return out;
}

std::mt19937_64 stream_rng(std::uint64_t seed, int pass, int index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed),
                    static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(pass),
                    static_cast<std::uint32_t>(index)};
  return std::mt19937_64(seq);
}

}  // namespace

DesignReport design_solve(const DesignProblem& problem,
                          const DesignOptions& options) {
  if (options.starts < 1) {
    throw Error(ErrorKind::kInvalidArgument, "design_solve needs >= 1 start");
  }
  if (!(options.tol > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "design tolerance must be > 0");
  }
  const int n = problem.size();
  const int k = static_cast<int>(problem.free().size());
  const double x_hi = std::max(problem.a().maxCoeff(), 1e-3);

  DesignReport report;
  report.best_residual = std::numeric_limits<double>::infinity();
  std::vector<Candidate> good;
  std::vector<Candidate> negative;

  const double ranges[] = {options.free_range, options.widened_free_range};
  for (int pass = 0; pass < 2 && good.empty(); ++pass) {
    for (int s = 0; s < options.starts; ++s) {
      std::mt19937_64 rng = stream_rng(options.seed, pass, s);
      std::uniform_real_distribution<double> ux(0.0, x_hi);
      std::uniform_real_distribution<double> ug(-ranges[pass], ranges[pass]);
      Vector x(n);
      for (int i = 0; i < n; ++i) x(i) = ux(rng);
      Vector f(k);
      for (int t = 0; t < k; ++t) f(t) = ug(rng);

      Candidate c = run_start(problem, std::move(x), std::move(f), options);
      const double res = std::max(c.residual_ne, c.residual_orth);
      if (std::isfinite(res)) report.best_residual = std::min(report.best_residual, res);
      if (!(res <= options.tol) || !c.x.allFinite() || !c.free_values.allFinite()) {
        ++report.failed_starts;
        continue;
      }
      if (c.x.minCoeff() < -options.tol) {
        negative.push_back(std::move(c));
      } else {
        good.push_back(std::move(c));
      }
    }
  }

  report.solutions = to_solutions(problem, std::move(good), options.distinct_threshold);
  report.negative_solutions =
      to_solutions(problem, std::move(negative), options.distinct_threshold);
  if (report.solutions.empty()) {
    throw Error(ErrorKind::kNoSolutionFound,
                "design_solve: no nonnegative solution found (best residual " +
                    std::to_string(report.best_residual) + ", " +
                    std::to_string(report.negative_solutions.size()) +
                    " negative solutions)");
  }
  return report;
}

DesignSolution symmetric_design(const Vector& a, std::uint64_t seed,
                                double spectral_norm_target) {
  const int n = static_cast<int>(a.size());
  if (!a.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument, "a has non-finite entries");
  }
  if (!(spectral_norm_target > 0.0)) {
    throw Error(ErrorKind::kInvalidArgument, "spectral norm target must be > 0");
  }
  std::vector<EntryPosition> pairs;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
  }
  const int m = static_cast<int>(pairs.size());
  if (m == 0) {
    throw Error(ErrorKind::kInfeasibleDesign, "no off-diagonal entries for n < 2");
  }
  // Row i of G a, as a linear function of the upper-triangle entries.
  Matrix constraints = Matrix::Zero(n, m);
  for (int p = 0; p < m; ++p) {
    constraints(pairs[p].row, p) = a(pairs[p].col);
    constraints(pairs[p].col, p) = a(pairs[p].row);
  }
  Eigen::JacobiSVD<Matrix> svd(constraints, Eigen::ComputeFullV);
  const Vector& sv = svd.singularValues();
  const double cutoff = 1e-12 * std::max(1.0, sv.size() ? sv(0) : 0.0);
  const int rank = static_cast<int>((sv.array() > cutoff).count());
  const int nullity = m - rank;
  if (nullity == 0) {
    throw Error(ErrorKind::kInfeasibleDesign,
                "only G = 0 is symmetric with G a = 0 for this a");
  }
  const Matrix basis = svd.matrixV().rightCols(nullity);

  std::mt19937_64 rng = stream_rng(seed, 0, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  Vector coeffs(nullity);
  for (int t = 0; t < nullity; ++t) coeffs(t) = normal(rng);
  const Vector entries = basis * coeffs;

  Matrix g = Matrix::Zero(n, n);
  for (int p = 0; p < m; ++p) {
    g(pairs[p].row, pairs[p].col) = entries(p);
    g(pairs[p].col, pairs[p].row) = entries(p);
  }
  const double norm = spectral_norm(g);
  if (norm == 0.0) {
    throw Error(ErrorKind::kInfeasibleDesign, "sampled the zero matrix");
  }
  g *= spectral_norm_target / norm;

  DesignSolution s;
  s.adjacency = AdjacencyMatrix(g);
  s.x_star = a;
  s.free_values = Vector(m);
  for (int p = 0; p < m; ++p) s.free_values(p) = g(pairs[p].row, pairs[p].col);
  s.residual_ne = inf_norm(Vector(a + g * a - a));
  s.residual_orth = inf_norm(Vector(g.transpose() * a));
  return s;
}

PgCoincidence pg_coincidence(const PublicGoodsGame& game, double tol) {
  if (!game.gamma().is_affine()) {
    throw Error(ErrorKind::kInvalidArgument,
                "public-goods coincidence needs affine gamma");
  }
  PgCoincidence out;
  out.x = solve_ne_pg(game).x;
  const Vector v = Vector::Ones(game.size()) - game.gamma().d();
  out.residual = inf_norm(Vector(game.g().transpose() * v.cwiseProduct(out.x)));
  out.holds = out.residual <= tol;
  return out;
}

}  // namespace netdesign
