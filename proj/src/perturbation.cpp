#include "netdesign/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "netdesign/equilibrium.hpp"
#include "netdesign/errors.hpp"
#include "netdesign/format.hpp"

namespace netdesign {

std::vector<double> linear_grid(double from, double to, int points) {
  if (points < 1) throw Error(ErrorKind::kInvalidArgument, "grid needs >= 1 point");
  if (points == 1) return {from};
  std::vector<double> grid(points);
  const double step = (to - from) / (points - 1);
  for (int k = 0; k < points; ++k) grid[k] = from + step * k;
  grid.back() = to;
  return grid;
}

namespace {

void validate(const SweepConfig& config) {
  const int n = config.base_game.size();
  const Matrix& p = config.delta_pattern;
  if (p.rows() != n || p.cols() != n) {
    throw Error(ErrorKind::kDimensionMismatch, "delta pattern shape mismatch");
  }
  if (!p.allFinite() || p.diagonal().cwiseAbs().sum() != 0.0) {
    throw Error(ErrorKind::kInvalidArgument,
                "delta pattern must be finite with zero diagonal");
  }
  const auto& grid = config.delta_grid;
  if (grid.empty()) throw Error(ErrorKind::kInvalidArgument, "delta grid is empty");
  for (size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1])) {
      throw Error(ErrorKind::kInvalidArgument, "delta grid must be strictly increasing");
    }
  }
}

SweepRow solve_row(const SweepConfig& config, double delta) {
  const NetworkGame& base = config.base_game;
  const Matrix g = base.g() + delta * config.delta_pattern;
  SweepRow row;
  row.delta = delta;
  row.spectral_margin = 1.0 - spectral_norm(g);
  row.rowsum_margin = 1.0 - inf_norm(g);
  const NetworkGame game(AdjacencyMatrix(g), base.a(), base.upper());
  try {
    if (config.solver == SweepSolver::kInterior) {
      row.x = solve_ne_interior(game).x;
    } else {
      row.x = solve_vi(game, ViTarget::kNe, Vector::Zero(game.size())).x;
    }
  } catch (const Error& e) {
    row.singular = e.kind() == ErrorKind::kSingularSystem;
    row.feasible = false;
    row.social_cost = std::numeric_limits<double>::quiet_NaN();
    row.min_x = std::numeric_limits<double>::quiet_NaN();
    row.x = Vector();
    return row;
  }
  row.social_cost = social_cost(game, row.x);
  row.min_x = row.x.size() ? row.x.minCoeff() : 0.0;
  row.feasible = config.solver == SweepSolver::kConstrained || row.min_x >= -kTolNonneg;
  return row;
}

}  // namespace

SweepReport sweep(const SweepConfig& config) {
  validate(config);
  SweepReport report;
  for (double delta : config.delta_grid) {
    report.rows.push_back(solve_row(config, delta));
  }

  const double pattern_norm = spectral_norm(config.delta_pattern);
  for (size_t k = 1; k < report.rows.size(); ++k) {
    const SweepRow& prev = report.rows[k - 1];
    const SweepRow& cur = report.rows[k];
    if (!prev.feasible || !cur.feasible) continue;
    const double dg = (cur.delta - prev.delta) * pattern_norm;
    const double dx = (cur.x - prev.x).norm();
    const double dc = std::abs(cur.social_cost - prev.social_cost);
    if (dg > 0.0) {
      report.lipschitz_x = std::max(report.lipschitz_x, dx / dg);
      report.lipschitz_cost = std::max(report.lipschitz_cost, dc / dg);
    } else if (dx > 0.0 || dc > 0.0) {
      report.lipschitz_x = std::numeric_limits<double>::infinity();
      report.lipschitz_cost = std::numeric_limits<double>::infinity();
    }
  }

  if (config.base_game.upper()) {
    report.delta_cap = config.base_game.upper()->norm();
  } else {
    for (const SweepRow& row : report.rows) {
      if (row.x.size()) report.delta_cap = std::max(report.delta_cap, row.x.norm());
    }
  }
  return report;
}

LipschitzCheck lipschitz_check(const SweepReport& report, double k_cap) {
  const auto feasible = std::count_if(report.rows.begin(), report.rows.end(),
                                      [](const SweepRow& r) { return r.feasible; });
  if (feasible < 2) {
    throw Error(ErrorKind::kInsufficientData,
                "lipschitz_check needs at least two feasible rows");
  }
  LipschitzCheck out;
  out.max_ratio = report.lipschitz_cost;
  out.bounded = out.max_ratio <= k_cap * report.delta_cap;
  return out;
}

double max_adjacent_cost_jump(const SweepReport& report, double lo, double hi) {
  double jump = 0.0;
  for (size_t k = 1; k < report.rows.size(); ++k) {
    const SweepRow& prev = report.rows[k - 1];
    const SweepRow& cur = report.rows[k];
    if (!prev.feasible || !cur.feasible) continue;
    if (prev.delta < lo || cur.delta > hi) continue;
    jump = std::max(jump, std::abs(cur.social_cost - prev.social_cost));
  }
  return jump;
}

std::optional<std::pair<double, double>> feasible_interval(const SweepReport& report,
                                                           double anchor) {
  if (report.rows.empty()) return std::nullopt;
  size_t at = 0;
  for (size_t k = 1; k < report.rows.size(); ++k) {
    if (std::abs(report.rows[k].delta - anchor) <
        std::abs(report.rows[at].delta - anchor)) {
      at = k;
    }
  }
  if (!report.rows[at].feasible) return std::nullopt;
  size_t lo = at, hi = at;
  while (lo > 0 && report.rows[lo - 1].feasible) --lo;
  while (hi + 1 < report.rows.size() && report.rows[hi + 1].feasible) ++hi;
  return std::pair{report.rows[lo].delta, report.rows[hi].delta};
}

std::string sweep_csv(const SweepReport& report) {
  std::ostringstream out;
  out << "delta,social_cost,feasible,min_x,spectral_margin\n";
  for (const SweepRow& row : report.rows) {
    out << format_number(row.delta) << ',' << format_number(row.social_cost) << ','
        << (row.feasible ? 1 : 0) << ',' << format_number(row.min_x) << ','
        << format_number(row.spectral_margin) << '\n';
  }
  return out.str();
}

}  // namespace netdesign
