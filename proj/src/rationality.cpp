#include "netdesign/rationality.hpp"

#include <algorithm>
#include <cmath>

namespace netdesign {

bool IrReport::all_rational() const {
  return std::all_of(players.begin(), players.end(),
                     [](const PlayerRationality& p) { return p.rational; });
}

IrReport ir_check(const NetworkGame& game, const EquilibriumResult& eq,
                  double eq_tol) {
  if (eq.x.size() != game.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "equilibrium length mismatch");
  }
  const double residual = natural_residual(game, ViTarget::kNe, eq.x);
  if (!(residual <= eq_tol * (1.0 + inf_norm(game.a())))) {
    throw Error(ErrorKind::kNotAnEquilibrium,
                "profile is not an equilibrium (natural residual " +
                    std::to_string(residual) + ")");
  }
  if (eq.x.size() && eq.x.minCoeff() < -kTolNonneg) {
    throw Error(ErrorKind::kNotAnEquilibrium,
                "profile has negative actions; solve the constrained game");
  }
  IrReport report;
  for (int i = 0; i < game.size(); ++i) {
    PlayerRationality p;
    p.cost_at_eq = cost_lq(game, i, eq.x);
    p.rational = p.cost_at_eq <= p.cost_opt_out + kRationalitySlack;
    p.identity_gap = std::abs(p.cost_at_eq + 0.5 * eq.x(i) * eq.x(i));
    // A player held at its upper bound pays less than -x^2/2.
    const bool at_upper = game.upper() && eq.x(i) >= (*game.upper())(i) - kTolNonneg;
    if (!at_upper && p.identity_gap > 1e-9) {
      throw Error(ErrorKind::kNotAnEquilibrium,
                  "cost of player " + std::to_string(i) +
                      " departs from -x^2/2 by " + std::to_string(p.identity_gap));
    }
    report.players.push_back(p);
  }
  return report;
}

}  // namespace netdesign
