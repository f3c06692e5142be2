#pragma once

#include <vector>

#include "netdesign/equilibrium.hpp"
#include "netdesign/game.hpp"

namespace netdesign {

struct PlayerRationality {
  double cost_at_eq = 0.0;
  double cost_opt_out = 0.0;  // J_i(0, z_i) = 0
  bool rational = false;      // cost_at_eq <= cost_opt_out + 1e-9
  double identity_gap = 0.0;  // |cost_at_eq + x_i^2 / 2|
};

struct IrReport {
  std::vector<PlayerRationality> players;

  bool all_rational() const;
};

inline constexpr double kRationalitySlack = 1e-9;

// Participation check at an equilibrium of an LQ game. At any equilibrium,
// J_i = -x_i^2 / 2 + x_i F_i(x), so the closed form holds up to the
// complementarity residual; a gap above 1e-9 for a player below its upper
// bound raises kNotAnEquilibrium, as does a natural residual above
// eq_tol * (1 + ||a||_inf).
IrReport ir_check(const NetworkGame& game, const EquilibriumResult& eq,
                  double eq_tol = 1e-8);

}  // namespace netdesign
