#include "netdesign/game.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "netdesign/errors.hpp"

namespace netdesign {
namespace {

void require_length(const Vector& v, int n, const char* name) {
  if (v.size() != n) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(name) + " has length " + std::to_string(v.size()) +
                    ", expected " + std::to_string(n));
  }
}

void require_finite(const Vector& v, const char* name) {
  if (!v.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument,
                std::string(name) + " has non-finite entries");
  }
}

void require_player(int player, int n) {
  if (player < 0 || player >= n) {
    throw Error(ErrorKind::kIndexOutOfRange,
                "player index " + std::to_string(player) + " outside [0, " +
                    std::to_string(n) + ")");
  }
}

}  // namespace

AdjacencyMatrix::AdjacencyMatrix(Matrix g) : g_(std::move(g)) {
  if (g_.rows() != g_.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "adjacency matrix is not square");
  }
  if (!g_.allFinite()) {
    throw Error(ErrorKind::kInvalidArgument,
                "adjacency matrix has non-finite entries");
  }
  for (int i = 0; i < g_.rows(); ++i) {
    if (g_(i, i) != 0.0) {
      throw Error(ErrorKind::kInvalidArgument,
                  "adjacency diagonal entry " + std::to_string(i) +
                      " is nonzero");
    }
  }
}

NetworkGame::NetworkGame(AdjacencyMatrix adjacency, Vector a,
                         std::optional<Vector> upper)
    : adjacency_(std::move(adjacency)), a_(std::move(a)), upper_(std::move(upper)) {
  require_length(a_, size(), "a");
  require_finite(a_, "a");
  if (upper_) {
    require_length(*upper_, size(), "upper bound");
    if (upper_->hasNaN() || (upper_->array() <= 0.0).any()) {
      throw Error(ErrorKind::kInvalidArgument,
                  "upper bounds must be positive (use no bound for +inf)");
    }
  }
}

GammaFamily GammaFamily::affine(Vector c, Vector d) {
  if (c.size() != d.size()) {
    throw Error(ErrorKind::kDimensionMismatch, "gamma c and d lengths differ");
  }
  require_finite(c, "gamma c");
  require_finite(d, "gamma d");
  GammaFamily g;
  g.affine_ = true;
  g.n_ = static_cast<int>(c.size());
  g.c_ = std::move(c);
  g.d_ = std::move(d);
  return g;
}

GammaFamily GammaFamily::custom(int n, Fn value, Fn derivative) {
  if (!value || !derivative) {
    throw Error(ErrorKind::kInvalidArgument,
                "custom gamma needs both value and derivative");
  }
  GammaFamily g;
  g.affine_ = false;
  g.n_ = n;
  g.value_ = std::move(value);
  g.derivative_ = std::move(derivative);
  return g;
}

namespace {

double call_checked(const GammaFamily::Fn& fn, int player, double w,
                    const char* what) {
  double out;
  try {
    out = fn(player, w);
  } catch (const Error&) {
    throw;
  } catch (const std::exception& e) {
    throw Error(ErrorKind::kGammaEvaluation,
                std::string(what) + " failed for player " +
                    std::to_string(player) + ": " + e.what());
  }
  if (!std::isfinite(out)) {
    throw Error(ErrorKind::kGammaEvaluation,
                std::string(what) + " returned a non-finite value for player " +
                    std::to_string(player));
  }
  return out;
}

}  // namespace

double GammaFamily::value(int player, double w) const {
  require_player(player, n_);
  if (affine_) return c_(player) + d_(player) * w;
  return call_checked(value_, player, w, "gamma");
}

double GammaFamily::derivative(int player, double w) const {
  require_player(player, n_);
  if (affine_) return d_(player);
  return call_checked(derivative_, player, w, "gamma derivative");
}

Vector GammaFamily::value(const Vector& w) const {
  require_length(w, n_, "gamma argument");
  if (affine_) return c_ + d_.cwiseProduct(w);
  Vector out(n_);
  for (int i = 0; i < n_; ++i) out(i) = value(i, w(i));
  return out;
}

PublicGoodsGame::PublicGoodsGame(AdjacencyMatrix adjacency, Vector theta,
                                 GammaFamily gamma)
    : adjacency_(std::move(adjacency)),
      theta_(std::move(theta)),
      gamma_(std::move(gamma)) {
  require_length(theta_, size(), "theta");
  require_finite(theta_, "theta");
  if (gamma_.size() != size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                "gamma family size does not match the player count");
  }
}

Vector aggregate(const AdjacencyMatrix& g, const ActionProfile& x) {
  require_length(x, g.size(), "action profile");
  return g.matrix() * x;
}

Vector aggregate(const NetworkGame& game, const ActionProfile& x) {
  return aggregate(game.adjacency(), x);
}

Vector aggregate(const PublicGoodsGame& game, const ActionProfile& x) {
  return aggregate(game.adjacency(), x);
}

double cost_lq(const NetworkGame& game, int player, const ActionProfile& x) {
  require_player(player, game.size());
  require_length(x, game.size(), "action profile");
  const double xi = x(player);
  const double zi = game.g().row(player).dot(x);
  return 0.5 * xi * xi + (zi - game.a()(player)) * xi;
}

double social_cost(const NetworkGame& game, const ActionProfile& x) {
  require_length(x, game.size(), "action profile");
  double total = 0.0;
  for (int i = 0; i < game.size(); ++i) total += cost_lq(game, i, x);
  return total;
}

double cost_pg(const PublicGoodsGame& game, int player, const ActionProfile& x) {
  require_player(player, game.size());
  require_length(x, game.size(), "action profile");
  const double xi = x(player);
  const double zi = game.g().row(player).dot(x);
  const double demand = game.gamma().value(player, game.theta()(player) + zi);
  return 0.5 * xi * xi + (zi - demand) * xi;
}

double social_cost_pg(const PublicGoodsGame& game, const ActionProfile& x) {
  require_length(x, game.size(), "action profile");
  double total = 0.0;
  for (int i = 0; i < game.size(); ++i) total += cost_pg(game, i, x);
  return total;
}

Vector grad_f(const NetworkGame& game, const ActionProfile& x) {
  require_length(x, game.size(), "action profile");
  return x + game.g() * x - game.a();
}

Vector grad_w(const NetworkGame& game, const ActionProfile& x) {
  require_length(x, game.size(), "action profile");
  return x + game.g() * x + game.g().transpose() * x - game.a();
}

}  // namespace netdesign
