#pragma once

#include <functional>
#include <optional>

#include "netdesign/linalg.hpp"

namespace netdesign {

// Nonnegativity slack used when classifying solver output.
inline constexpr double kTolNonneg = 1e-9;

using ActionProfile = Vector;

// Square network matrix with zero diagonal and finite entries. Entry (i, j) is
// the weight of player j's action in player i's aggregate.
class AdjacencyMatrix {
 public:
  AdjacencyMatrix() = default;
  explicit AdjacencyMatrix(Matrix g);

  static AdjacencyMatrix zero(int n) { return AdjacencyMatrix(Matrix::Zero(n, n)); }

  int size() const { return static_cast<int>(g_.rows()); }
  const Matrix& matrix() const { return g_; }
  double operator()(int i, int j) const { return g_(i, j); }

 private:
  Matrix g_;
};

// Linear-quadratic game: player i minimizes 0.5 x_i^2 + (z_i(x) - a_i) x_i
// with z = G x. The optional upper bound turns the action set into a box
// [0, upper]; without it actions are only required to be nonnegative.
class NetworkGame {
 public:
  NetworkGame(AdjacencyMatrix adjacency, Vector a,
              std::optional<Vector> upper = std::nullopt);

  int size() const { return adjacency_.size(); }
  const AdjacencyMatrix& adjacency() const { return adjacency_; }
  const Matrix& g() const { return adjacency_.matrix(); }
  const Vector& a() const { return a_; }
  const std::optional<Vector>& upper() const { return upper_; }

 private:
  AdjacencyMatrix adjacency_;
  Vector a_;
  std::optional<Vector> upper_;
};

// Per-player demand function gamma_i(w) and its derivative. The affine member
// is gamma_i(w) = c_i + d_i * w.
class GammaFamily {
 public:
  using Fn = std::function<double(int player, double w)>;

  static GammaFamily affine(Vector c, Vector d);
  static GammaFamily custom(int n, Fn value, Fn derivative);

  bool is_affine() const { return affine_; }
  int size() const { return n_; }
  // Only meaningful for the affine member.
  const Vector& c() const { return c_; }
  const Vector& d() const { return d_; }

  // Throws kGammaEvaluation when a custom function throws or returns a
  // non-finite value.
  double value(int player, double w) const;
  double derivative(int player, double w) const;
  Vector value(const Vector& w) const;

 private:
  GammaFamily() = default;

  bool affine_ = true;
  int n_ = 0;
  Vector c_, d_;
  Fn value_, derivative_;
};

class PublicGoodsGame {
 public:
  PublicGoodsGame(AdjacencyMatrix adjacency, Vector theta, GammaFamily gamma);

  int size() const { return adjacency_.size(); }
  const AdjacencyMatrix& adjacency() const { return adjacency_; }
  const Matrix& g() const { return adjacency_.matrix(); }
  const Vector& theta() const { return theta_; }
  const GammaFamily& gamma() const { return gamma_; }

 private:
  AdjacencyMatrix adjacency_;
  Vector theta_;
  GammaFamily gamma_;
};

/// z = G x.
Vector aggregate(const AdjacencyMatrix& g, const ActionProfile& x);
Vector aggregate(const NetworkGame& game, const ActionProfile& x);
Vector aggregate(const PublicGoodsGame& game, const ActionProfile& x);

// Player indices are zero-based throughout the library.
double cost_lq(const NetworkGame& game, int player, const ActionProfile& x);
double social_cost(const NetworkGame& game, const ActionProfile& x);

double cost_pg(const PublicGoodsGame& game, int player, const ActionProfile& x);
double social_cost_pg(const PublicGoodsGame& game, const ActionProfile& x);

/// Stacked player gradients: F(x) = (I + G) x - a.
Vector grad_f(const NetworkGame& game, const ActionProfile& x);
/// Social-cost gradient: W(x) = (I + G + G^T) x - a.
Vector grad_w(const NetworkGame& game, const ActionProfile& x);

}  // namespace netdesign
