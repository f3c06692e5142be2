#pragma once

#include <cstdint>
#include <random>

#include "netdesign/game.hpp"

namespace netdesign::testing {

// Network of the three-player coincidence example: fixed g12 = -2, g31 = -3,
// g23 = 2 and the printed (rounded) solved entries.
inline Matrix three_player_matrix() {
  Matrix g(3, 3);
  g << 0.0, -2.0, -0.273107,
       1.18042, 0.0, 2.0,
       -3.0, 37.229, 0.0;
  return g;
}

inline Vector three_player_a() { return Vector{{1.0, 2.0, 3.0}}; }
inline Vector three_player_x() { return Vector{{1.4046, 0.19173, 0.07544}}; }

// Four-player symmetric network with zero row sums (so G 1 = 0).
inline Matrix four_node_symmetric() {
  Matrix g(4, 4);
  g << 0.0, 0.1, 0.2, -0.3,
       0.1, 0.0, -0.3, 0.2,
       0.2, -0.3, 0.0, 0.1,
       -0.3, 0.2, 0.1, 0.0;
  return g;
}

// Perturbation direction touching (1,3), (1,4), (3,1), (4,1).
inline Matrix four_node_pattern() {
  Matrix p = Matrix::Zero(4, 4);
  p(0, 2) = p(0, 3) = p(2, 0) = p(3, 0) = 1.0;
  return p;
}

inline Matrix random_adjacency(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Matrix g(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) g(i, j) = i == j ? 0.0 : u(rng);
  }
  return g;
}

// Random zero-diagonal matrix rescaled so that ||G||_inf == target.
inline Matrix random_adjacency_inf(std::mt19937_64& rng, int n, double target) {
  Matrix g = random_adjacency(rng, n, -1.0, 1.0);
  const double norm = g.cwiseAbs().rowwise().sum().maxCoeff();
  return norm > 0 ? Matrix(g * (target / norm)) : g;
}

inline Vector random_vector(std::mt19937_64& rng, int n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  Vector v(n);
  for (int i = 0; i < n; ++i) v(i) = u(rng);
  return v;
}

}  // namespace netdesign::testing
