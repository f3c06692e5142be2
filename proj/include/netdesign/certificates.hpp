#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>

#include "netdesign/game.hpp"

namespace netdesign {

enum class CertificateName {
  kStrongMonotone,
  kBlockP,
  kGammaPMatrix,
  kGershgorin,
  kContinuitySpectral,
  kContinuityRowSum,
};

std::string_view to_string(CertificateName name);

// A sufficient condition only: holds == false says nothing about
// non-uniqueness. holds is exactly (margin > 0).
struct Certificate {
  CertificateName name;
  double margin = 0.0;
  bool holds = false;
  std::map<std::string, double> details;
};

// Z-matrix with diagonal 2 and off-diagonal -|2 g_ij + g_ji|.
class GammaMatrix {
 public:
  explicit GammaMatrix(const AdjacencyMatrix& g);

  const Matrix& matrix() const { return m_; }

 private:
  Matrix m_;
};

inline constexpr int kMaxPMatrixSize = 20;

/// Margin 2 - 3 ||G||_2.
Certificate cert_strong_monotone(const AdjacencyMatrix& g);

/// Margin 2 - (2 ||G||_inf + ||G||_1).
Certificate cert_block_p(const AdjacencyMatrix& g);

/// Margin 2 - ||2G + G^T||_inf; a diagonal-dominance route to Gamma being P.
Certificate cert_gershgorin(const AdjacencyMatrix& g);

/// Margin is the smallest principal minor of the Gamma matrix. Throws
/// kTooLarge for n > kMaxPMatrixSize.
Certificate cert_gamma_p(const AdjacencyMatrix& g);

/// {1 - ||G||_2, 1 - ||G||_inf}.
std::pair<Certificate, Certificate> cert_continuity(const AdjacencyMatrix& g);

/// Smallest determinant over all 2^n - 1 nonempty principal submatrices.
/// Throws kTooLarge for n > kMaxPMatrixSize.
double min_principal_minor(const Matrix& m);

/// True iff every principal minor is strictly positive.
bool p_matrix_check(const Matrix& m);

// Checks, on a symmetric A:
//   A - lambda_min(A) I is positive semidefinite (to -1e-10);
//   |lambda_min(A)| <= ||A||_2 (+1e-10);
//   lambda_min(alpha I + A) = alpha + lambda_min(A) for alpha in {-1, 0.5, 2}.
// Throws kNotSymmetric if ||A - A^T||_max > 1e-12.
bool spectral_facts_selftest(const Matrix& a);

}  // namespace netdesign
