#include "netdesign/certificates.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <vector>

#include "netdesign/errors.hpp"

namespace netdesign {

std::string_view to_string(CertificateName name) {
  switch (name) {
    case CertificateName::kStrongMonotone: return "prop1-strong-monotone";
    case CertificateName::kBlockP: return "prop2-block-p";
    case CertificateName::kGammaPMatrix: return "gamma-p-matrix";
    case CertificateName::kGershgorin: return "gershgorin";
    case CertificateName::kContinuitySpectral: return "continuity-spectral";
    case CertificateName::kContinuityRowSum: return "continuity-rowsum";
  }
  return "unknown";
}

namespace {

Certificate make(CertificateName name, double margin) {
  Certificate c;
  c.name = name;
  c.margin = margin;
  c.holds = margin > 0.0;
  return c;
}

}  // namespace

GammaMatrix::GammaMatrix(const AdjacencyMatrix& g) {
  const Matrix& a = g.matrix();
  const int n = g.size();
  m_ = Matrix(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      m_(i, j) = i == j ? 2.0 : -std::abs(2.0 * a(i, j) + a(j, i));
    }
  }
}

Certificate cert_strong_monotone(const AdjacencyMatrix& g) {
  const double sigma = spectral_norm(g.matrix());
  Certificate c = make(CertificateName::kStrongMonotone, 2.0 - 3.0 * sigma);
  c.details["sigma_max"] = sigma;
  if (g.size() > 0) {
    const Matrix sym = 1.5 * (g.matrix() + g.matrix().transpose());
    const double lam = min_eigenvalue(sym);
    // Tighter constant before the spectral-norm relaxation.
    c.details["lambda_min_sym"] = lam;
    c.details["alpha_tight"] = 2.0 + lam;
  }
  return c;
}

Certificate cert_block_p(const AdjacencyMatrix& g) {
  const double row = inf_norm(g.matrix());
  const double col = one_norm(g.matrix());
  Certificate c = make(CertificateName::kBlockP, 2.0 - (2.0 * row + col));
  c.details["norm_inf"] = row;
  c.details["norm_1"] = col;
  return c;
}

Certificate cert_gershgorin(const AdjacencyMatrix& g) {
  const double radius =
      inf_norm(Matrix(2.0 * g.matrix() + g.matrix().transpose()));
  Certificate c = make(CertificateName::kGershgorin, 2.0 - radius);
  c.details["norm_inf_2g_plus_gt"] = radius;
  return c;
}

Certificate cert_gamma_p(const AdjacencyMatrix& g) {
  const GammaMatrix gamma(g);
  const double minor = min_principal_minor(gamma.matrix());
  Certificate c = make(CertificateName::kGammaPMatrix, minor);
  c.details["min_principal_minor"] = minor;
  return c;
}

std::pair<Certificate, Certificate> cert_continuity(const AdjacencyMatrix& g) {
  const double sigma = spectral_norm(g.matrix());
  const double row = inf_norm(g.matrix());
  Certificate spectral = make(CertificateName::kContinuitySpectral, 1.0 - sigma);
  spectral.details["sigma_max"] = sigma;
  Certificate rowsum = make(CertificateName::kContinuityRowSum, 1.0 - row);
  rowsum.details["norm_inf"] = row;
  return {spectral, rowsum};
}

double min_principal_minor(const Matrix& m) {
  if (m.rows() != m.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "matrix is not square");
  }
  const int n = static_cast<int>(m.rows());
  if (n > kMaxPMatrixSize) {
    throw Error(ErrorKind::kTooLarge,
                "principal-minor enumeration limited to n <= " +
                    std::to_string(kMaxPMatrixSize));
  }
  double smallest = std::numeric_limits<double>::infinity();
  std::vector<int> idx;
  idx.reserve(n);
  const std::uint32_t subsets = std::uint32_t{1} << n;
  for (std::uint32_t mask = 1; mask < subsets; ++mask) {
    idx.clear();
    for (int i = 0; i < n; ++i) {
      if (mask & (std::uint32_t{1} << i)) idx.push_back(i);
    }
    const int k = static_cast<int>(idx.size());
    double det;
    if (k == 1) {
      det = m(idx[0], idx[0]);
    } else {
      Matrix sub(k, k);
      for (int r = 0; r < k; ++r) {
        for (int c = 0; c < k; ++c) sub(r, c) = m(idx[r], idx[c]);
      }
      det = sub.partialPivLu().determinant();
    }
    smallest = std::min(smallest, det);
  }
  return smallest;
}

bool p_matrix_check(const Matrix& m) { return min_principal_minor(m) > 0.0; }

bool spectral_facts_selftest(const Matrix& a) {
  if (a.rows() != a.cols()) {
    throw Error(ErrorKind::kDimensionMismatch, "matrix is not square");
  }
  if (a.size() > 0 && (a - a.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw Error(ErrorKind::kNotSymmetric, "matrix is not symmetric");
  }
  const int n = static_cast<int>(a.rows());
  if (n == 0) return true;
  constexpr double kTol = 1e-10;
  const Matrix id = Matrix::Identity(n, n);
  const double lam = min_eigenvalue(a);

  const bool dominates = min_eigenvalue(Matrix(a - lam * id)) >= -kTol;
  const bool bounded = std::abs(lam) <= spectral_norm(a) + kTol;
  bool shifts = true;
  for (double alpha : {-1.0, 0.5, 2.0}) {
    const double shifted = min_eigenvalue(Matrix(alpha * id + a));
    shifts = shifts && std::abs(shifted - (alpha + lam)) <= kTol;
  }
  return dominates && bounded && shifts;
}

}  // namespace netdesign
