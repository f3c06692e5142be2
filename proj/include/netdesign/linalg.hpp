#pragma once

#include <Eigen/Dense>

namespace netdesign {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Max absolute row sum.
double inf_norm(const Matrix& m);

/// Max absolute column sum.
double one_norm(const Matrix& m);

/// Largest singular value.
double spectral_norm(const Matrix& m);

/// Singular values in decreasing order.
Vector singular_values(const Matrix& m);

/// Smallest eigenvalue of a symmetric matrix (only the lower triangle is read).
double min_eigenvalue(const Matrix& symmetric);

double inf_norm(const Vector& v);

// Solves a*x = b by LU with partial pivoting. Throws kSingularSystem when the
// reciprocal condition estimate falls below kMinReciprocalCondition. `what`
// names the system in the error message.
inline constexpr double kMinReciprocalCondition = 1e-12;
Vector solve_dense(const Matrix& a, const Vector& b, const char* what);

}  // namespace netdesign
