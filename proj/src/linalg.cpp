#include "netdesign/linalg.hpp"

#include <string>

#include "netdesign/errors.hpp"

namespace netdesign {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::kDimensionMismatch: return "DimensionMismatch";
    case ErrorKind::kIndexOutOfRange: return "IndexOutOfRange";
    case ErrorKind::kInvalidArgument: return "InvalidArgument";
    case ErrorKind::kSingularSystem: return "SingularSystem";
    case ErrorKind::kMaxItersExceeded: return "MaxItersExceeded";
    case ErrorKind::kStepSelectionFailed: return "StepSelectionFailed";
    case ErrorKind::kNoConvergence: return "NoConvergence";
    case ErrorKind::kInfeasibleDesign: return "InfeasibleDesign";
    case ErrorKind::kNoSolutionFound: return "NoSolutionFound";
    case ErrorKind::kTooLarge: return "TooLarge";
    case ErrorKind::kNotSymmetric: return "NotSymmetric";
    case ErrorKind::kInsufficientData: return "InsufficientData";
    case ErrorKind::kNotAnEquilibrium: return "NotAnEquilibrium";
    case ErrorKind::kGammaEvaluation: return "GammaEvaluation";
    case ErrorKind::kParse: return "Parse";
  }
  return "Unknown";
}

double inf_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().rowwise().sum().maxCoeff();
}

double one_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return m.cwiseAbs().colwise().sum().maxCoeff();
}

Vector singular_values(const Matrix& m) {
  if (m.size() == 0) return Vector();
  if (m.rows() > 32) {
    Eigen::BDCSVD<Matrix> svd(m);
    return svd.singularValues();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues();
}

double spectral_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return singular_values(m)(0);
}

double min_eigenvalue(const Matrix& symmetric) {
  Eigen::SelfAdjointEigenSolver<Matrix> eig(symmetric, Eigen::EigenvaluesOnly);
  return eig.eigenvalues()(0);
}

double inf_norm(const Vector& v) {
  return v.size() == 0 ? 0.0 : v.cwiseAbs().maxCoeff();
}

Vector solve_dense(const Matrix& a, const Vector& b, const char* what) {
  if (a.rows() != a.cols() || a.rows() != b.size()) {
    throw Error(ErrorKind::kDimensionMismatch,
                std::string(what) + ": system dimensions do not match");
  }
  if (a.rows() == 0) return Vector();
  Eigen::PartialPivLU<Matrix> lu(a);
  const double rcond = lu.rcond();
  if (!(rcond >= kMinReciprocalCondition)) {
    throw Error(ErrorKind::kSingularSystem,
                std::string(what) + " is singular (reciprocal condition " +
                    std::to_string(rcond) + ")");
  }
  Vector x = lu.solve(b);
  if (!x.allFinite()) {
    throw Error(ErrorKind::kSingularSystem,
                std::string(what) + " produced a non-finite solution");
  }
  return x;
}

}  // namespace netdesign
