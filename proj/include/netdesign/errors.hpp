#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace netdesign {

enum class ErrorKind {
  kDimensionMismatch,
  kIndexOutOfRange,
  kInvalidArgument,
  kSingularSystem,
  kMaxItersExceeded,
  kStepSelectionFailed,
  kNoConvergence,
  kInfeasibleDesign,
  kNoSolutionFound,
  kTooLarge,
  kNotSymmetric,
  kInsufficientData,
  kNotAnEquilibrium,
  kGammaEvaluation,
  kParse,
};

std::string_view to_string(ErrorKind kind);

// Base of every error raised by the library. Callers switch on kind() rather
// than on the dynamic type.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace netdesign
