#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace robinsym {

/// Diagnostic codes carried by every error thrown from the library.
enum class ErrorCode {
  kDimensionInvalid,
  kDimensionMismatch,
  kRadiusNonPositive,
  kOffsetOutsideBall,
  kBetaNonPositive,
  kOutsideDomain,
  kNotOnBoundary,
  kStencilClearance,
  kEmptyDomain,
  kInvalidArgument,
  kNoConvergence,
  kDivergence,
  kHypothesisViolation,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace robinsym
