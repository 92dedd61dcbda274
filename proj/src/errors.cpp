#include "robinsym/errors.hpp"

namespace robinsym {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kDimensionInvalid: return "dimension-invalid";
    case ErrorCode::kDimensionMismatch: return "dimension-mismatch";
    case ErrorCode::kRadiusNonPositive: return "radius-non-positive";
    case ErrorCode::kOffsetOutsideBall: return "offset-outside-ball";
    case ErrorCode::kBetaNonPositive: return "beta-non-positive";
    case ErrorCode::kOutsideDomain: return "outside-domain";
    case ErrorCode::kNotOnBoundary: return "not-on-boundary";
    case ErrorCode::kStencilClearance: return "stencil-clearance";
    case ErrorCode::kEmptyDomain: return "empty-domain";
    case ErrorCode::kInvalidArgument: return "invalid-argument";
    case ErrorCode::kNoConvergence: return "no-convergence";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kHypothesisViolation: return "hypothesis-violation";
  }
  return "unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

}  // namespace robinsym
