#include "solgas/errors.hpp"

namespace solgas {

std::string_view error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::Pole: return "PoleError";
    case ErrorCode::Truncation: return "TruncationError";
    case ErrorCode::Size: return "SizeError";
    case ErrorCode::Coincidence: return "CoincidenceError";
    case ErrorCode::Domain: return "DomainError";
    case ErrorCode::Mode: return "ModeError";
    case ErrorCode::Range: return "RangeError";
    case ErrorCode::Unsupported: return "UnsupportedError";
    case ErrorCode::Degenerate: return "DegenerateError";
    case ErrorCode::Contour: return "ContourError";
    case ErrorCode::NonConvergence: return "NonConvergenceError";
    case ErrorCode::Rank: return "RankError";
    case ErrorCode::Validation: return "ValidationError";
  }
  return "Error";
}

}  // namespace solgas
