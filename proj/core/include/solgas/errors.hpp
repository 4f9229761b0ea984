#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace solgas {

enum class ErrorCode {
  Pole,
  Truncation,
  Size,
  Coincidence,
  Domain,
  Mode,
  Range,
  Unsupported,
  Degenerate,
  Contour,
  NonConvergence,
  Rank,
  Validation,
};

std::string_view error_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

template <ErrorCode Code>
class CodedError : public Error {
 public:
  explicit CodedError(const std::string& message) : Error(Code, message) {}
};

using PoleError = CodedError<ErrorCode::Pole>;
using TruncationError = CodedError<ErrorCode::Truncation>;
using SizeError = CodedError<ErrorCode::Size>;
using CoincidenceError = CodedError<ErrorCode::Coincidence>;
using DomainError = CodedError<ErrorCode::Domain>;
using ModeError = CodedError<ErrorCode::Mode>;
using RangeError = CodedError<ErrorCode::Range>;
using UnsupportedError = CodedError<ErrorCode::Unsupported>;
using DegenerateError = CodedError<ErrorCode::Degenerate>;
using ContourError = CodedError<ErrorCode::Contour>;
using NonConvergenceError = CodedError<ErrorCode::NonConvergence>;
using RankError = CodedError<ErrorCode::Rank>;
using ValidationError = CodedError<ErrorCode::Validation>;

}  // namespace solgas
