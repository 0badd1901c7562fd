#pragma once

#include <stdexcept>
#include <string>

namespace zq {

enum class ErrorCode {
  InvalidMode,
  InvalidTriple,
  Domain,
  Capacity,
  Convergence,
  EmptyState,
  DegenerateInput,
  EigensolverFailure,
  InvalidArgument,
  Parse,
  Coverage,
  Io,
};

// Base of everything the library throws. The code survives the trip across
// the C boundary; the message is for humans.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

template <ErrorCode C>
class TypedError : public Error {
 public:
  explicit TypedError(const std::string& what) : Error(C, what) {}
};

using InvalidMode = TypedError<ErrorCode::InvalidMode>;
using InvalidTriple = TypedError<ErrorCode::InvalidTriple>;
using DomainError = TypedError<ErrorCode::Domain>;
using CapacityError = TypedError<ErrorCode::Capacity>;
using ConvergenceError = TypedError<ErrorCode::Convergence>;
using EmptyState = TypedError<ErrorCode::EmptyState>;
using DegenerateInput = TypedError<ErrorCode::DegenerateInput>;
using EigensolverFailure = TypedError<ErrorCode::EigensolverFailure>;
using InvalidArgument = TypedError<ErrorCode::InvalidArgument>;
using ParseError = TypedError<ErrorCode::Parse>;
using CoverageError = TypedError<ErrorCode::Coverage>;
using IoError = TypedError<ErrorCode::Io>;

}  // namespace zq
