#pragma once

#include <stdexcept>
#include <string>

namespace dset {

enum class ErrorCode {
  InvalidArgument,
  NonPrimitiveModulus,
  CrossField,
  LiftFailure,
  EmptyOrders,
  NotHomomorphism,
  NotBijective,
  ClosureOverflow,
  NotASubgroupMember,
  InvalidDesign,
  ParameterMismatch,
  NotClosedUnderInverse,
  ForbiddenNotSubgroup,
  NotCoprime,
  NotSRG,
  DesignNotFixed,
  ConditionsFailed,
  NotReversible,
  IndexNotTwo,
  DecompositionFailure,
  TooManyLines,
  NotRegular,
  MultiplierFails,
  NoValidAlpha,
  PsiDoesNotFixD,
  AssignmentNotInjective,
  RPlusOneNotTwiceOddPrime,
  ParseError,
};

const char* error_name(ErrorCode code);

// True for failures of a mathematical claim, as opposed to bad input.
bool is_math_failure(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] void fail(ErrorCode code, const std::string& what);

}  // namespace dset
