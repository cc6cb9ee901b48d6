#include "dset/error.hpp"

namespace dset {

const char* error_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NonPrimitiveModulus: return "NonPrimitiveModulus";
    case ErrorCode::CrossField: return "CrossField";
    case ErrorCode::LiftFailure: return "LiftFailure";
    case ErrorCode::EmptyOrders: return "EmptyOrders";
    case ErrorCode::NotHomomorphism: return "NotHomomorphism";
    case ErrorCode::NotBijective: return "NotBijective";
    case ErrorCode::ClosureOverflow: return "ClosureOverflow";
    case ErrorCode::NotASubgroupMember: return "NotASubgroupMember";
    case ErrorCode::InvalidDesign: return "InvalidDesign";
    case ErrorCode::ParameterMismatch: return "ParameterMismatch";
    case ErrorCode::NotClosedUnderInverse: return "NotClosedUnderInverse";
    case ErrorCode::ForbiddenNotSubgroup: return "ForbiddenNotSubgroup";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::NotSRG: return "NotSRG";
    case ErrorCode::DesignNotFixed: return "DesignNotFixed";
    case ErrorCode::ConditionsFailed: return "ConditionsFailed";
    case ErrorCode::NotReversible: return "NotReversible";
    case ErrorCode::IndexNotTwo: return "IndexNotTwo";
    case ErrorCode::DecompositionFailure: return "DecompositionFailure";
    case ErrorCode::TooManyLines: return "TooManyLines";
    case ErrorCode::NotRegular: return "NotRegular";
    case ErrorCode::MultiplierFails: return "MultiplierFails";
    case ErrorCode::NoValidAlpha: return "NoValidAlpha";
    case ErrorCode::PsiDoesNotFixD: return "PsiDoesNotFixD";
    case ErrorCode::AssignmentNotInjective: return "AssignmentNotInjective";
    case ErrorCode::RPlusOneNotTwiceOddPrime: return "RPlusOneNotTwiceOddPrime";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

bool is_math_failure(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument:
    case ErrorCode::EmptyOrders:
    case ErrorCode::TooManyLines:
    case ErrorCode::RPlusOneNotTwiceOddPrime:
    case ErrorCode::ParseError:
    case ErrorCode::CrossField:
      return false;
    default:
      return true;
  }
}

Error::Error(ErrorCode code, const std::string& what)
    : std::runtime_error(std::string(error_name(code)) + ": " + what), code_(code) {}

void fail(ErrorCode code, const std::string& what) { throw Error(code, what); }

}  // namespace dset
