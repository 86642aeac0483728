#include "hypersel/error.hpp"

namespace hypersel {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "InvalidArgument";
    case ErrorCode::kMalformedDocument: return "MalformedDocument";
    case ErrorCode::kMissingSubset: return "MissingSubset";
    case ErrorCode::kChoiceOutsideSubset: return "ChoiceOutsideSubset";
    case ErrorCode::kDuplicateLabel: return "DuplicateLabel";
    case ErrorCode::kEvenGround: return "EvenGround";
    case ErrorCode::kNotRegular: return "NotRegular";
    case ErrorCode::kNotArityTwo: return "NotArityTwo";
    case ErrorCode::kSizeMismatch: return "SizeMismatch";
    case ErrorCode::kArityMismatch: return "ArityMismatch";
    case ErrorCode::kBudgetExceeded: return "BudgetExceeded";
    case ErrorCode::kNotPrime: return "NotPrime";
    case ErrorCode::kOutOfRange: return "OutOfRange";
    case ErrorCode::kArityNotInDomain: return "ArityNotInDomain";
    case ErrorCode::kRegularInput: return "RegularInput";
    case ErrorCode::kHypothesisViolated: return "HypothesisViolated";
    case ErrorCode::kPrimeInput: return "PrimeInput";
    case ErrorCode::kNotIso: return "NotIso";
    case ErrorCode::kNotAMember: return "NotAMember";
    case ErrorCode::kNoTransversal: return "NoTransversal";
    case ErrorCode::kNotModelContinuous: return "NotModelContinuous";
    case ErrorCode::kBrokenLink: return "BrokenLink";
    case ErrorCode::kNotNice: return "NotNice";
    case ErrorCode::kNonBijectiveTransfer: return "NonBijectiveTransfer";
    case ErrorCode::kPreconditionUnverified: return "PreconditionUnverified";
    case ErrorCode::kInternal: return "Internal";
  }
  return "Unknown";
}

}  // namespace hypersel
