#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace hypersel {

enum class ErrorCode {
  kInvalidArgument,
  kMalformedDocument,
  kMissingSubset,
  kChoiceOutsideSubset,
  kDuplicateLabel,
  kEvenGround,
  kNotRegular,
  kNotArityTwo,
  kSizeMismatch,
  kArityMismatch,
  kBudgetExceeded,
  kNotPrime,
  kOutOfRange,
  kArityNotInDomain,
  kRegularInput,
  kHypothesisViolated,
  kPrimeInput,
  kNotIso,
  kNotAMember,
  kNoTransversal,
  kNotModelContinuous,
  kBrokenLink,
  kNotNice,
  kNonBijectiveTransfer,
  kPreconditionUnverified,
  kInternal,
};

std::string_view to_string(ErrorCode code);

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can dispatch without parsing text.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

inline void require(bool condition, ErrorCode code, const std::string& what) {
  if (!condition) fail(code, what);
}

}  // namespace hypersel
