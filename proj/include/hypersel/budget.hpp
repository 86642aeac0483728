#pragma once

#include <cstdint>
#include <string>

#include "hypersel/error.hpp"

namespace hypersel {

inline constexpr std::uint64_t kDefaultBudget = 100'000'000;

/// Counts units of work (table cells touched, search nodes) against a hard
/// cap and raises kBudgetExceeded the moment the cap is crossed.
class WorkBudget {
 public:
  explicit WorkBudget(std::uint64_t limit = kDefaultBudget, std::string what = "work")
      : limit_(limit), what_(std::move(what)) {}

  void charge(std::uint64_t units) {
    used_ += units;
    if (used_ > limit_) {
      fail(ErrorCode::kBudgetExceeded,
           what_ + " exceeded budget of " + std::to_string(limit_));
    }
  }

  std::uint64_t used() const { return used_; }
  std::uint64_t limit() const { return limit_; }

 private:
  std::uint64_t limit_;
  std::uint64_t used_ = 0;
  std::string what_;
};

/// a * b saturating at UINT64_MAX.
inline std::uint64_t saturating_mul(std::uint64_t a, std::uint64_t b) {
  if (a != 0 && b > UINT64_MAX / a) return UINT64_MAX;
  return a * b;
}

}  // namespace hypersel
