#pragma once

// Exact certificates for the divisibility obstruction to regular selection
// structures: a structure on m points with constant score exists only if m
// divides C(m,n), and for a prime p dividing m it never does.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypersel/budget.hpp"
#include "hypersel/selection.hpp"

namespace hypersel {

using BigInt = boost::multiprecision::cpp_int;

BigInt binomial_exact(std::int64_t m, std::int64_t n);

bool is_prime(std::int64_t p);

/// Least prime dividing n (n >= 2).
std::int64_t least_prime_divisor(std::int64_t n);

enum class Verdict { kRegularImpossible, kRegularUnobstructed };

std::string to_string(Verdict v);

struct ObstructionCertificate {
  std::int64_t m = 0;
  std::int64_t p = 0;
  BigInt binom;                  // C(m, p)
  bool divisible_by_m = false;   // m | C(m, p)
  std::int64_t lucas_residue = 0;  // C(m-1, p-1) mod p
  bool identity_holds = false;   // p*C(m,p) == m*C(m-1,p-1)
  Verdict verdict = Verdict::kRegularUnobstructed;
};

/// C(m,n)/m when m divides C(m,n), else nullopt.
std::optional<BigInt> regular_score_value(std::int64_t m, std::int64_t n);

ObstructionCertificate prime_obstruction_holds(std::int64_t m, std::int64_t p);

enum class SearchStatus { kFound, kProvenNone };

std::string to_string(SearchStatus s);

struct RegularSearchResult {
  SearchStatus status = SearchStatus::kProvenNone;
  std::optional<SelectionStructure> witness;
  bool immediate = false;      // decided by divisibility alone
  std::uint64_t nodes = 0;     // backtracking nodes visited
};

/// Backtracking search for a constant-score structure on {0..m-1} with arity
/// n. Subsets are assigned in rank order; a branch dies as soon as some score
/// exceeds the target or can no longer reach it. Throws kBudgetExceeded when
/// `budget` nodes are exhausted before the search space is closed, which is
/// distinct from a proven none.
RegularSearchResult search_regular(int m, int n, std::uint64_t budget = kDefaultBudget);

struct ObstructionRow {
  ObstructionCertificate certificate;
  std::string search_status;  // "found", "proven-none" or "incomplete"
};

/// One row per prime p and m in [2, max_m] with p | m and p < m, plus the
/// base row (2, 2); ordered by m then p.
std::vector<ObstructionRow> obstruction_table(std::int64_t max_m);

/// Tab-separated, header row, LF endings.
void write_obstruction_tsv(std::ostream& out, const std::vector<ObstructionRow>& rows);

}  // namespace hypersel
