#include "hypersel/obstruction.hpp"

#include <ostream>

#include "hypersel/error.hpp"

namespace hypersel {

BigInt binomial_exact(std::int64_t m, std::int64_t n) {
  if (n < 0 || m < 0 || n > m) return 0;
  n = std::min(n, m - n);
  BigInt result = 1;
  for (std::int64_t i = 1; i <= n; ++i) {
    result *= m - n + i;
    result /= i;  // exact: result is C(m-n+i, i)
  }
  return result;
}

bool is_prime(std::int64_t p) {
  if (p < 2) return false;
  for (std::int64_t d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

std::int64_t least_prime_divisor(std::int64_t n) {
  require(n >= 2, ErrorCode::kInvalidArgument, "least prime divisor needs n >= 2");
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return d;
  }
  return n;
}

std::string to_string(Verdict v) {
  return v == Verdict::kRegularImpossible ? "regular-impossible" : "regular-unobstructed";
}

std::string to_string(SearchStatus s) {
  return s == SearchStatus::kFound ? "found" : "proven-none";
}

std::optional<BigInt> regular_score_value(std::int64_t m, std::int64_t n) {
  require(n >= 1 && n <= m, ErrorCode::kInvalidArgument, "need 1 <= n <= m");
  BigInt b = binomial_exact(m, n);
  if (b % m != 0) return std::nullopt;
  return BigInt(b / m);
}

ObstructionCertificate prime_obstruction_holds(std::int64_t m, std::int64_t p) {
  require(is_prime(p), ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  require(p <= m, ErrorCode::kOutOfRange, "need p <= m");
  ObstructionCertificate c;
  c.m = m;
  c.p = p;
  c.binom = binomial_exact(m, p);
  c.divisible_by_m = (c.binom % m) == 0;
  const BigInt lower = binomial_exact(m - 1, p - 1);
  c.lucas_residue = static_cast<std::int64_t>(lower % p);
  c.identity_holds = BigInt(p) * c.binom == BigInt(m) * lower;
  c.verdict = c.divisible_by_m ? Verdict::kRegularUnobstructed : Verdict::kRegularImpossible;
  return c;
}

namespace {

class RegularSearch {
 public:
  RegularSearch(int m, int n, std::int64_t target, std::uint64_t budget)
      : m_(m), n_(n), target_(target), budget_(budget, "regular search") {
    subsets_ = all_subsets(m, n);
    elems_.reserve(subsets_.size());
    for (Subset s : subsets_) elems_.push_back(members(s));
    scores_.assign(m, 0);
    remaining_.assign(m, static_cast<std::int64_t>(binomial(m - 1, n - 1)));
    picks_.assign(subsets_.size(), -1);
  }

  bool run() { return assign(0); }

  const std::vector<int>& picks() const { return picks_; }
  std::uint64_t nodes() const { return budget_.used(); }

 private:
  bool assign(std::size_t r) {
    budget_.charge(1);
    if (r == subsets_.size()) return true;
    const auto& e = elems_[r];
    for (int x : e) --remaining_[x];
    bool found = false;
    for (int x : e) {
      if (scores_[x] + 1 > target_) continue;
      ++scores_[x];
      bool viable = true;
      for (int y : e) {
        if (scores_[y] + remaining_[y] < target_) {
          viable = false;
          break;
        }
      }
      if (viable) {
        picks_[r] = x;
        found = assign(r + 1);
      }
      --scores_[x];
      if (found) break;
    }
    for (int x : e) ++remaining_[x];
    return found;
  }

  int m_;
  int n_;
  std::int64_t target_;
  WorkBudget budget_;
  std::vector<Subset> subsets_;
  std::vector<std::vector<int>> elems_;
  std::vector<std::int64_t> scores_;
  std::vector<std::int64_t> remaining_;
  std::vector<int> picks_;
};

}  // namespace

RegularSearchResult search_regular(int m, int n, std::uint64_t budget) {
  require(n >= 1 && n <= m, ErrorCode::kInvalidArgument, "need 1 <= n <= m");
  RegularSearchResult result;
  auto target = regular_score_value(m, n);
  if (!target) {
    result.status = SearchStatus::kProvenNone;
    result.immediate = true;
    return result;
  }
  require(m <= kMaxGround, ErrorCode::kOutOfRange, "search covers m <= 64");
  RegularSearch search(m, n, static_cast<std::int64_t>(*target), budget);
  if (search.run()) {
    result.status = SearchStatus::kFound;
    result.witness.emplace(GroundSet::range(m), n, search.picks());
  } else {
    result.status = SearchStatus::kProvenNone;
  }
  result.nodes = search.nodes();
  return result;
}

std::vector<ObstructionRow> obstruction_table(std::int64_t max_m) {
  require(max_m >= 0 && max_m <= 10'000, ErrorCode::kOutOfRange, "table covers max_m <= 10^4");
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p <= max_m; ++p) {
    if (is_prime(p)) primes.push_back(p);
  }
  std::vector<ObstructionRow> rows;
  for (std::int64_t m = 2; m <= max_m; ++m) {
    for (std::int64_t p : primes) {
      if (p > m) break;
      if (m % p != 0) continue;
      // m = p odd prime is the hypothesis case, not an extension instance.
      if (p == m && p != 2) continue;
      ObstructionRow row;
      row.certificate = prime_obstruction_holds(m, p);
      try {
        row.search_status = to_string(
            search_regular(static_cast<int>(m), static_cast<int>(p), 1'000'000).status);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kBudgetExceeded && e.code() != ErrorCode::kOutOfRange) throw;
        row.search_status = "incomplete";
      }
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

void write_obstruction_tsv(std::ostream& out, const std::vector<ObstructionRow>& rows) {
  out << "m\tp\tbinom\tdivisible\tlucas_residue\tsearch_status\n";
  for (const auto& row : rows) {
    const auto& c = row.certificate;
    out << c.m << '\t' << c.p << '\t' << c.binom << '\t' << (c.divisible_by_m ? "true" : "false")
        << '\t' << c.lucas_residue << '\t' << row.search_status << '\n';
  }
}

}  // namespace hypersel
