#include "hypersel/subsets.hpp"

#include <array>

#include "hypersel/error.hpp"

namespace hypersel {
namespace {

using BinomialTable = std::array<std::array<std::uint64_t, 65>, 65>;

constexpr BinomialTable make_table() {
  BinomialTable t{};
  for (int m = 0; m <= 64; ++m) {
    t[m][0] = 1;
    for (int n = 1; n <= m; ++n) t[m][n] = t[m - 1][n - 1] + t[m - 1][n];
  }
  return t;
}

constexpr BinomialTable kBinomials = make_table();

}  // namespace

std::uint64_t binomial(int m, int n) {
  if (m < 0 || m > 64) fail(ErrorCode::kOutOfRange, "binomial table covers m <= 64");
  if (n < 0 || n > m) return 0;
  return kBinomials[m][n];
}

std::vector<int> members(Subset s) {
  std::vector<int> out;
  out.reserve(cardinality(s));
  while (s != 0) {
    out.push_back(std::countr_zero(s));
    s &= s - 1;
  }
  return out;
}

Subset subset_of(std::span<const int> elements) {
  Subset s = 0;
  for (int e : elements) {
    require(e >= 0 && e < kMaxGround, ErrorCode::kOutOfRange, "element index");
    s |= singleton(e);
  }
  return s;
}

// Lex order on sorted tuples c is the reverse of colex order on the reflected
// tuple d = m-1-c, whose colex rank is sum C(d_i, i+1).
std::uint64_t subset_rank(Subset s, int m) {
  const int n = cardinality(s);
  std::uint64_t colex = 0;
  int i = 0;
  for (int c = m - 1; c >= 0; --c) {
    if (contains(s, c)) {
      colex += kBinomials[m - 1 - c][i + 1];
      ++i;
    }
  }
  return kBinomials[m][n] - 1 - colex;
}

Subset subset_unrank(std::uint64_t rank, int m, int n) {
  require(n >= 0 && n <= m && m <= kMaxGround, ErrorCode::kOutOfRange, "unrank arity");
  require(rank < kBinomials[m][n], ErrorCode::kOutOfRange, "unrank rank");
  Subset s = 0;
  int next = 0;
  for (int i = 0; i < n; ++i) {
    // Walk candidates for position i; each candidate c covers C(m-1-c, n-1-i)
    // subsets.
    for (int c = next;; ++c) {
      std::uint64_t block = kBinomials[m - 1 - c][n - 1 - i];
      if (rank < block) {
        s |= singleton(c);
        next = c + 1;
        break;
      }
      rank -= block;
    }
  }
  return s;
}

std::vector<Subset> all_subsets(int m, int n) {
  std::vector<Subset> out;
  if (n >= 0 && n <= m) out.reserve(binomial(m, n));
  for_each_subset(m, n, [&](Subset s) { out.push_back(s); });
  return out;
}

Subset lift(Subset local, Subset within) {
  Subset out = 0;
  int pos = 0;
  for (int e : members(within)) {
    if (contains(local, pos)) out |= singleton(e);
    ++pos;
  }
  return out;
}

Subset project(Subset s, Subset within) {
  Subset out = 0;
  int pos = 0;
  for (int e : members(within)) {
    if (contains(s, e)) out |= singleton(pos);
    ++pos;
  }
  return out;
}

}  // namespace hypersel
