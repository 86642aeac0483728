#pragma once

// Subsets of a ground set of at most 64 elements, stored as bitmasks over the
// ground enumeration. n-subsets are ranked in lexicographic order of their
// sorted index tuples: {0,1} < {0,2} < ... < {1,2} < ...

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace hypersel {

using Subset = std::uint64_t;

inline constexpr int kMaxGround = 64;

/// Exact C(m, n) for 0 <= m <= 64; zero when n < 0 or n > m.
std::uint64_t binomial(int m, int n);

inline int cardinality(Subset s) { return std::popcount(s); }

inline bool contains(Subset s, int element) { return (s >> element) & 1u; }

inline Subset singleton(int element) { return Subset{1} << element; }

inline Subset full_subset(int m) {
  return m >= 64 ? ~Subset{0} : (Subset{1} << m) - 1;
}

std::vector<int> members(Subset s);

Subset subset_of(std::span<const int> elements);

/// Lexicographic rank of s among all |s|-subsets of {0..m-1}.
std::uint64_t subset_rank(Subset s, int m);

/// Inverse of subset_rank.
Subset subset_unrank(std::uint64_t rank, int m, int n);

/// All n-subsets of {0..m-1} in rank order.
std::vector<Subset> all_subsets(int m, int n);

/// Calls fn(subset) for every n-subset of {0..m-1} in rank order.
template <class Fn>
void for_each_subset(int m, int n, Fn&& fn) {
  if (n < 0 || n > m) return;
  if (n == 0) {
    fn(Subset{0});
    return;
  }
  std::vector<int> idx(n);
  for (int i = 0; i < n; ++i) idx[i] = i;
  while (true) {
    Subset s = 0;
    for (int v : idx) s |= singleton(v);
    fn(s);
    int i = n - 1;
    while (i >= 0 && idx[i] == m - n + i) --i;
    if (i < 0) return;
    ++idx[i];
    for (int j = i + 1; j < n; ++j) idx[j] = idx[j - 1] + 1;
  }
}

/// Re-expresses a subset of {0..|within|-1} (positions inside `within`) as a
/// subset of the enclosing ground set.
Subset lift(Subset local, Subset within);

/// Inverse of lift: positions of `s`'s elements inside `within`.
Subset project(Subset s, Subset within);

}  // namespace hypersel
