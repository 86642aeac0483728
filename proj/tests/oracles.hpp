#pragma once

// Independent brute-force oracles used by the unit and acceptance tests.
// Nothing here calls the code paths it is meant to check.

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

#include "hypersel/chains.hpp"
#include "hypersel/extension.hpp"
#include "hypersel/selection.hpp"
#include "hypersel/vietoris.hpp"

namespace oracle {

using hypersel::Subset;

inline Subset image(Subset s, const std::vector<int>& perm) {
  Subset out = 0;
  for (int i = 0; i < 64; ++i) {
    if ((s >> i) & 1u) out |= Subset{1} << perm[i];
  }
  return out;
}

// T with T(perm[s]) = perm(S(s)), on ground 0..m-1.
inline hypersel::SelectionStructure relabel(const hypersel::SelectionStructure& s,
                                            const std::vector<int>& perm) {
  const int m = s.size();
  const int n = s.arity();
  std::vector<int> picks(hypersel::binomial(m, n), -1);
  hypersel::for_each_subset(m, n, [&](Subset x) {
    picks[hypersel::subset_rank(image(x, perm), m)] = perm[s.pick(x)];
  });
  return hypersel::SelectionStructure(hypersel::GroundSet::range(m), n, std::move(picks));
}

inline bool maps_onto(const hypersel::SelectionStructure& s, const hypersel::SelectionStructure& t,
                      const std::vector<int>& perm) {
  bool ok = true;
  hypersel::for_each_subset(s.size(), s.arity(), [&](Subset x) {
    if (ok && t.pick(image(x, perm)) != perm[s.pick(x)]) ok = false;
  });
  return ok;
}

// Tries all m! bijections.
inline bool isomorphic(const hypersel::SelectionStructure& s,
                       const hypersel::SelectionStructure& t) {
  if (s.size() != t.size() || s.arity() != t.arity()) return false;
  std::vector<int> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  do {
    if (maps_onto(s, t, perm)) return true;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return false;
}

inline int automorphism_count(const hypersel::SelectionStructure& s) {
  std::vector<int> perm(s.size());
  std::iota(perm.begin(), perm.end(), 0);
  int count = 0;
  do {
    if (maps_onto(s, s, perm)) ++count;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return count;
}

inline std::vector<std::int64_t> wins(const hypersel::SelectionStructure& s) {
  std::vector<std::int64_t> w(s.size(), 0);
  hypersel::for_each_subset(s.size(), s.arity(), [&](Subset x) { ++w[s.pick(x)]; });
  return w;
}

// h(x) straight from the formula: scores of f's n-restriction to x, least
// score whose level class is nonempty with at most m/2 elements, f on it.
inline int extension_value(const hypersel::PartialSelection& f, Subset x, int n) {
  const int m = std::popcount(x);
  std::map<int, int> score;  // carrier index -> wins inside x
  for (int i = 0; i < 64; ++i) {
    if ((x >> i) & 1u) score[i] = 0;
  }
  // n-subsets of x by brute force over all submasks.
  for (Subset sub = x; sub != 0; sub = (sub - 1) & x) {
    if (std::popcount(sub) == n) ++score[f.pick(sub)];
  }
  std::map<int, Subset> levels;
  for (auto [v, w] : score) levels[w] |= Subset{1} << v;
  for (auto [w, q] : levels) {
    if (2 * std::popcount(q) <= m) return f.pick(q);
  }
  return -1;
}

// <a> ∩ <b> nonempty by grid search: the grid points in both unions, checked
// for meeting every member of both families. Valid when all endpoints lie on
// the grid 1/denominator and the grid is refined by 2.
inline bool grid_intersect(const hypersel::OpenFamily& a, const hypersel::OpenFamily& b,
                           const hypersel::Rational& lo, const hypersel::Rational& hi,
                           const hypersel::Rational& step) {
  if (a.size() == 0 || b.size() == 0) return false;
  std::vector<hypersel::Rational> common;
  for (hypersel::Rational x = lo; x <= hi; x += step) {
    if (a.member_containing(x) && b.member_containing(x)) common.push_back(x);
  }
  auto hits_all = [&](const hypersel::OpenFamily& fam) {
    for (const auto& v : fam.members()) {
      if (std::none_of(common.begin(), common.end(),
                       [&](const hypersel::Rational& x) { return v.contains(x); })) {
        return false;
      }
    }
    return true;
  };
  return !common.empty() && hits_all(a) && hits_all(b);
}

// Niceness condition 2 by explicit chain enumeration: all walks of length
// 1..max_len in the link graph; walks between the same endpoints must agree.
inline bool chains_agree(const hypersel::FamilySystem& system, int max_len) {
  const auto links = hypersel::link_graph(system);
  const int k = static_cast<int>(system.families.size());
  std::map<std::pair<int, int>, std::set<std::vector<int>>> transfers;
  struct Walk {
    int end;
    std::vector<int> map;
  };
  for (int start = 0; start < k; ++start) {
    std::vector<int> id(system.family_size());
    std::iota(id.begin(), id.end(), 0);
    std::vector<Walk> frontier{{start, id}};
    for (int len = 1; len <= max_len; ++len) {
      std::vector<Walk> next;
      for (const auto& w : frontier) {
        for (const auto& [edge, meet] : links) {
          if (edge.first != w.end) continue;
          std::vector<int> composed(w.map.size());
          for (std::size_t i = 0; i < w.map.size(); ++i) composed[i] = meet.map[w.map[i]];
          transfers[{start, edge.second}].insert(composed);
          next.push_back({edge.second, std::move(composed)});
        }
      }
      // Walks with equal end and map behave identically from here on.
      std::sort(next.begin(), next.end(), [](const Walk& x, const Walk& y) {
        return std::tie(x.end, x.map) < std::tie(y.end, y.map);
      });
      next.erase(std::unique(next.begin(), next.end(),
                             [](const Walk& x, const Walk& y) {
                               return x.end == y.end && x.map == y.map;
                             }),
                 next.end());
      frontier = std::move(next);
    }
  }
  for (const auto& [pair, maps] : transfers) {
    if (maps.size() > 1) return false;
    // A closed walk must transfer as the identity.
    if (pair.first == pair.second) {
      std::vector<int> id(system.family_size());
      std::iota(id.begin(), id.end(), 0);
      if (*maps.begin() != id) return false;
    }
  }
  return true;
}

inline hypersel::PartialSelection random_selection(const hypersel::GroundSet& carrier, int bound,
                                                   std::mt19937_64& rng) {
  return hypersel::PartialSelection::from_chooser(
      carrier, hypersel::Mode::kUpTo, bound, [&rng](Subset s) {
        std::vector<int> elems;
        for (int i = 0; i < 64; ++i) {
          if ((s >> i) & 1u) elems.push_back(i);
        }
        return elems[std::uniform_int_distribution<std::size_t>(0, elems.size() - 1)(rng)];
      });
}

}  // namespace oracle
