#include "hypersel/canonical.hpp"

#include <algorithm>
#include <set>

#include "hypersel/error.hpp"

namespace hypersel {
namespace {

class CanonicalSearch {
 public:
  CanonicalSearch(const SelectionStructure& s, WorkBudget& budget)
      : s_(s), budget_(budget), m_(s.size()), n_(s.arity()) {
    const auto profile = score(s);
    scores_ = profile.scores;
    // Positions 0.. are filled by descending score blocks.
    for (auto it = profile.classes.rbegin(); it != profile.classes.rend(); ++it) {
      for (int k = 0; k < cardinality(it->second); ++k) block_score_.push_back(it->first);
    }
    // Colex order of n-subsets is numeric mask order; group by the largest
    // element so that position i completes exactly the group by_max_[i].
    by_max_.resize(m_);
    offset_.assign(m_ + 1, 0);
    for (int i = 0; i < m_; ++i) {
      if (i >= n_ - 1) {
        std::vector<Subset> rest = all_subsets(i, n_ - 1);
        std::sort(rest.begin(), rest.end());
        for (Subset r : rest) by_max_[i].push_back(r | singleton(i));
      }
      offset_[i + 1] = offset_[i] + by_max_[i].size();
    }
    cur_.assign(offset_[m_], 0);
    inv_.assign(m_, -1);
    pos_.assign(m_, -1);
  }

  void run() { descend(0, 0); }

  const std::vector<int>& best() const { return best_; }
  const std::vector<int>& best_inv() const { return best_inv_; }

 private:
  // parent_cmp: -1 when the prefix before position `depth` is already smaller
  // than best_, 0 when it is equal.
  void descend(int depth, int parent_cmp) {
    if (depth == m_) {
      if (!have_best_ || parent_cmp < 0) {
        best_ = cur_;
        best_inv_ = inv_;
        have_best_ = true;
        ++generation_;
      }
      return;
    }
    for (int v = 0; v < m_; ++v) {
      if (pos_[v] != -1 || scores_[v] != block_score_[depth]) continue;
      inv_[depth] = v;
      pos_[v] = depth;
      int cmp = have_best_ ? parent_cmp : -1;
      bool pruned = false;
      const auto& group = by_max_[depth];
      budget_.charge(group.size());
      for (std::size_t k = 0; k < group.size(); ++k) {
        Subset original = 0;
        for (int j : members(group[k])) original |= singleton(inv_[j]);
        const int entry = pos_[s_.pick(original)];
        const std::size_t at = offset_[depth] + k;
        cur_[at] = entry;
        if (cmp == 0) {
          if (entry < best_[at]) {
            cmp = -1;
          } else if (entry > best_[at]) {
            pruned = true;
            break;
          }
        }
      }
      if (!pruned) {
        const auto before = generation_;
        descend(depth + 1, cmp);
        // A new best below shares this frame's prefix.
        if (generation_ != before) parent_cmp = 0;
      }
      pos_[v] = -1;
      inv_[depth] = -1;
    }
  }

  const SelectionStructure& s_;
  WorkBudget& budget_;
  int m_;
  int n_;
  std::vector<std::int64_t> scores_;
  std::vector<std::int64_t> block_score_;
  std::vector<std::vector<Subset>> by_max_;
  std::vector<std::size_t> offset_;
  std::vector<int> cur_;
  std::vector<int> inv_;
  std::vector<int> pos_;
  std::vector<int> best_;
  std::vector<int> best_inv_;
  bool have_best_ = false;
  std::uint64_t generation_ = 0;
};

}  // namespace

CanonicalForm canonical_form(const SelectionStructure& s, WorkBudget& budget) {
  CanonicalSearch search(s, budget);
  search.run();
  const auto& inv = search.best_inv();
  const int m = s.size();
  std::vector<int> pos(m);
  for (int i = 0; i < m; ++i) pos[inv[i]] = i;
  std::vector<int> picks;
  picks.reserve(s.num_subsets());
  for_each_subset(m, s.arity(), [&](Subset t) {
    Subset original = 0;
    for (int j : members(t)) original |= singleton(inv[j]);
    picks.push_back(pos[s.pick(original)]);
  });
  GroundSet canon = GroundSet::range(m);
  return CanonicalForm{SelectionStructure(canon, s.arity(), std::move(picks)),
                       IsoMap(s.ground(), canon, std::move(pos))};
}

CanonicalForm canonical_form(const SelectionStructure& s) {
  WorkBudget unlimited(UINT64_MAX, "canonicalization");
  return canonical_form(s, unlimited);
}

std::vector<int> canonical_key(const SelectionStructure& s, WorkBudget& budget) {
  CanonicalSearch search(s, budget);
  search.run();
  return search.best();
}

std::optional<IsoMap> are_isomorphic(const SelectionStructure& s, const SelectionStructure& t) {
  if (s.size() != t.size() || s.arity() != t.arity()) return std::nullopt;
  auto cs = canonical_form(s);
  auto ct = canonical_form(t);
  if (cs.structure.picks().size() != ct.structure.picks().size() ||
      !std::equal(cs.structure.picks().begin(), cs.structure.picks().end(),
                  ct.structure.picks().begin())) {
    return std::nullopt;
  }
  return cs.relabeling.then(ct.relabeling.inverse());
}

std::vector<IsoMap> automorphisms(const SelectionStructure& s) {
  const auto scores = score(s).scores;
  const int m = s.size();
  std::vector<int> map(m, -1);
  std::vector<bool> used(m, false);
  std::vector<IsoMap> out;
  std::function<void(int)> place = [&](int v) {
    if (v == m) {
      IsoMap phi(s.ground(), s.ground(), map);
      if (is_isomorphism(s, s, phi)) out.push_back(std::move(phi));
      return;
    }
    for (int w = 0; w < m; ++w) {
      if (used[w] || scores[w] != scores[v]) continue;
      used[w] = true;
      map[v] = w;
      place(v + 1);
      used[w] = false;
    }
  };
  place(0);
  return out;
}

std::uint64_t labeled_selection_count(int m, int n) {
  require(n >= 1 && n <= m && m <= kMaxGround, ErrorCode::kInvalidArgument,
          "enumeration needs 1 <= n <= m <= 64");
  std::uint64_t count = 1;
  const std::uint64_t digits = binomial(m, n);
  for (std::uint64_t i = 0; i < digits && count != UINT64_MAX; ++i) {
    count = saturating_mul(count, static_cast<std::uint64_t>(n));
  }
  return count;
}

void for_each_labeled_selection(int m, int n, std::uint64_t first, std::uint64_t last,
                                const std::function<void(const SelectionStructure&)>& fn) {
  const std::uint64_t count = labeled_selection_count(m, n);
  require(first <= last && last <= count && count != UINT64_MAX, ErrorCode::kOutOfRange,
          "enumeration range out of bounds");
  if (first == last) return;
  const auto subsets = all_subsets(m, n);
  std::vector<std::vector<int>> elems;
  elems.reserve(subsets.size());
  for (Subset s : subsets) elems.push_back(members(s));
  const std::size_t d = subsets.size();
  // Decode `first`; the last rank is the least significant digit.
  std::vector<int> digit(d, 0);
  std::uint64_t rest = first;
  for (std::size_t r = d; r-- > 0;) {
    digit[r] = static_cast<int>(rest % n);
    rest /= n;
  }
  const GroundSet ground = GroundSet::range(m);
  std::vector<int> picks(d);
  for (std::uint64_t idx = first; idx < last; ++idx) {
    for (std::size_t r = 0; r < d; ++r) picks[r] = elems[r][digit[r]];
    fn(SelectionStructure(ground, n, picks));
    for (std::size_t r = d; r-- > 0;) {
      if (++digit[r] < n) break;
      digit[r] = 0;
    }
  }
}

std::vector<SelectionStructure> enumerate_selections(int m, int n, bool up_to_iso,
                                                     std::uint64_t budget) {
  const std::uint64_t count = labeled_selection_count(m, n);
  const std::uint64_t cells = saturating_mul(count, binomial(m, n));
  if (count == UINT64_MAX || cells > budget) {
    fail(ErrorCode::kBudgetExceeded, "enumerating " + std::to_string(m) + "," +
                                         std::to_string(n) + " touches more than " +
                                         std::to_string(budget) + " cells");
  }
  std::vector<SelectionStructure> out;
  if (!up_to_iso) {
    out.reserve(count);
    for_each_labeled_selection(m, n, 0, count,
                               [&](const SelectionStructure& s) { out.push_back(s); });
    return out;
  }
  WorkBudget work(budget, "isomorphism-class enumeration");
  work.charge(cells);
  std::set<std::vector<int>> seen;
  for_each_labeled_selection(m, n, 0, count, [&](const SelectionStructure& s) {
    if (seen.insert(canonical_key(s, work)).second) {
      out.push_back(canonical_form(s).structure);
    }
  });
  return out;
}

}  // namespace hypersel
