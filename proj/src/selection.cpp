#include "hypersel/selection.hpp"

#include <algorithm>
#include <set>

#include "hypersel/error.hpp"

namespace hypersel {

// ---------------------------------------------------------------- GroundSet

GroundSet::GroundSet(std::vector<std::string> labels) : labels_(std::move(labels)) {
  require(static_cast<int>(labels_.size()) <= kMaxGround, ErrorCode::kOutOfRange,
          "ground sets hold at most 64 labels");
  index_.reserve(labels_.size());
  for (int i = 0; i < size(); ++i) {
    auto [it, inserted] = index_.emplace(labels_[i], i);
    require(inserted, ErrorCode::kDuplicateLabel, "label '" + labels_[i] + "' repeated");
  }
}

GroundSet GroundSet::range(int m) {
  std::vector<std::string> labels;
  labels.reserve(m);
  for (int i = 0; i < m; ++i) labels.push_back(std::to_string(i));
  return GroundSet(std::move(labels));
}

std::optional<int> GroundSet::find(const std::string& label) const {
  auto it = index_.find(label);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

int GroundSet::index_of(const std::string& label) const {
  auto idx = find(label);
  if (!idx) fail(ErrorCode::kInvalidArgument, "unknown label '" + label + "'");
  return *idx;
}

std::vector<std::string> GroundSet::labels_of(Subset s) const {
  std::vector<std::string> out;
  for (int i : members(s)) out.push_back(labels_.at(i));
  return out;
}

GroundSet GroundSet::induced(Subset s) const { return GroundSet(labels_of(s)); }

// ------------------------------------------------------- SelectionStructure

SelectionStructure::SelectionStructure(GroundSet ground, int arity, std::vector<int> picks)
    : ground_(std::move(ground)), arity_(arity), picks_(std::move(picks)) {
  const int m = ground_.size();
  require(arity_ >= 1 && arity_ <= m, ErrorCode::kInvalidArgument,
          "arity must satisfy 1 <= n <= |ground|");
  require(picks_.size() == binomial(m, arity_), ErrorCode::kMissingSubset,
          "table must cover all C(m,n) subsets");
  std::uint64_t rank = 0;
  for_each_subset(m, arity_, [&](Subset s) {
    const int p = picks_[rank];
    if (p < 0 || p >= m || !contains(s, p)) {
      fail(ErrorCode::kChoiceOutsideSubset,
           "pick at rank " + std::to_string(rank) + " is not a member of its subset");
    }
    ++rank;
  });
}

int SelectionStructure::pick(Subset s) const {
  require(cardinality(s) == arity_, ErrorCode::kInvalidArgument, "subset size differs from arity");
  require((s & ~full_subset(size())) == 0, ErrorCode::kInvalidArgument, "subset outside ground");
  return picks_[subset_rank(s, size())];
}

Subset ScoreProfile::level(std::int64_t k) const {
  auto it = classes.find(k);
  return it == classes.end() ? Subset{0} : it->second;
}

// ------------------------------------------------------------------- IsoMap

IsoMap::IsoMap(GroundSet source, GroundSet target, std::vector<int> map)
    : source_(std::move(source)), target_(std::move(target)), map_(std::move(map)) {
  require(source_.size() == target_.size(), ErrorCode::kSizeMismatch,
          "isomorphism grounds differ in size");
  require(static_cast<int>(map_.size()) == source_.size(), ErrorCode::kInvalidArgument,
          "map length differs from ground size");
  std::vector<bool> hit(map_.size(), false);
  for (int v : map_) {
    require(v >= 0 && v < target_.size() && !hit[v], ErrorCode::kInvalidArgument,
            "map is not a bijection");
    hit[v] = true;
  }
}

IsoMap IsoMap::identity(const GroundSet& ground) {
  std::vector<int> map(ground.size());
  for (int i = 0; i < ground.size(); ++i) map[i] = i;
  return IsoMap(ground, ground, std::move(map));
}

Subset IsoMap::apply(Subset s) const {
  Subset out = 0;
  for (int x : members(s)) out |= singleton(map_.at(x));
  return out;
}

IsoMap IsoMap::inverse() const {
  std::vector<int> inv(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) inv[map_[i]] = static_cast<int>(i);
  return IsoMap(target_, source_, std::move(inv));
}

IsoMap IsoMap::then(const IsoMap& next) const {
  require(target_ == next.source_, ErrorCode::kInvalidArgument, "composition grounds differ");
  std::vector<int> out(map_.size());
  for (std::size_t i = 0; i < map_.size(); ++i) out[i] = next.map_[map_[i]];
  return IsoMap(source_, next.target_, std::move(out));
}

// --------------------------------------------------------------- operations

SelectionStructure make_selection(GroundSet ground, int n, std::span<const Choice> table) {
  const int m = ground.size();
  require(n >= 1 && n <= m, ErrorCode::kInvalidArgument, "arity must satisfy 1 <= n <= |ground|");
  std::vector<int> picks(binomial(m, n), -1);
  for (const auto& [labels, chosen] : table) {
    Subset s = 0;
    for (const auto& l : labels) {
      const int idx = ground.index_of(l);
      require(!contains(s, idx), ErrorCode::kInvalidArgument, "subset repeats label '" + l + "'");
      s |= singleton(idx);
    }
    require(cardinality(s) == n, ErrorCode::kInvalidArgument, "subset size differs from arity");
    auto pick = ground.find(chosen);
    if (!pick || !contains(s, *pick)) {
      fail(ErrorCode::kChoiceOutsideSubset, "pick '" + chosen + "' is not in its subset");
    }
    auto& slot = picks[subset_rank(s, m)];
    require(slot == -1 || slot == *pick, ErrorCode::kInvalidArgument,
            "subset listed twice with different picks");
    slot = *pick;
  }
  for (std::size_t r = 0; r < picks.size(); ++r) {
    if (picks[r] == -1) {
      auto missing = ground.labels_of(subset_unrank(r, m, n));
      std::string text;
      for (const auto& l : missing) text += (text.empty() ? "" : ",") + l;
      fail(ErrorCode::kMissingSubset, "no choice for {" + text + "}");
    }
  }
  return SelectionStructure(std::move(ground), n, std::move(picks));
}

SelectionStructure selection_from_order(GroundSet ground, int n, OrderRule rule) {
  const int m = ground.size();
  require(n >= 1 && n <= m, ErrorCode::kInvalidArgument, "arity must satisfy 1 <= n <= |ground|");
  std::vector<int> picks;
  picks.reserve(binomial(m, n));
  for_each_subset(m, n, [&](Subset s) {
    picks.push_back(rule == OrderRule::kMin ? std::countr_zero(s) : 63 - std::countl_zero(s));
  });
  return SelectionStructure(std::move(ground), n, std::move(picks));
}

SelectionStructure rotational_tournament(int m) {
  require(m >= 3, ErrorCode::kInvalidArgument, "rotational tournament needs m >= 3");
  require(m % 2 == 1, ErrorCode::kEvenGround, "rotational tournament needs odd m");
  std::vector<int> picks;
  picks.reserve(binomial(m, 2));
  for_each_subset(m, 2, [&](Subset s) {
    const int i = std::countr_zero(s);
    const int j = 63 - std::countl_zero(s);
    picks.push_back((j - i) % m <= (m - 1) / 2 ? j : i);
  });
  return SelectionStructure(GroundSet::range(m), 2, std::move(picks));
}

ScoreProfile score(const SelectionStructure& s) {
  ScoreProfile profile;
  profile.scores.assign(s.size(), 0);
  for (int p : s.picks()) ++profile.scores[p];
  for (int x = 0; x < s.size(); ++x) profile.classes[profile.scores[x]] |= singleton(x);
  return profile;
}

bool is_regular(const SelectionStructure& s) { return score(s).classes.size() == 1; }

std::optional<std::pair<int, int>> check_cycle_property(const SelectionStructure& s) {
  require(s.arity() == 2, ErrorCode::kNotArityTwo, "cycle property is defined for tournaments");
  require(is_regular(s), ErrorCode::kNotRegular, "cycle property needs a regular tournament");
  const int m = s.size();
  auto beats = [&](int winner, int loser) {
    return s.pick(singleton(winner) | singleton(loser)) == winner;
  };
  std::optional<std::pair<int, int>> offending;
  for_each_subset(m, 2, [&](Subset pair) {
    if (offending) return;
    const int y = s.pick(pair);
    const int x = std::countr_zero(pair & ~singleton(y));
    bool closed = false;
    for (int z = 0; z < m && !closed; ++z) {
      if (z == x || z == y) continue;
      closed = beats(z, y) && beats(x, z);
    }
    if (!closed) offending = std::make_pair(x, y);
  });
  return offending;
}

bool is_isomorphism(const SelectionStructure& s, const SelectionStructure& t, const IsoMap& phi) {
  require(s.size() == t.size(), ErrorCode::kSizeMismatch, "structures differ in ground size");
  require(s.arity() == t.arity(), ErrorCode::kArityMismatch, "structures differ in arity");
  require(phi.source() == s.ground() && phi.target() == t.ground(), ErrorCode::kInvalidArgument,
          "isomorphism grounds do not match the structures");
  bool ok = true;
  std::uint64_t rank = 0;
  for_each_subset(s.size(), s.arity(), [&](Subset x) {
    if (ok) ok = t.pick(phi.apply(x)) == phi(s.pick_at_rank(rank));
    ++rank;
  });
  return ok;
}

}  // namespace hypersel
