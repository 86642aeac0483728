#pragma once

// Finite selection structures (hypertournaments): a total choice function on
// the n-subsets of a finite ground set.

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hypersel/subsets.hpp"

namespace hypersel {

/// Ordered, duplicate-free labels. The label order is the ground enumeration
/// that every subset mask and rank refers to.
class GroundSet {
 public:
  GroundSet() = default;
  explicit GroundSet(std::vector<std::string> labels);

  /// Labels "0", "1", ..., "m-1".
  static GroundSet range(int m);

  int size() const { return static_cast<int>(labels_.size()); }
  const std::string& label(int index) const { return labels_.at(index); }
  const std::vector<std::string>& labels() const { return labels_; }

  std::optional<int> find(const std::string& label) const;
  int index_of(const std::string& label) const;  // throws kInvalidArgument

  std::vector<std::string> labels_of(Subset s) const;

  /// The sub-ground induced by s, labels kept in ground order.
  GroundSet induced(Subset s) const;

  bool operator==(const GroundSet& other) const { return labels_ == other.labels_; }

 private:
  std::vector<std::string> labels_;
  std::unordered_map<std::string, int> index_;
};

enum class OrderRule { kMin, kMax };

class SelectionStructure {
 public:
  /// picks[r] is the ground index chosen on the n-subset of rank r.
  /// Validates totality and the selection property.
  SelectionStructure(GroundSet ground, int arity, std::vector<int> picks);

  const GroundSet& ground() const { return ground_; }
  int size() const { return ground_.size(); }
  int arity() const { return arity_; }
  std::size_t num_subsets() const { return picks_.size(); }
  std::span<const int> picks() const { return picks_; }

  int pick(Subset s) const;
  int pick_at_rank(std::uint64_t rank) const { return picks_.at(rank); }

  bool operator==(const SelectionStructure& other) const {
    return arity_ == other.arity_ && ground_ == other.ground_ && picks_ == other.picks_;
  }

 private:
  GroundSet ground_;
  int arity_;
  std::vector<int> picks_;
};

struct ScoreProfile {
  std::vector<std::int64_t> scores;                // W(x), ground order
  std::map<std::int64_t, Subset> classes;          // Q(k), nonempty levels only

  /// Q(k); empty when no element has score k.
  Subset level(std::int64_t k) const;
};

/// A bijection between two equal-size ground sets, by index.
class IsoMap {
 public:
  IsoMap(GroundSet source, GroundSet target, std::vector<int> map);

  static IsoMap identity(const GroundSet& ground);

  const GroundSet& source() const { return source_; }
  const GroundSet& target() const { return target_; }
  std::span<const int> map() const { return map_; }

  int operator()(int x) const { return map_.at(x); }
  Subset apply(Subset s) const;
  IsoMap inverse() const;
  /// (this then next): x -> next(this(x)).
  IsoMap then(const IsoMap& next) const;

  bool operator==(const IsoMap& other) const {
    return source_ == other.source_ && target_ == other.target_ && map_ == other.map_;
  }

 private:
  GroundSet source_;
  GroundSet target_;
  std::vector<int> map_;
};

using Choice = std::pair<std::vector<std::string>, std::string>;

/// Validated constructor from a label-level table.
SelectionStructure make_selection(GroundSet ground, int n, std::span<const Choice> table);

SelectionStructure selection_from_order(GroundSet ground, int n, OrderRule rule);

/// Arity-2 structure on {0..m-1}: {i<j} picks j iff (j-i) mod m <= (m-1)/2.
SelectionStructure rotational_tournament(int m);

ScoreProfile score(const SelectionStructure& s);

bool is_regular(const SelectionStructure& s);

/// For a regular tournament on an odd ground: every x -> y (y picked on {x,y})
/// closes into a 3-cycle y -> z -> x. Returns the first offending (x, y) in
/// rank order, or nullopt when the property holds.
std::optional<std::pair<int, int>> check_cycle_property(const SelectionStructure& s);

bool is_isomorphism(const SelectionStructure& s, const SelectionStructure& t, const IsoMap& phi);

}  // namespace hypersel
