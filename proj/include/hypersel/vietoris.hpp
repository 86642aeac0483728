#pragma once

// Finite exact-rational models of the Vietoris layer. The space is the
// rational line; opens are finite families of pairwise-disjoint open
// intervals; a model is a finite sample of points carrying a partial
// selection. Finite Hausdorff spaces are discrete, so continuity is only
// meaningful relative to the sample: a model selection is judged continuous
// at a sampled set when shrinking neighborhoods reach a relation-preserving
// family before a fixed radius floor.

#include <algorithm>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "hypersel/extension.hpp"

namespace hypersel {

using Rational = boost::multiprecision::cpp_rational;

/// "p/q" or "p", optional leading '-', no decimals.
Rational parse_rational(const std::string& text);
/// Always "p/q" in lowest terms with q > 0.
std::string format_rational(const Rational& value);

class IntervalOpen {
 public:
  IntervalOpen(Rational lo, Rational hi);

  const Rational& lo() const { return lo_; }
  const Rational& hi() const { return hi_; }

  bool contains(const Rational& p) const { return lo_ < p && p < hi_; }
  bool meets(const IntervalOpen& other) const {
    return std::max(lo_, other.lo_) < std::min(hi_, other.hi_);
  }

  bool operator==(const IntervalOpen& other) const = default;

 private:
  Rational lo_;
  Rational hi_;
};

class OpenFamily {
 public:
  OpenFamily() = default;
  explicit OpenFamily(std::vector<IntervalOpen> members);

  int size() const { return static_cast<int>(members_.size()); }
  const std::vector<IntervalOpen>& members() const { return members_; }
  const IntervalOpen& operator[](int i) const { return members_.at(i); }

  std::optional<int> member_containing(const Rational& p) const;
  std::optional<int> index_of(const IntervalOpen& v) const;

  bool operator==(const OpenFamily& other) const = default;

 private:
  std::vector<IntervalOpen> members_;
};

class ModelSpace {
 public:
  /// selection's carrier index i corresponds to points[i].
  ModelSpace(std::vector<Rational> points, PartialSelection selection);

  /// Carrier labels are the formatted points; the choice is by value.
  static ModelSpace from_order(std::vector<Rational> points, int bound, OrderRule rule);

  const std::vector<Rational>& points() const { return points_; }
  const PartialSelection& selection() const { return selection_; }
  int size() const { return static_cast<int>(points_.size()); }

  /// Sample points inside v, as a mask over the points.
  Subset points_in(const IntervalOpen& v) const;
  /// Sample points inside the union of the family.
  Subset points_in(const OpenFamily& family) const;

 private:
  std::vector<Rational> points_;
  PartialSelection selection_;
};

GroundSet point_labels(std::span<const Rational> points);

bool vietoris_contains(const OpenFamily& family, std::span<const Rational> set);
bool vietoris_contains(const OpenFamily& family, const ModelSpace& model, Subset set);

/// Sampled members of <family>: sets holding exactly one sample point in
/// each member. Calls fn(mask) for each; kNoTransversal when a member holds
/// no sample point.
void for_each_transversal(const ModelSpace& model, const OpenFamily& family,
                          const std::function<bool(Subset)>& fn);

/// family => v: every sampled transversal of the family selects into v.
bool arrows_to(const ModelSpace& model, const OpenFamily& family, const IntervalOpen& v);

struct RelationCheck {
  bool preserved = true;
  int arity = 0;                       // arity of the failing subfamily
  std::vector<int> witness_subfamily;  // member indices
};

/// Every n-subfamily has a => target.
RelationCheck preserves_relations(const ModelSpace& model, const OpenFamily& family, int n);

/// Every admissible arity 0 < i <= min(bound, |family|).
RelationCheck preserves_relations_all(const ModelSpace& model, const OpenFamily& family);

inline constexpr int kRadiusHalvings = 40;

struct Neighborhoods {
  OpenFamily family;  // member i is centered at the i-th point of the set
  Rational radius;
  int halvings = 0;
};

/// Centered intervals around the points of `set` (carrier order), starting
/// at half the minimum pairwise gap and halving until the family preserves
/// relations at every requested arity. Gives up with kNotModelContinuous
/// below 2^-40 of the starting radius.
Neighborhoods find_preserving_neighborhoods(const ModelSpace& model, Subset set,
                                            std::span<const int> arities);

/// The fixed radius schedule: the starting radius for `set`.
Rational initial_radius(const ModelSpace& model, Subset set);

OpenFamily centered_family(const ModelSpace& model, Subset set, const Rational& radius);

struct ContinuityVerdict {
  bool continuous = true;
  std::optional<Subset> witness;
};

/// find_preserving_neighborhoods succeeds at the set's own arity for every
/// set in the selection's domain.
ContinuityVerdict check_continuity(const ModelSpace& model);

/// <a> and <b> share a member: the bipartite meeting graph of the two
/// families has no isolated member.
bool intersect_nonempty(const OpenFamily& a, const OpenFamily& b);

}  // namespace hypersel
