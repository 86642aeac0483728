#pragma once

// Chains of open families linked by unique-intersection maps, nice family
// systems, and the two directions between nice systems and selections on
// sampled sets whose pair restriction is regular.

#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hypersel/vietoris.hpp"

namespace hypersel {

/// Member map of a unique-intersection link: source member i meets exactly
/// one target member, map[i].
struct MeetMap {
  std::vector<int> map;
  bool bijective = false;
};

using TransferMap = MeetMap;

/// The link a -> b when every member of a meets exactly one member of b.
std::optional<MeetMap> meets_uniquely(const OpenFamily& a, const OpenFamily& b);

/// first then second.
TransferMap compose(const TransferMap& first, const TransferMap& second);

TransferMap identity_transfer(int size);

/// Composed transfer along consecutive links; kBrokenLink when a pair of
/// neighbours is not uniquely meeting.
TransferMap compose_chain(std::span<const OpenFamily> chain);

struct FamilySystem {
  std::vector<OpenFamily> families;  // all of one size
  std::optional<ModelSpace> model;

  int family_size() const { return families.empty() ? 0 : families.front().size(); }
};

/// kInvalidArgument unless every family has the same size.
void validate_system(const FamilySystem& system);

/// Directed unique-intersection links between distinct families of the
/// system, keyed by (from, to).
std::map<std::pair<int, int>, MeetMap> link_graph(const FamilySystem& system);

struct NiceWitness {
  int condition = 0;       // 1: overlapping pair not linked; 2: path dependence
  int from = -1;
  int to = -1;
  std::vector<int> path;   // condition 2: chain from the labeling root through the edge
  std::vector<int> expected;  // propagated label at `to`
  std::vector<int> found;     // label carried across the edge
};

struct NiceVerdict {
  bool nice = true;
  std::optional<NiceWitness> witness;
};

/// Condition 1 checks every ordered pair with overlapping Vietoris opens for
/// a unique-intersection link. Condition 2 labels each family by the
/// transfer from a root and reports the first edge whose map disagrees with
/// the labels. Components whose links are all bijective use one root;
/// otherwise every family is used as a root in turn, since directed chains
/// then need not be reversible.
NiceVerdict is_nice(const FamilySystem& system);

/// Weakly connected components of the link graph, each sorted, ordered by
/// least member.
std::vector<std::vector<int>> chain_classes(const FamilySystem& system);

struct Base {
  int family = 0;
  int member = 0;
};

struct BuiltSelection {
  std::map<Subset, int> values;   // sampled covered set -> chosen point
  std::vector<Subset> uncovered;  // sampled sets in no <U>
  std::vector<Base> bases;        // one per component, component order
};

/// The default base: the lexicographically least family of each component
/// (by endpoint sequence) and its first member.
std::vector<Base> default_bases(const FamilySystem& system);

/// For every sampled set x of the family size lying in some <U>: the point
/// of x inside the transferred base member. Needs a nice system, a model and
/// bijective transfers.
BuiltSelection build_selection_from_nice(const FamilySystem& system,
                                         std::optional<std::vector<Base>> bases = std::nullopt);

/// For every sampled (n+1)-set whose pair restriction is regular, the
/// relation-preserving neighborhoods at arities 1..n+1. A repair pass then
/// halves the radius of the wider family in any pair flagged by is_nice or
/// joined by a non-bijective link, until neither remains.
FamilySystem derive_nice_family(const ModelSpace& model, int n);

struct DerivedFamily {
  Subset center;
  Rational radius;
  int repairs = 0;
};

/// derive_nice_family with the per-family centers, radii and repair counts.
std::pair<FamilySystem, std::vector<DerivedFamily>> derive_nice_family_detailed(
    const ModelSpace& model, int n);

struct CoverVerdict {
  bool ok = true;
  std::optional<Subset> witness;
  bool witness_regular = false;
  bool witness_covered = false;
};

/// Over sampled (n+1)-sets: covered by some <U> iff the pair restriction is
/// regular.
CoverVerdict regular_class_cover_check(const FamilySystem& system, int n);

/// Overlapping Vietoris opens imply a unique-intersection link, for two
/// relation-preserving families whose sampled transversals all have regular
/// pair restrictions. kPreconditionUnverified when either hypothesis fails.
bool lemma_interbonita_check(const ModelSpace& model, const OpenFamily& a, const OpenFamily& b,
                             int n);

}  // namespace hypersel
