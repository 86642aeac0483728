#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "hypersel/budget.hpp"
#include "hypersel/selection.hpp"

namespace hypersel {

struct CanonicalForm {
  SelectionStructure structure;  // ground "0".."m-1"
  IsoMap relabeling;             // original ground -> canonical ground
};

/// Canonical representative of the isomorphism class of s.
///
/// Vertices are first sorted into blocks by descending score (scores are an
/// isomorphism invariant), then the search ranges over every relabeling that
/// respects the blocks and keeps the lexicographically least table. Tables
/// are compared in colex subset order with picks written as new labels, which
/// lets a partial relabeling of the first i positions fix a table prefix and
/// prune whole subtrees. Because the admissible relabelings of two
/// isomorphic structures produce the same set of tables, the result is
/// constant on isomorphism classes and idempotent.
///
/// Every table cell evaluated is charged against `budget`.
CanonicalForm canonical_form(const SelectionStructure& s, WorkBudget& budget);
CanonicalForm canonical_form(const SelectionStructure& s);

/// The canonical table in the colex encoding used for comparison; equal keys
/// mean isomorphic structures (for equal size and arity).
std::vector<int> canonical_key(const SelectionStructure& s, WorkBudget& budget);

/// A certified isomorphism s -> t, or nullopt.
std::optional<IsoMap> are_isomorphic(const SelectionStructure& s, const SelectionStructure& t);

/// All automorphisms of s, by brute force over the score-respecting
/// permutations.
std::vector<IsoMap> automorphisms(const SelectionStructure& s);

/// Calls fn for each labeled structure on ground {0..m-1} with arity n whose
/// enumeration index lies in [first, last). Index order is subset-rank major
/// (rank 0 is the most significant digit) and ground-order minor within each
/// subset. The caller guarantees the range is in bounds.
void for_each_labeled_selection(int m, int n, std::uint64_t first, std::uint64_t last,
                                const std::function<void(const SelectionStructure&)>& fn);

/// n^C(m,n), saturating.
std::uint64_t labeled_selection_count(int m, int n);

/// Every labeled structure, or one canonical representative per isomorphism
/// class in order of first appearance in the labeled stream.
std::vector<SelectionStructure> enumerate_selections(int m, int n, bool up_to_iso,
                                                     std::uint64_t budget = kDefaultBudget);

}  // namespace hypersel
