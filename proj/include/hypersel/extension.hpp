#pragma once

// Extension of a selection on small subsets of a finite carrier to a
// selection on its m-subsets, classwise over the isomorphism type of the
// restricted n-ary structure.

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <span>
#include <vector>

#include "hypersel/budget.hpp"
#include "hypersel/selection.hpp"

namespace hypersel {

enum class Mode { kUpTo, kExact };

/// A selection on every subset of size <= bound (kUpTo) or of size exactly
/// bound (kExact) of a finite carrier.
class PartialSelection {
 public:
  /// tables[a] lists picks (carrier indices) for the a-subsets in rank order;
  /// entries for arities outside the domain must be empty. Singletons, when in
  /// the domain, must pick themselves.
  PartialSelection(GroundSet carrier, Mode mode, int bound, std::vector<std::vector<int>> tables);

  /// Builds the tables by calling chooser(subset) for every subset in the
  /// domain.
  static PartialSelection from_chooser(GroundSet carrier, Mode mode, int bound,
                                       const std::function<int(Subset)>& chooser);

  /// Least (kMin) or greatest (kMax) element in carrier order.
  static PartialSelection from_order(GroundSet carrier, Mode mode, int bound, OrderRule rule);

  const GroundSet& carrier() const { return carrier_; }
  Mode mode() const { return mode_; }
  int bound() const { return bound_; }

  bool admits(int arity) const;
  /// Admissible arities that actually have subsets on this carrier.
  std::vector<int> arities() const;

  int pick(Subset s) const;  // kArityNotInDomain outside the domain
  std::span<const int> table(int arity) const;

  bool operator==(const PartialSelection& other) const {
    return carrier_ == other.carrier_ && mode_ == other.mode_ && bound_ == other.bound_ &&
           tables_ == other.tables_;
  }

 private:
  GroundSet carrier_;
  Mode mode_;
  int bound_;
  std::vector<std::vector<int>> tables_;
};

/// The structure f induces on the n-subsets of `within` (ground: the labels
/// of `within` in carrier order).
SelectionStructure restrict(const PartialSelection& f, Subset within, int n);

struct TypeClass {
  SelectionStructure type;      // canonical form
  std::vector<Subset> members;  // m-subsets of the carrier, rank order
};

struct TypePartition {
  int m = 0;
  int n = 0;
  std::vector<TypeClass> classes;  // ordered by first member
};

TypePartition partition_types(const PartialSelection& f, int m, int n,
                              std::uint64_t budget = kDefaultBudget);

struct SmallClass {
  std::int64_t r0 = 0;
  Subset q = 0;  // Q_g(r0), in g's ground
};

/// Least score r0 whose level class is nonempty and holds at most m/2
/// elements.
SmallClass least_small_class(const SelectionStructure& g, int m);

/// h on the m-subsets of type g: h(x) = f(Q(r0)) of the restriction to x.
std::map<Subset, int> extend_on_class(const PartialSelection& f, const SelectionStructure& g,
                                      int m, int n, std::uint64_t budget = kDefaultBudget);

struct ClassReport {
  SelectionStructure type;
  int n = 0;
  std::int64_t r0 = 0;
  int k0 = 0;
  std::size_t size = 0;
};

struct ExtensionResult {
  PartialSelection selection;  // kExact, bound m
  std::vector<ClassReport> classes;
};

/// Selection on all m-subsets assembled classwise with n = p. Requires f in
/// kUpTo mode with bound k, p prime, p <= k, m <= 2k, p | m and
/// m <= |carrier|.
ExtensionResult extend_selection(const PartialSelection& f, int m, int p,
                                 std::uint64_t budget = kDefaultBudget);

/// For n+1 composite: delegates to extend_selection with the least prime
/// divisor of n+1.
ExtensionResult extend_composite(const PartialSelection& f, int n,
                                 std::uint64_t budget = kDefaultBudget);

/// With phi: x -> y certified as an isomorphism of f at every admissible
/// arity up to |x|, checks phi(h(x)) == h(y). kNotIso when the certification
/// fails.
bool equivariance_check(const PartialSelection& f, const PartialSelection& h, Subset x, Subset y,
                        const IsoMap& phi);

}  // namespace hypersel
