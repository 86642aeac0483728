#include "hypersel/extension.hpp"

#include <algorithm>

#include "hypersel/canonical.hpp"
#include "hypersel/error.hpp"
#include "hypersel/obstruction.hpp"

namespace hypersel {

// --------------------------------------------------------- PartialSelection

PartialSelection::PartialSelection(GroundSet carrier, Mode mode, int bound,
                                   std::vector<std::vector<int>> tables)
    : carrier_(std::move(carrier)), mode_(mode), bound_(bound), tables_(std::move(tables)) {
  require(bound_ >= 1, ErrorCode::kInvalidArgument, "bound must be positive");
  require(static_cast<int>(tables_.size()) <= bound_ + 1, ErrorCode::kInvalidArgument,
          "tables beyond the bound");
  tables_.resize(bound_ + 1);
  const int m = carrier_.size();
  for (int a = 0; a <= bound_; ++a) {
    const std::uint64_t expected = admits(a) ? binomial(m, a) : 0;
    if (tables_[a].size() != expected) {
      fail(tables_[a].size() < expected ? ErrorCode::kMissingSubset : ErrorCode::kInvalidArgument,
           "table for arity " + std::to_string(a) + " has " + std::to_string(tables_[a].size()) +
               " entries, expected " + std::to_string(expected));
    }
    std::uint64_t rank = 0;
    for_each_subset(m, expected ? a : -1, [&](Subset s) {
      const int p = tables_[a][rank++];
      if (p < 0 || p >= m || !contains(s, p)) {
        fail(ErrorCode::kChoiceOutsideSubset,
             "arity " + std::to_string(a) + " pick is not a member of its subset");
      }
    });
  }
}

PartialSelection PartialSelection::from_chooser(GroundSet carrier, Mode mode, int bound,
                                                const std::function<int(Subset)>& chooser) {
  require(bound >= 1, ErrorCode::kInvalidArgument, "bound must be positive");
  const int m = carrier.size();
  std::vector<std::vector<int>> tables(bound + 1);
  WorkBudget cells(kDefaultBudget, "partial selection table");
  for (int a = (mode == Mode::kUpTo ? 1 : bound); a <= std::min(bound, m); ++a) {
    cells.charge(binomial(m, a));
    tables[a].reserve(binomial(m, a));
    for_each_subset(m, a, [&](Subset s) { tables[a].push_back(chooser(s)); });
  }
  return PartialSelection(std::move(carrier), mode, bound, std::move(tables));
}

PartialSelection PartialSelection::from_order(GroundSet carrier, Mode mode, int bound,
                                              OrderRule rule) {
  return from_chooser(std::move(carrier), mode, bound, [rule](Subset s) {
    return rule == OrderRule::kMin ? std::countr_zero(s) : 63 - std::countl_zero(s);
  });
}

bool PartialSelection::admits(int arity) const {
  if (arity < 1 || arity > bound_) return false;
  return mode_ == Mode::kUpTo || arity == bound_;
}

std::vector<int> PartialSelection::arities() const {
  std::vector<int> out;
  for (int a = 1; a <= std::min(bound_, carrier_.size()); ++a) {
    if (admits(a)) out.push_back(a);
  }
  return out;
}

int PartialSelection::pick(Subset s) const {
  const int a = cardinality(s);
  require(admits(a), ErrorCode::kArityNotInDomain,
          "arity " + std::to_string(a) + " outside the selection's domain");
  require((s & ~full_subset(carrier_.size())) == 0, ErrorCode::kInvalidArgument,
          "subset outside carrier");
  return tables_[a][subset_rank(s, carrier_.size())];
}

std::span<const int> PartialSelection::table(int arity) const {
  require(admits(arity), ErrorCode::kArityNotInDomain, "arity outside the selection's domain");
  return tables_[arity];
}

// ------------------------------------------------------------- restriction

SelectionStructure restrict(const PartialSelection& f, Subset within, int n) {
  require(f.admits(n), ErrorCode::kArityNotInDomain,
          "arity " + std::to_string(n) + " outside the selection's domain");
  const int size = cardinality(within);
  require(n <= size, ErrorCode::kInvalidArgument, "arity exceeds the restricted set");
  std::vector<int> picks;
  picks.reserve(binomial(size, n));
  for_each_subset(size, n, [&](Subset local) {
    const int chosen = f.pick(lift(local, within));
    picks.push_back(std::countr_zero(project(singleton(chosen), within)));
  });
  return SelectionStructure(f.carrier().induced(within), n, std::move(picks));
}

TypePartition partition_types(const PartialSelection& f, int m, int n, std::uint64_t budget) {
  require(f.admits(n), ErrorCode::kArityNotInDomain,
          "arity " + std::to_string(n) + " outside the selection's domain");
  require(n <= m && m <= f.carrier().size(), ErrorCode::kInvalidArgument,
          "need n <= m <= |carrier|");
  WorkBudget work(budget, "type partition");
  TypePartition partition{m, n, {}};
  std::map<std::vector<int>, std::size_t> index;
  for_each_subset(f.carrier().size(), m, [&](Subset x) {
    auto restricted = restrict(f, x, n);
    work.charge(restricted.num_subsets());
    auto key = canonical_key(restricted, work);
    auto [it, inserted] = index.emplace(std::move(key), partition.classes.size());
    if (inserted) {
      partition.classes.push_back(TypeClass{canonical_form(restricted).structure, {}});
    }
    partition.classes[it->second].members.push_back(x);
  });
  return partition;
}

SmallClass least_small_class(const SelectionStructure& g, int m) {
  require(g.size() == m, ErrorCode::kInvalidArgument, "structure size differs from m");
  const auto profile = score(g);
  require(profile.classes.size() >= 2, ErrorCode::kRegularInput,
          "constant score: no small level class is guaranteed");
  for (const auto& [k, q] : profile.classes) {
    if (2 * cardinality(q) <= m) return SmallClass{k, q};
  }
  // Two or more nonempty classes partition m elements, so one has <= m/2.
  fail(ErrorCode::kInternal, "no level class of size <= m/2");
}

namespace {

void require_extension_hypotheses(const PartialSelection& f, int m, int n) {
  require(f.mode() == Mode::kUpTo, ErrorCode::kHypothesisViolated,
          "extension needs a selection on all subsets up to size k");
  const int k = f.bound();
  require(n <= k, ErrorCode::kHypothesisViolated, "need n <= k");
  require(m <= 2 * k, ErrorCode::kHypothesisViolated, "need m/2 <= k");
  require(m <= f.carrier().size(), ErrorCode::kHypothesisViolated, "need m <= |carrier|");
}

// h(x) = f(Q(r0)) for the restriction of f to x.
int apply_small_class(const PartialSelection& f, Subset x, const SelectionStructure& restricted,
                      std::int64_t r0, int k0) {
  const Subset q = score(restricted).level(r0);
  if (cardinality(q) != k0) fail(ErrorCode::kInternal, "level class size differs within a type");
  return f.pick(lift(q, x));
}

}  // namespace

std::map<Subset, int> extend_on_class(const PartialSelection& f, const SelectionStructure& g,
                                      int m, int n, std::uint64_t budget) {
  require_extension_hypotheses(f, m, n);
  require(g.arity() == n, ErrorCode::kInvalidArgument, "type arity differs from n");
  const auto small = least_small_class(g, m);
  const int k0 = cardinality(small.q);
  WorkBudget work(budget, "class extension");
  const auto key = canonical_key(g, work);
  std::map<Subset, int> h;
  for_each_subset(f.carrier().size(), m, [&](Subset x) {
    auto restricted = restrict(f, x, n);
    if (canonical_key(restricted, work) != key) return;
    h.emplace(x, apply_small_class(f, x, restricted, small.r0, k0));
  });
  return h;
}

ExtensionResult extend_selection(const PartialSelection& f, int m, int p, std::uint64_t budget) {
  require(is_prime(p), ErrorCode::kNotPrime, std::to_string(p) + " is not prime");
  require_extension_hypotheses(f, m, p);
  require(m % p == 0, ErrorCode::kHypothesisViolated,
          std::to_string(p) + " does not divide " + std::to_string(m));
  const auto certificate = prime_obstruction_holds(m, p);
  if (certificate.verdict != Verdict::kRegularImpossible || !certificate.identity_holds) {
    fail(ErrorCode::kInternal, "obstruction certificate failed for a prime divisor");
  }

  const auto partition = partition_types(f, m, p, budget);
  const int carrier_size = f.carrier().size();
  std::vector<int> table(binomial(carrier_size, m), -1);
  std::vector<ClassReport> reports;
  for (const auto& cls : partition.classes) {
    if (is_regular(cls.type)) {
      fail(ErrorCode::kInternal, "regular restriction type despite obstruction certificate");
    }
    const auto small = least_small_class(cls.type, m);
    const int k0 = cardinality(small.q);
    for (Subset x : cls.members) {
      const int value = apply_small_class(f, x, restrict(f, x, p), small.r0, k0);
      int& slot = table[subset_rank(x, carrier_size)];
      if (slot != -1 && slot != value) fail(ErrorCode::kInternal, "classwise merge conflict");
      slot = value;
    }
    reports.push_back(ClassReport{cls.type, p, small.r0, k0, cls.members.size()});
  }
  std::vector<std::vector<int>> tables(m + 1);
  tables[m] = std::move(table);
  return ExtensionResult{PartialSelection(f.carrier(), Mode::kExact, m, std::move(tables)),
                         std::move(reports)};
}

ExtensionResult extend_composite(const PartialSelection& f, int n, std::uint64_t budget) {
  require(n >= 2, ErrorCode::kHypothesisViolated, "need n >= 2");
  require(!is_prime(n + 1), ErrorCode::kPrimeInput,
          std::to_string(n + 1) + " is prime; no composite extension applies");
  require(f.mode() == Mode::kUpTo && f.bound() >= n, ErrorCode::kHypothesisViolated,
          "need a selection on all subsets up to size n");
  const auto p = least_prime_divisor(n + 1);
  return extend_selection(f, n + 1, static_cast<int>(p), budget);
}

bool equivariance_check(const PartialSelection& f, const PartialSelection& h, Subset x, Subset y,
                        const IsoMap& phi) {
  const GroundSet gx = f.carrier().induced(x);
  const GroundSet gy = f.carrier().induced(y);
  require(phi.source() == gx && phi.target() == gy, ErrorCode::kInvalidArgument,
          "isomorphism grounds do not match the subsets");
  for (int a : f.arities()) {
    if (a > cardinality(x)) break;
    if (!is_isomorphism(restrict(f, x, a), restrict(f, y, a), phi)) {
      fail(ErrorCode::kNotIso, "map is not an isomorphism at arity " + std::to_string(a));
    }
  }
  const int hx = std::countr_zero(project(singleton(h.pick(x)), x));
  const int hy = std::countr_zero(project(singleton(h.pick(y)), y));
  return phi(hx) == hy;
}

}  // namespace hypersel
