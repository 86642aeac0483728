#include "hypersel/vietoris.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>

#include "hypersel/error.hpp"

namespace hypersel {

Rational parse_rational(const std::string& text) {
  using boost::multiprecision::cpp_int;
  auto digits_only = [](std::string_view s) {
    return !s.empty() && std::all_of(s.begin(), s.end(),
                                     [](unsigned char c) { return std::isdigit(c) != 0; });
  };
  std::string_view body = text;
  const bool negative = !body.empty() && body.front() == '-';
  if (negative) body.remove_prefix(1);
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? "1" : body.substr(slash + 1);
  require(digits_only(num) && digits_only(den), ErrorCode::kMalformedDocument,
          "fraction '" + text + "' is not of the form p/q");
  cpp_int n{std::string(num)};
  cpp_int d{std::string(den)};
  require(d != 0, ErrorCode::kMalformedDocument, "fraction '" + text + "' has zero denominator");
  return Rational(negative ? cpp_int(-n) : n, d);
}

std::string format_rational(const Rational& value) {
  return boost::multiprecision::numerator(value).str() + "/" +
         boost::multiprecision::denominator(value).str();
}

IntervalOpen::IntervalOpen(Rational lo, Rational hi) : lo_(std::move(lo)), hi_(std::move(hi)) {
  require(lo_ < hi_, ErrorCode::kInvalidArgument,
          "interval (" + format_rational(lo_) + "," + format_rational(hi_) + ") is empty");
}

OpenFamily::OpenFamily(std::vector<IntervalOpen> members) : members_(std::move(members)) {
  for (std::size_t i = 0; i < members_.size(); ++i) {
    for (std::size_t j = i + 1; j < members_.size(); ++j) {
      require(!members_[i].meets(members_[j]), ErrorCode::kInvalidArgument,
              "family members " + std::to_string(i) + " and " + std::to_string(j) + " overlap");
    }
  }
}

std::optional<int> OpenFamily::member_containing(const Rational& p) const {
  for (int i = 0; i < size(); ++i) {
    if (members_[i].contains(p)) return i;
  }
  return std::nullopt;
}

std::optional<int> OpenFamily::index_of(const IntervalOpen& v) const {
  for (int i = 0; i < size(); ++i) {
    if (members_[i] == v) return i;
  }
  return std::nullopt;
}

// ------------------------------------------------------------------ models

GroundSet point_labels(std::span<const Rational> points) {
  std::vector<std::string> labels;
  labels.reserve(points.size());
  for (const auto& p : points) labels.push_back(format_rational(p));
  return GroundSet(std::move(labels));
}

ModelSpace::ModelSpace(std::vector<Rational> points, PartialSelection selection)
    : points_(std::move(points)), selection_(std::move(selection)) {
  require(selection_.carrier().size() == size(), ErrorCode::kSizeMismatch,
          "selection carrier differs from the sample size");
  std::vector<Rational> sorted = points_;
  std::sort(sorted.begin(), sorted.end());
  require(std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end(),
          ErrorCode::kDuplicateLabel, "sample points repeat");
}

ModelSpace ModelSpace::from_order(std::vector<Rational> points, int bound, OrderRule rule) {
  GroundSet carrier = point_labels(points);
  auto chooser = [&points, rule](Subset s) {
    auto elems = members(s);
    auto less = [&points](int a, int b) { return points[a] < points[b]; };
    return rule == OrderRule::kMin ? *std::min_element(elems.begin(), elems.end(), less)
                                   : *std::max_element(elems.begin(), elems.end(), less);
  };
  auto selection = PartialSelection::from_chooser(carrier, Mode::kUpTo, bound, chooser);
  return ModelSpace(std::move(points), std::move(selection));
}

Subset ModelSpace::points_in(const IntervalOpen& v) const {
  Subset s = 0;
  for (int i = 0; i < size(); ++i) {
    if (v.contains(points_[i])) s |= singleton(i);
  }
  return s;
}

Subset ModelSpace::points_in(const OpenFamily& family) const {
  Subset s = 0;
  for (const auto& v : family.members()) s |= points_in(v);
  return s;
}

bool vietoris_contains(const OpenFamily& family, std::span<const Rational> set) {
  if (set.empty() || family.size() == 0) return false;
  std::vector<bool> met(family.size(), false);
  for (const auto& p : set) {
    auto idx = family.member_containing(p);
    if (!idx) return false;
    met[*idx] = true;
  }
  return std::all_of(met.begin(), met.end(), [](bool b) { return b; });
}

bool vietoris_contains(const OpenFamily& family, const ModelSpace& model, Subset set) {
  std::vector<Rational> pts;
  for (int i : members(set)) pts.push_back(model.points().at(i));
  return vietoris_contains(family, pts);
}

namespace {

// Sample points per member, in member order.
std::vector<std::vector<int>> member_points(const ModelSpace& model, const OpenFamily& family) {
  std::vector<std::vector<int>> out;
  out.reserve(family.size());
  for (int i = 0; i < family.size(); ++i) {
    auto pts = members(model.points_in(family[i]));
    require(!pts.empty(), ErrorCode::kNoTransversal,
            "member " + std::to_string(i) + " contains no sample point");
    out.push_back(std::move(pts));
  }
  return out;
}

// Calls fn(mask) for each transversal of the chosen members; stops early
// when fn returns false. Returns false iff stopped early.
bool enumerate_transversals(const std::vector<std::vector<int>>& pts,
                            std::span<const int> chosen,
                            const std::function<bool(Subset)>& fn) {
  std::vector<std::size_t> digit(chosen.size(), 0);
  while (true) {
    Subset s = 0;
    for (std::size_t i = 0; i < chosen.size(); ++i) s |= singleton(pts[chosen[i]][digit[i]]);
    if (!fn(s)) return false;
    std::size_t i = chosen.size();
    while (i > 0) {
      --i;
      if (++digit[i] < pts[chosen[i]].size()) break;
      digit[i] = 0;
      if (i == 0) return true;
    }
    if (chosen.empty()) return true;
  }
}

// The member (index into `chosen`'s family) that every transversal of the
// chosen members selects into, or nullopt.
std::optional<int> common_target(const ModelSpace& model, const OpenFamily& family,
                                 const std::vector<std::vector<int>>& pts,
                                 std::span<const int> chosen) {
  std::optional<int> target;
  bool agree = true;
  enumerate_transversals(pts, chosen, [&](Subset s) {
    const auto hit = family.member_containing(model.points()[model.selection().pick(s)]);
    if (!target) target = hit;
    agree = hit && *hit == *target;
    return agree;
  });
  return agree ? target : std::nullopt;
}

}  // namespace

void for_each_transversal(const ModelSpace& model, const OpenFamily& family,
                          const std::function<bool(Subset)>& fn) {
  const auto pts = member_points(model, family);
  std::vector<int> all(family.size());
  std::iota(all.begin(), all.end(), 0);
  enumerate_transversals(pts, all, fn);
}

bool arrows_to(const ModelSpace& model, const OpenFamily& family, const IntervalOpen& v) {
  const auto target = family.index_of(v);
  require(target.has_value(), ErrorCode::kNotAMember, "interval is not a member of the family");
  require(model.selection().admits(family.size()), ErrorCode::kArityNotInDomain,
          "family size outside the selection's domain");
  bool all_into = true;
  for_each_transversal(model, family, [&](Subset s) {
    all_into = v.contains(model.points()[model.selection().pick(s)]);
    return all_into;
  });
  return all_into;
}

RelationCheck preserves_relations(const ModelSpace& model, const OpenFamily& family, int n) {
  require(n >= 1 && n <= family.size(), ErrorCode::kInvalidArgument,
          "need 1 <= n <= |family|");
  require(model.selection().admits(n), ErrorCode::kArityNotInDomain,
          "arity " + std::to_string(n) + " outside the selection's domain");
  const auto pts = member_points(model, family);
  RelationCheck result;
  for_each_subset(family.size(), n, [&](Subset sub) {
    if (!result.preserved) return;
    const auto chosen = members(sub);
    if (!common_target(model, family, pts, chosen)) {
      result.preserved = false;
      result.arity = n;
      result.witness_subfamily = chosen;
    }
  });
  return result;
}

RelationCheck preserves_relations_all(const ModelSpace& model, const OpenFamily& family) {
  const auto& f = model.selection();
  for (int i = 1; i <= std::min(f.bound(), family.size()); ++i) {
    if (!f.admits(i)) continue;
    auto check = preserves_relations(model, family, i);
    if (!check.preserved) return check;
  }
  return RelationCheck{};
}

Rational initial_radius(const ModelSpace& model, Subset set) {
  const auto elems = members(set);
  require(!elems.empty(), ErrorCode::kInvalidArgument, "empty point set");
  const auto& pts = model.points();
  std::optional<Rational> gap;
  auto consider = [&gap](const Rational& d) {
    if (!gap || d < *gap) gap = d;
  };
  if (elems.size() >= 2) {
    for (std::size_t i = 0; i < elems.size(); ++i) {
      for (std::size_t j = i + 1; j < elems.size(); ++j) {
        consider(abs(pts[elems[i]] - pts[elems[j]]));
      }
    }
  } else {
    for (int j = 0; j < model.size(); ++j) {
      if (j != elems[0]) consider(abs(pts[elems[0]] - pts[j]));
    }
  }
  return gap ? Rational(*gap / 2) : Rational(1);
}

OpenFamily centered_family(const ModelSpace& model, Subset set, const Rational& radius) {
  std::vector<IntervalOpen> ivs;
  for (int i : members(set)) {
    const auto& c = model.points().at(i);
    ivs.emplace_back(c - radius, c + radius);
  }
  return OpenFamily(std::move(ivs));
}

Neighborhoods find_preserving_neighborhoods(const ModelSpace& model, Subset set,
                                            std::span<const int> arities) {
  require(set != 0 && (set & ~full_subset(model.size())) == 0, ErrorCode::kInvalidArgument,
          "point set must be a nonempty subset of the sample");
  for (int a : arities) {
    require(model.selection().admits(a), ErrorCode::kArityNotInDomain,
            "arity " + std::to_string(a) + " outside the selection's domain");
  }
  Rational radius = initial_radius(model, set);
  for (int h = 0; h <= kRadiusHalvings; ++h) {
    OpenFamily family = centered_family(model, set, radius);
    bool ok = true;
    for (int a : arities) {
      if (a > family.size()) continue;
      if (!preserves_relations(model, family, a).preserved) {
        ok = false;
        break;
      }
    }
    if (ok) return Neighborhoods{std::move(family), radius, h};
    radius /= 2;
  }
  std::string text;
  for (const auto& l : model.selection().carrier().labels_of(set)) {
    text += (text.empty() ? "" : ",") + l;
  }
  fail(ErrorCode::kNotModelContinuous,
       "no relation-preserving neighborhoods of {" + text + "} above the radius floor");
}

ContinuityVerdict check_continuity(const ModelSpace& model) {
  for (int a : model.selection().arities()) {
    ContinuityVerdict verdict;
    const int arity[] = {a};
    for_each_subset(model.size(), a, [&](Subset x) {
      if (!verdict.continuous) return;
      try {
        find_preserving_neighborhoods(model, x, arity);
      } catch (const Error& e) {
        if (e.code() != ErrorCode::kNotModelContinuous) throw;
        verdict.continuous = false;
        verdict.witness = x;
      }
    });
    if (!verdict.continuous) return verdict;
  }
  return ContinuityVerdict{};
}

bool intersect_nonempty(const OpenFamily& a, const OpenFamily& b) {
  if (a.size() == 0 || b.size() == 0) return false;
  auto covered = [](const OpenFamily& from, const OpenFamily& to) {
    return std::all_of(from.members().begin(), from.members().end(), [&](const IntervalOpen& u) {
      return std::any_of(to.members().begin(), to.members().end(),
                         [&](const IntervalOpen& v) { return u.meets(v); });
    });
  };
  return covered(a, b) && covered(b, a);
}

}  // namespace hypersel
