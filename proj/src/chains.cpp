#include "hypersel/chains.hpp"

#include <algorithm>
#include <bit>
#include <deque>
#include <numeric>

#include "hypersel/error.hpp"

namespace hypersel {

std::optional<MeetMap> meets_uniquely(const OpenFamily& a, const OpenFamily& b) {
  require(a.size() == b.size(), ErrorCode::kSizeMismatch, "families differ in size");
  MeetMap link;
  link.map.reserve(a.size());
  std::vector<bool> hit(b.size(), false);
  for (const auto& u : a.members()) {
    int found = -1;
    for (int j = 0; j < b.size(); ++j) {
      if (!u.meets(b[j])) continue;
      if (found != -1) return std::nullopt;
      found = j;
    }
    if (found == -1) return std::nullopt;
    link.map.push_back(found);
    hit[found] = true;
  }
  link.bijective = std::all_of(hit.begin(), hit.end(), [](bool h) { return h; });
  return link;
}

TransferMap compose(const TransferMap& first, const TransferMap& second) {
  TransferMap out;
  out.map.reserve(first.map.size());
  for (int i : first.map) out.map.push_back(second.map.at(i));
  out.bijective = first.bijective && second.bijective;
  return out;
}

TransferMap identity_transfer(int size) {
  TransferMap t;
  t.map.resize(size);
  std::iota(t.map.begin(), t.map.end(), 0);
  t.bijective = true;
  return t;
}

TransferMap compose_chain(std::span<const OpenFamily> chain) {
  require(!chain.empty(), ErrorCode::kInvalidArgument, "empty chain");
  TransferMap total = identity_transfer(chain.front().size());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i) {
    auto link = meets_uniquely(chain[i], chain[i + 1]);
    if (!link) {
      fail(ErrorCode::kBrokenLink,
           "families " + std::to_string(i) + " and " + std::to_string(i + 1) +
               " are not uniquely meeting");
    }
    total = compose(total, *link);
  }
  return total;
}

void validate_system(const FamilySystem& system) {
  for (const auto& f : system.families) {
    require(f.size() == system.family_size(), ErrorCode::kInvalidArgument,
            "families in a system must share one size");
  }
}

std::map<std::pair<int, int>, MeetMap> link_graph(const FamilySystem& system) {
  validate_system(system);
  std::map<std::pair<int, int>, MeetMap> links;
  const int count = static_cast<int>(system.families.size());
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      if (i == j) continue;
      if (auto link = meets_uniquely(system.families[i], system.families[j])) {
        links.emplace(std::make_pair(i, j), std::move(*link));
      }
    }
  }
  return links;
}

namespace {

struct Labeling {
  std::vector<std::optional<TransferMap>> label;
  std::vector<int> parent;
};

std::vector<int> tree_path(const std::vector<int>& parent, int node) {
  std::vector<int> path;
  for (int v = node; v != -1; v = parent[v]) path.push_back(v);
  std::reverse(path.begin(), path.end());
  return path;
}

// Labels every family reachable from `root` with the transfer along a BFS
// tree and checks every reachable edge against the labels.
std::optional<NiceWitness> label_from(int root, int count, int size,
                                      const std::map<std::pair<int, int>, MeetMap>& links,
                                      const std::vector<std::vector<int>>& out_edges) {
  Labeling lab{std::vector<std::optional<TransferMap>>(count), std::vector<int>(count, -1)};
  lab.label[root] = identity_transfer(size);
  std::deque<int> queue{root};
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    for (int v : out_edges[u]) {
      TransferMap carried = compose(*lab.label[u], links.at({u, v}));
      if (!lab.label[v]) {
        lab.label[v] = std::move(carried);
        lab.parent[v] = u;
        queue.push_back(v);
      } else if (lab.label[v]->map != carried.map) {
        NiceWitness w;
        w.condition = 2;
        w.from = u;
        w.to = v;
        w.path = tree_path(lab.parent, u);
        w.path.push_back(v);
        w.expected = lab.label[v]->map;
        w.found = carried.map;
        return w;
      }
    }
  }
  return std::nullopt;
}

std::vector<std::vector<int>> components_of(int count,
                                            const std::map<std::pair<int, int>, MeetMap>& links) {
  std::vector<int> parent(count);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  for (const auto& [edge, link] : links) {
    const int a = find(edge.first);
    const int b = find(edge.second);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
  std::map<int, std::vector<int>> groups;
  for (int i = 0; i < count; ++i) groups[find(i)].push_back(i);
  std::vector<std::vector<int>> out;
  for (auto& [root, group] : groups) out.push_back(std::move(group));
  return out;
}

bool family_less(const OpenFamily& a, const OpenFamily& b) {
  return std::lexicographical_compare(
      a.members().begin(), a.members().end(), b.members().begin(), b.members().end(),
      [](const IntervalOpen& x, const IntervalOpen& y) {
        return x.lo() < y.lo() || (x.lo() == y.lo() && x.hi() < y.hi());
      });
}

}  // namespace

NiceVerdict is_nice(const FamilySystem& system) {
  const auto links = link_graph(system);
  const int count = static_cast<int>(system.families.size());
  for (int i = 0; i < count; ++i) {
    for (int j = 0; j < count; ++j) {
      if (i == j || links.count({i, j})) continue;
      if (intersect_nonempty(system.families[i], system.families[j])) {
        NiceWitness w;
        w.condition = 1;
        w.from = i;
        w.to = j;
        return NiceVerdict{false, w};
      }
    }
  }
  std::vector<std::vector<int>> out_edges(count);
  for (const auto& [edge, link] : links) out_edges[edge.first].push_back(edge.second);
  for (const auto& component : components_of(count, links)) {
    bool all_bijective = true;
    for (const auto& [edge, link] : links) {
      if (!link.bijective && std::binary_search(component.begin(), component.end(), edge.first)) {
        all_bijective = false;
      }
    }
    const std::vector<int> roots =
        all_bijective ? std::vector<int>{component.front()} : component;
    for (int root : roots) {
      if (auto w = label_from(root, count, system.family_size(), links, out_edges)) {
        return NiceVerdict{false, std::move(*w)};
      }
    }
  }
  return NiceVerdict{};
}

std::vector<std::vector<int>> chain_classes(const FamilySystem& system) {
  return components_of(static_cast<int>(system.families.size()), link_graph(system));
}

std::vector<Base> default_bases(const FamilySystem& system) {
  std::vector<Base> bases;
  for (const auto& component : chain_classes(system)) {
    int best = component.front();
    for (int f : component) {
      if (family_less(system.families[f], system.families[best])) best = f;
    }
    bases.push_back(Base{best, 0});
  }
  return bases;
}

BuiltSelection build_selection_from_nice(const FamilySystem& system,
                                         std::optional<std::vector<Base>> bases) {
  require(system.model.has_value(), ErrorCode::kInvalidArgument, "system carries no model");
  const auto& model = *system.model;
  const auto verdict = is_nice(system);
  require(verdict.nice, ErrorCode::kNotNice, "family system is not nice");
  const auto links = link_graph(system);
  const auto components = components_of(static_cast<int>(system.families.size()), links);
  if (!bases) bases = default_bases(system);
  require(bases->size() == components.size(), ErrorCode::kInvalidArgument,
          "need one base per chain class");

  const int count = static_cast<int>(system.families.size());
  const int size = system.family_size();
  std::vector<std::vector<int>> out_edges(count);
  for (const auto& [edge, link] : links) {
    if (!link.bijective) {
      fail(ErrorCode::kNonBijectiveTransfer, "link " + std::to_string(edge.first) + " -> " +
                                                 std::to_string(edge.second) + " is not a bijection");
    }
    out_edges[edge.first].push_back(edge.second);
  }

  // target[f]: the member of family f that the base member transfers to.
  std::vector<int> target(count, -1);
  for (std::size_t c = 0; c < components.size(); ++c) {
    const Base base = (*bases)[c];
    require(std::binary_search(components[c].begin(), components[c].end(), base.family),
            ErrorCode::kInvalidArgument, "base family outside its chain class");
    require(base.member >= 0 && base.member < size, ErrorCode::kInvalidArgument,
            "base member out of range");
    std::vector<std::optional<TransferMap>> label(count);
    label[base.family] = identity_transfer(size);
    std::deque<int> queue{base.family};
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop_front();
      for (int v : out_edges[u]) {
        if (label[v]) continue;
        label[v] = compose(*label[u], links.at({u, v}));
        queue.push_back(v);
      }
    }
    for (int f : components[c]) {
      if (!label[f]) fail(ErrorCode::kInternal, "chain class not reachable from its base");
      target[f] = label[f]->map[base.member];
    }
  }

  BuiltSelection built;
  built.bases = *bases;
  for (int f = 0; f < count; ++f) {
    const auto& family = system.families[f];
    const Subset target_points = model.points_in(family[target[f]]);
    try {
      for_each_transversal(model, family, [&](Subset x) {
        const int value = std::countr_zero(x & target_points);
        auto [it, inserted] = built.values.emplace(x, value);
        if (!inserted && it->second != value) {
          fail(ErrorCode::kInternal, "covering families disagree on a sampled set");
        }
        return true;
      });
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoTransversal) throw;
    }
  }
  if (size >= 1 && size <= model.size()) {
    for_each_subset(model.size(), size, [&](Subset x) {
      if (!built.values.count(x)) built.uncovered.push_back(x);
    });
  }
  return built;
}

std::pair<FamilySystem, std::vector<DerivedFamily>> derive_nice_family_detailed(
    const ModelSpace& model, int n) {
  require(n >= 2 && n % 2 == 0, ErrorCode::kInvalidArgument, "n must be even and >= 2");
  const auto& f = model.selection();
  std::vector<int> arities;
  for (int i = 1; i <= n + 1; ++i) {
    require(f.admits(i), ErrorCode::kArityNotInDomain,
            "model selection must cover every arity up to n+1");
    arities.push_back(i);
  }

  FamilySystem system;
  system.model = model;
  std::vector<DerivedFamily> detail;
  for_each_subset(model.size(), n + 1, [&](Subset x) {
    if (!is_regular(restrict(f, x, 2))) return;
    auto hood = find_preserving_neighborhoods(model, x, arities);
    system.families.push_back(std::move(hood.family));
    detail.push_back(DerivedFamily{x, std::move(hood.radius), 0});
  });

  // Finite samples cannot always witness the overlaps that force linking, so
  // flagged pairs are shrunk; smaller centered intervals keep preservation.
  // Non-bijective links are shrunk away too, since f_C needs bijections.
  const std::size_t max_repairs = 64 * (detail.size() + 1) * (kRadiusHalvings + 64);
  for (std::size_t round = 0;; ++round) {
    std::optional<std::pair<int, int>> flagged;
    if (const auto verdict = is_nice(system); !verdict.nice) {
      flagged = std::make_pair(verdict.witness->from, verdict.witness->to);
    } else {
      for (const auto& [edge, link] : link_graph(system)) {
        if (!link.bijective) {
          flagged = edge;
          break;
        }
      }
    }
    if (!flagged) break;
    if (round == max_repairs) fail(ErrorCode::kInternal, "derived system repair did not settle");
    const auto [a, b] = *flagged;
    const int wider = detail[a].radius > detail[b].radius ? a
                      : detail[b].radius > detail[a].radius ? b
                                                            : std::max(a, b);
    detail[wider].radius /= 2;
    ++detail[wider].repairs;
    system.families[wider] = centered_family(model, detail[wider].center, detail[wider].radius);
  }
  return {std::move(system), std::move(detail)};
}

FamilySystem derive_nice_family(const ModelSpace& model, int n) {
  return derive_nice_family_detailed(model, n).first;
}

CoverVerdict regular_class_cover_check(const FamilySystem& system, int n) {
  validate_system(system);
  require(system.model.has_value(), ErrorCode::kInvalidArgument, "system carries no model");
  require(system.families.empty() || system.family_size() == n + 1,
          ErrorCode::kInvalidArgument, "families must have size n+1");
  const auto& model = *system.model;
  require(model.selection().admits(2), ErrorCode::kArityNotInDomain,
          "model selection must cover pairs");
  CoverVerdict verdict;
  for_each_subset(model.size(), n + 1, [&](Subset x) {
    if (!verdict.ok) return;
    const bool regular = is_regular(restrict(model.selection(), x, 2));
    const bool covered =
        std::any_of(system.families.begin(), system.families.end(),
                    [&](const OpenFamily& fam) { return vietoris_contains(fam, model, x); });
    if (regular != covered) {
      verdict.ok = false;
      verdict.witness = x;
      verdict.witness_regular = regular;
      verdict.witness_covered = covered;
    }
  });
  return verdict;
}

bool lemma_interbonita_check(const ModelSpace& model, const OpenFamily& a, const OpenFamily& b,
                             int n) {
  require(a.size() == n + 1 && b.size() == n + 1, ErrorCode::kInvalidArgument,
          "families must have size n+1");
  require(model.selection().admits(2), ErrorCode::kArityNotInDomain,
          "model selection must cover pairs");
  for (const OpenFamily* fam : {&a, &b}) {
    try {
      if (!preserves_relations_all(model, *fam).preserved) {
        fail(ErrorCode::kPreconditionUnverified, "family does not preserve relations");
      }
      for_each_transversal(model, *fam, [&](Subset x) {
        if (!is_regular(restrict(model.selection(), x, 2))) {
          fail(ErrorCode::kPreconditionUnverified,
               "family covers a sampled set with non-regular pair restriction");
        }
        return true;
      });
    } catch (const Error& e) {
      if (e.code() != ErrorCode::kNoTransversal && e.code() != ErrorCode::kArityNotInDomain) throw;
      fail(ErrorCode::kPreconditionUnverified, e.what());
    }
  }
  if (!intersect_nonempty(a, b)) return true;
  return meets_uniquely(a, b).has_value();
}

}  // namespace hypersel
