#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "doctest.h"
#include "hypersel/canonical.hpp"
#include "hypersel/error.hpp"
#include "hypersel/selection.hpp"
#include "oracles.hpp"

using namespace hypersel;

namespace {

GroundSet labels(std::initializer_list<const char*> ls) {
  return GroundSet(std::vector<std::string>(ls.begin(), ls.end()));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an Error");
  return ErrorCode::kInternal;
}

// 0->{1,2}, 1->{2,3}, 2->{3}, 3->{0}; x->y means x wins {x,y}.
SelectionStructure four_tournament() {
  std::vector<Choice> t = {{{"0", "1"}, "0"}, {{"0", "2"}, "0"}, {{"0", "3"}, "3"},
                           {{"1", "2"}, "1"}, {{"1", "3"}, "1"}, {{"2", "3"}, "2"}};
  return make_selection(GroundSet::range(4), 2, t);
}

}  // namespace

TEST_CASE("subset ranks are lexicographic and invertible") {
  CHECK(subset_rank(0b011, 4) == 0);
  CHECK(subset_rank(0b101, 4) == 1);
  CHECK(subset_rank(0b1001, 4) == 2);
  CHECK(subset_rank(0b110, 4) == 3);
  CHECK(subset_rank(0b1100, 4) == 5);
  for (int m = 1; m <= 9; ++m) {
    for (int n = 0; n <= m; ++n) {
      std::uint64_t r = 0;
      for_each_subset(m, n, [&](Subset s) {
        CHECK(subset_rank(s, m) == r);
        CHECK(subset_unrank(r, m, n) == s);
        ++r;
      });
      CHECK(r == binomial(m, n));
    }
  }
  CHECK(binomial(64, 32) == 1832624140942590534ULL);
  CHECK(lift(0b101, 0b11010) == 0b10010);
  CHECK(project(0b10010, 0b11010) == 0b101);
}

TEST_CASE("make_selection validates the table") {
  std::vector<Choice> ok = {{{"a", "b"}, "a"}};
  auto s = make_selection(labels({"a", "b"}), 2, ok);
  CHECK(s.pick(0b11) == 0);

  std::vector<Choice> missing = {{{"a", "b"}, "a"}, {{"a", "c"}, "c"}};
  CHECK(code_of([&] { make_selection(labels({"a", "b", "c"}), 2, missing); }) ==
        ErrorCode::kMissingSubset);

  std::vector<Choice> outside = {{{"a", "b"}, "c"}, {{"a", "c"}, "c"}, {{"b", "c"}, "c"}};
  CHECK(code_of([&] { make_selection(labels({"a", "b", "c"}), 2, outside); }) ==
        ErrorCode::kChoiceOutsideSubset);

  CHECK(code_of([&] { GroundSet(std::vector<std::string>{"a", "a"}); }) ==
        ErrorCode::kDuplicateLabel);
}

TEST_CASE("order selections") {
  auto s = selection_from_order(GroundSet::range(4), 2, OrderRule::kMin);
  CHECK(score(s).scores == std::vector<std::int64_t>{3, 2, 1, 0});
  auto t = selection_from_order(GroundSet::range(3), 3, OrderRule::kMax);
  CHECK(t.num_subsets() == 1);
  CHECK(t.pick(0b111) == 2);
  auto u = selection_from_order(GroundSet::range(2), 2, OrderRule::kMin);
  CHECK(u.pick(0b11) == 0);
}

TEST_CASE("rotational tournaments") {
  auto c3 = rotational_tournament(3);
  CHECK(score(c3).scores == std::vector<std::int64_t>{1, 1, 1});
  auto c5 = rotational_tournament(5);
  CHECK(oracle::wins(c5) == std::vector<std::int64_t>(5, 2));
  CHECK(is_regular(c5));
  CHECK(code_of([] { rotational_tournament(4); }) == ErrorCode::kEvenGround);
}

TEST_CASE("scores and level classes") {
  auto mn = selection_from_order(GroundSet::range(4), 2, OrderRule::kMin);
  auto p = score(mn);
  CHECK(p.level(3) == 0b0001);
  CHECK(p.level(0) == 0b1000);
  CHECK(p.level(7) == 0);

  auto c5 = score(rotational_tournament(5));
  CHECK(c5.classes.size() == 1);
  CHECK(c5.level(2) == 0b11111);

  CHECK(score(four_tournament()).scores == std::vector<std::int64_t>{2, 2, 1, 1});
}

TEST_CASE("score conservation and regularity") {
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= m; ++n) {
      for (const auto& s : enumerate_selections(m, n, false)) {
        auto w = score(s).scores;
        CHECK(std::accumulate(w.begin(), w.end(), std::int64_t{0}) ==
              static_cast<std::int64_t>(binomial(m, n)));
        if (is_regular(s)) CHECK(binomial(m, n) % m == 0);
      }
    }
  }
  CHECK_FALSE(is_regular(selection_from_order(GroundSet::range(5), 2, OrderRule::kMin)));
  int regular4 = 0;
  for (const auto& s : enumerate_selections(4, 2, false)) regular4 += is_regular(s);
  CHECK(regular4 == 0);
}

TEST_CASE("cycle property") {
  CHECK_FALSE(check_cycle_property(rotational_tournament(3)).has_value());
  CHECK_FALSE(check_cycle_property(rotational_tournament(5)).has_value());
  CHECK(code_of([] { check_cycle_property(selection_from_order(GroundSet::range(3), 2, OrderRule::kMin)); }) ==
        ErrorCode::kNotRegular);
  CHECK(code_of([] { check_cycle_property(selection_from_order(GroundSet::range(4), 3, OrderRule::kMin)); }) ==
        ErrorCode::kNotArityTwo);
  for (const auto& s : enumerate_selections(5, 2, false)) {
    if (is_regular(s)) CHECK_FALSE(check_cycle_property(s).has_value());
  }
}

TEST_CASE("isomorphism checks") {
  auto mn = selection_from_order(GroundSet::range(3), 2, OrderRule::kMin);
  CHECK(is_isomorphism(mn, mn, IsoMap::identity(mn.ground())));

  auto a = selection_from_order(GroundSet::range(2), 2, OrderRule::kMin);
  auto b = selection_from_order(GroundSet::range(2), 2, OrderRule::kMax);
  CHECK(is_isomorphism(a, b, IsoMap(a.ground(), b.ground(), {1, 0})));

  auto c3 = rotational_tournament(3);
  std::vector<int> perm{0, 1, 2};
  do {
    CHECK_FALSE(is_isomorphism(mn, c3, IsoMap(mn.ground(), c3.ground(), perm)));
  } while (std::next_permutation(perm.begin(), perm.end()));

  auto big = selection_from_order(GroundSet::range(4), 2, OrderRule::kMin);
  CHECK(code_of([&] { is_isomorphism(mn, big, IsoMap::identity(mn.ground())); }) ==
        ErrorCode::kSizeMismatch);
  auto triple = selection_from_order(GroundSet::range(3), 3, OrderRule::kMin);
  CHECK(code_of([&] { is_isomorphism(mn, triple, IsoMap::identity(mn.ground())); }) ==
        ErrorCode::kArityMismatch);
}

TEST_CASE("canonical form examples") {
  auto mn = selection_from_order(GroundSet::range(3), 2, OrderRule::kMin);
  auto mx = selection_from_order(GroundSet::range(3), 2, OrderRule::kMax);
  CHECK(canonical_form(mn).structure == canonical_form(mx).structure);

  auto c5 = rotational_tournament(5);
  const auto base = canonical_form(c5).structure;
  std::vector<int> perm{0, 1, 2, 3, 4};
  do {
    CHECK(canonical_form(oracle::relabel(c5, perm)).structure == base);
  } while (std::next_permutation(perm.begin(), perm.end()));

  CHECK(canonical_form(base).structure == base);
}

TEST_CASE("canonical form certifies its relabeling") {
  std::mt19937_64 rng(7);
  for (int m = 2; m <= 6; ++m) {
    for (int n = 1; n <= std::min(m, 3); ++n) {
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<int> picks;
        for_each_subset(m, n, [&](Subset s) {
          auto e = members(s);
          picks.push_back(e[std::uniform_int_distribution<std::size_t>(0, e.size() - 1)(rng)]);
        });
        SelectionStructure s(GroundSet::range(m), n, picks);
        auto cf = canonical_form(s);
        CHECK(is_isomorphism(s, cf.structure, cf.relabeling));
        CHECK(canonical_form(cf.structure).structure == cf.structure);
        std::vector<int> perm(m);
        std::iota(perm.begin(), perm.end(), 0);
        std::shuffle(perm.begin(), perm.end(), rng);
        CHECK(canonical_form(oracle::relabel(s, perm)).structure == cf.structure);
      }
    }
  }
}

TEST_CASE("canonical keys agree with the permutation oracle") {
  // Every pair of labeled tournaments on 4 points, and every pair of
  // 3-uniform structures on 4 points.
  for (auto [m, n] : {std::pair{4, 2}, std::pair{4, 3}}) {
    auto all = enumerate_selections(m, n, false);
    std::vector<SelectionStructure> keys;
    for (const auto& s : all) keys.push_back(canonical_form(s).structure);
    for (std::size_t i = 0; i < all.size(); i += 3) {
      for (std::size_t j = 0; j < all.size(); j += 5) {
        CHECK((keys[i] == keys[j]) == oracle::isomorphic(all[i], all[j]));
      }
    }
  }
}

TEST_CASE("are_isomorphic") {
  auto mn4 = selection_from_order(GroundSet::range(4), 2, OrderRule::kMin);
  auto mx4 = selection_from_order(GroundSet::range(4), 2, OrderRule::kMax);
  auto phi = are_isomorphic(mn4, mx4);
  REQUIRE(phi.has_value());
  CHECK(is_isomorphism(mn4, mx4, *phi));

  CHECK_FALSE(are_isomorphic(rotational_tournament(5),
                             selection_from_order(GroundSet::range(5), 2, OrderRule::kMin)));

  auto c5 = rotational_tournament(5);
  auto self = are_isomorphic(c5, c5);
  REQUIRE(self.has_value());
  CHECK(is_isomorphism(c5, c5, *self));
  auto t = four_tournament();
  auto id = are_isomorphic(t, t);
  REQUIRE(id.has_value());
  CHECK(*id == IsoMap::identity(t.ground()));
}

TEST_CASE("are_isomorphic is an equivalence on a corpus") {
  auto all = enumerate_selections(4, 2, false);
  for (std::size_t i = 0; i < all.size(); i += 7) {
    for (std::size_t j = 0; j < all.size(); j += 9) {
      auto ij = are_isomorphic(all[i], all[j]);
      auto ji = are_isomorphic(all[j], all[i]);
      CHECK(ij.has_value() == ji.has_value());
      if (ij) {
        CHECK(is_isomorphism(all[i], all[j], *ij));
        for (std::size_t k = 0; k < all.size(); k += 11) {
          if (auto jk = are_isomorphic(all[j], all[k])) {
            CHECK(are_isomorphic(all[i], all[k]).has_value());
          }
        }
      }
    }
  }
}

TEST_CASE("scores are isomorphism invariant") {
  auto all = enumerate_selections(4, 3, false);
  for (std::size_t i = 0; i < all.size(); i += 4) {
    auto cf = canonical_form(all[i]);
    auto ws = score(all[i]).scores;
    auto wt = score(cf.structure).scores;
    for (int x = 0; x < 4; ++x) CHECK(wt[cf.relabeling(x)] == ws[x]);
  }
}

TEST_CASE("enumeration counts") {
  CHECK(enumerate_selections(2, 2, false).size() == 2);
  CHECK(enumerate_selections(4, 2, false).size() == 64);
  auto iso = enumerate_selections(4, 2, true);
  CHECK(iso.size() == 4);
  for (const auto& s : iso) CHECK(canonical_form(s).structure == s);
  // Isomorphism classes of tournaments on 5 points, and 3-uniform on 4.
  CHECK(enumerate_selections(5, 2, true).size() == 12);
  CHECK(labeled_selection_count(6, 3) == 3486784401ULL);
  CHECK(code_of([] { enumerate_selections(6, 3, false); }) == ErrorCode::kBudgetExceeded);
}

TEST_CASE("iso enumeration matches the permutation oracle") {
  auto all = enumerate_selections(4, 3, false);
  std::vector<SelectionStructure> reps;
  for (const auto& s : all) {
    if (std::none_of(reps.begin(), reps.end(),
                     [&](const SelectionStructure& r) { return oracle::isomorphic(r, s); })) {
      reps.push_back(s);
    }
  }
  CHECK(enumerate_selections(4, 3, true).size() == reps.size());
}

TEST_CASE("labeled enumeration order is rank major") {
  std::vector<std::vector<int>> seen;
  for_each_labeled_selection(3, 2, 0, 8, [&](const SelectionStructure& s) {
    seen.emplace_back(s.picks().begin(), s.picks().end());
  });
  REQUIRE(seen.size() == 8);
  CHECK(seen[0] == std::vector<int>{0, 0, 1});
  CHECK(seen[1] == std::vector<int>{0, 0, 2});
  CHECK(seen[2] == std::vector<int>{0, 2, 1});
  CHECK(seen[7] == std::vector<int>{1, 2, 2});
  std::vector<std::vector<int>> tail;
  for_each_labeled_selection(3, 2, 6, 8, [&](const SelectionStructure& s) {
    tail.emplace_back(s.picks().begin(), s.picks().end());
  });
  CHECK(tail == std::vector<std::vector<int>>(seen.begin() + 6, seen.end()));
}

TEST_CASE("automorphisms of the rotational tournament") {
  CHECK(automorphisms(rotational_tournament(5)).size() == 5);
  CHECK(oracle::automorphism_count(rotational_tournament(5)) == 5);
  CHECK(automorphisms(rotational_tournament(3)).size() == 3);
}
