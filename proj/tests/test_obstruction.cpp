#include <sstream>

#include "doctest.h"
#include "hypersel/canonical.hpp"
#include "hypersel/error.hpp"
#include "hypersel/obstruction.hpp"
#include "oracles.hpp"

using namespace hypersel;

TEST_CASE("exact binomials and primes") {
  CHECK(binomial_exact(4, 2) == 6);
  CHECK(binomial_exact(100, 50) == BigInt("100891344545564193334812497256"));
  CHECK(binomial_exact(5, 7) == 0);
  CHECK(is_prime(2));
  CHECK(is_prime(31));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(91));
  CHECK(least_prime_divisor(9) == 3);
  CHECK(least_prime_divisor(4) == 2);
  CHECK(least_prime_divisor(13) == 13);
}

TEST_CASE("regular_score_value") {
  CHECK(regular_score_value(5, 2) == BigInt(2));
  CHECK_FALSE(regular_score_value(4, 2).has_value());
  CHECK(regular_score_value(4, 3) == BigInt(1));
}

TEST_CASE("prime obstruction certificates") {
  auto c42 = prime_obstruction_holds(4, 2);
  CHECK(c42.verdict == Verdict::kRegularImpossible);
  CHECK(c42.binom == 6);
  CHECK(c42.lucas_residue == 1);
  CHECK(c42.identity_holds);
  // The prime itself can divide C(m,p); the obstruction is m not dividing it.
  CHECK(c42.binom % 2 == 0);

  auto c63 = prime_obstruction_holds(6, 3);
  CHECK(c63.verdict == Verdict::kRegularImpossible);
  CHECK(c63.binom == 20);
  CHECK(c63.lucas_residue == 1);

  auto c52 = prime_obstruction_holds(5, 2);
  CHECK(c52.verdict == Verdict::kRegularUnobstructed);
  CHECK(c52.divisible_by_m);

  auto code = [](auto fn) {
    try {
      fn();
    } catch (const Error& e) {
      return e.code();
    }
    return ErrorCode::kInternal;
  };
  CHECK(code([] { prime_obstruction_holds(6, 4); }) == ErrorCode::kNotPrime);
  CHECK(code([] { prime_obstruction_holds(3, 5); }) == ErrorCode::kOutOfRange);
}

TEST_CASE("certificates hold for every p | m up to 300") {
  for (std::int64_t p = 2; p <= 37; ++p) {
    if (!is_prime(p)) continue;
    for (std::int64_t m = p; m <= 300; m += p) {
      auto c = prime_obstruction_holds(m, p);
      CHECK(c.identity_holds);
      CHECK(c.lucas_residue == 1);
      CHECK_FALSE(c.divisible_by_m);
      CHECK(c.verdict == Verdict::kRegularImpossible);
      CHECK(p * c.binom == m * binomial_exact(m - 1, p - 1));
    }
  }
}

TEST_CASE("search_regular") {
  auto r42 = search_regular(4, 2);
  CHECK(r42.status == SearchStatus::kProvenNone);
  CHECK(r42.immediate);

  auto r52 = search_regular(5, 2);
  REQUIRE(r52.status == SearchStatus::kFound);
  REQUIRE(r52.witness.has_value());
  CHECK(oracle::wins(*r52.witness) == std::vector<std::int64_t>(5, 2));

  auto r43 = search_regular(4, 3);
  REQUIRE(r43.witness.has_value());
  CHECK(oracle::wins(*r43.witness) == std::vector<std::int64_t>(4, 1));

  for (int m = 2; m <= 10; m += 2) CHECK(search_regular(m, 2).status == SearchStatus::kProvenNone);
  for (int m = 3; m <= 7; m += 2) {
    auto r = search_regular(m, 2);
    REQUIRE(r.witness.has_value());
    CHECK(is_regular(*r.witness));
  }
}

TEST_CASE("search_regular agrees with exhaustion on small cases") {
  for (int m = 1; m <= 5; ++m) {
    for (int n = 1; n <= m; ++n) {
      if (labeled_selection_count(m, n) > 2'000'000) continue;
      bool any = false;
      for (const auto& s : enumerate_selections(m, n, false)) any = any || is_regular(s);
      CHECK_MESSAGE((search_regular(m, n).status == SearchStatus::kFound) == any,
                    "m=" << m << " n=" << n);
    }
  }
}

TEST_CASE("regular structures for arity three on five points") {
  // C(5,3)/5 = 2, so divisibility does not decide it; the search does.
  auto r = search_regular(5, 3);
  CHECK(r.status == SearchStatus::kFound);
  REQUIRE(r.witness.has_value());
  CHECK(oracle::wins(*r.witness) == std::vector<std::int64_t>(5, 2));
}

TEST_CASE("search_regular never contradicts a certificate") {
  for (int m = 2; m <= 9; ++m) {
    for (int p = 2; p <= m; ++p) {
      if (!is_prime(p) || m % p != 0) continue;
      CHECK(search_regular(m, p, 1'000'000).status == SearchStatus::kProvenNone);
    }
  }
}

TEST_CASE("search_regular reports an incomplete search") {
  // (9,3): target 28/3 is not integral, so decided at once.
  CHECK(search_regular(9, 3, 10).immediate);
  // (7,3): target 5, needs real search; a budget of 3 nodes cannot close it.
  CHECK_THROWS_AS(search_regular(7, 3, 3), Error);
}

TEST_CASE("obstruction table") {
  auto rows = obstruction_table(6);
  REQUIRE(rows.size() == 4);
  std::vector<std::pair<std::int64_t, std::int64_t>> mp;
  for (const auto& r : rows) {
    mp.emplace_back(r.certificate.m, r.certificate.p);
    CHECK(r.certificate.verdict == Verdict::kRegularImpossible);
    CHECK(r.certificate.lucas_residue == 1);
    CHECK(r.search_status == "proven-none");
  }
  CHECK(mp == std::vector<std::pair<std::int64_t, std::int64_t>>{{2, 2}, {4, 2}, {6, 2}, {6, 3}});
  CHECK(obstruction_table(4).size() == 2);
  CHECK(obstruction_table(2).size() == 1);

  std::ostringstream out;
  write_obstruction_tsv(out, obstruction_table(4));
  CHECK(out.str() ==
        "m\tp\tbinom\tdivisible\tlucas_residue\tsearch_status\n"
        "2\t2\t1\tfalse\t1\tproven-none\n"
        "4\t2\t6\tfalse\t1\tproven-none\n");
}
