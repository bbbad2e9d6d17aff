#include "doctest.h"
#include "oracles.hpp"
#include "waring/combinatorics.hpp"
#include "waring/error.hpp"

using namespace waring;

TEST_CASE("binomial agrees with Pascal's triangle") {
  for (int n = 0; n <= 80; ++n)
    for (int k = -1; k <= n + 1; ++k) CHECK(binomial(n, k) == oracle::pascal(n, k));
  CHECK(binomial(3, 5) == 0);
}

TEST_CASE("perfectness is divisibility of the parameter count") {
  // N = sum binom(a_i + n, n) must be a multiple of r + n
  for (int n = 1; n <= 4; ++n) {
    for (int a = 2; a <= 9; ++a) {
      for (int b = a; b <= 9; ++b) {
        const std::vector<int> d{a, b};
        BigInt total = oracle::pascal(a + n, n) + oracle::pascal(b + n, n);
        const auto k = is_perfect(n, d);
        if (total % (2 + n) == 0) {
          REQUIRE(k.has_value());
          CHECK(BigInt(*k) * (2 + n) == total);
        } else {
          CHECK_FALSE(k.has_value());
        }
      }
    }
  }
}

TEST_CASE("pairs (a, a+1) of ternary forms are perfect exactly for even a") {
  for (int a = 2; a <= 20; ++a) {
    const auto k = is_perfect(2, {a, a + 1});
    CHECK(k.has_value() == (a % 2 == 0));
    if (a % 2 == 0) CHECK(*k == (a / 2 + 1) * (a / 2 + 1));
  }
}

TEST_CASE("case spec sorts degrees and validates input") {
  const CaseSpec c(2, {4, 3, 3});
  CHECK(c.degrees() == std::vector<int>{3, 3, 4});
  CHECK(c.ambient_dimension() == 35);
  CHECK(c.require_k() == 7);
  CHECK(c.label() == "n=2 (3,3,4)");
  CHECK_THROWS_AS(CaseSpec(0, {2}), Error);
  CHECK_THROWS_AS(CaseSpec(2, {}), Error);
  CHECK_THROWS_AS(CaseSpec(2, {1, 3}), Error);
  CHECK_THROWS_AS(CaseSpec(2, {3, 4}).require_k(), Error);
}

TEST_CASE("veronese count is binom(d^n, s)") {
  for (int n = 1; n <= 3; ++n) {
    for (int d = 2; d <= 6; ++d) {
      const BigInt s = oracle::pascal(d + n, n) - n;
      BigInt pts = 1;
      for (int i = 0; i < n; ++i) pts *= d;
      if (pts < s) {
        CHECK_THROWS_AS(veronese_count(d, n), Error);
        continue;
      }
      const auto vc = veronese_count(d, n);
      CHECK(BigInt(vc.s) == s);
      CHECK(vc.points == pts);
      CHECK(vc.count == oracle::pascal(static_cast<int>(pts), static_cast<int>(s)));
    }
  }
}

TEST_CASE("binary identifiability needs k <= a_1 + 1") {
  CHECK(binary_identifiable(1, {3, 4}));   // k = 3
  CHECK(binary_identifiable(1, {5, 5}));   // k = 4
  CHECK_FALSE(binary_identifiable(1, {2, 8}));  // k = 4 > 3
  CHECK_FALSE(binary_identifiable(1, {2, 7}));  // not perfect
  CHECK_FALSE(binary_identifiable(2, {3, 3, 4}));
}

TEST_CASE("pair lower bound") {
  for (int t = 1; t <= 10; ++t) CHECK(pair_lower_bound(t) == (3 * t - 2) * (t - 1) / 2 + 1);
}
