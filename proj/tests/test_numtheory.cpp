#include <doctest.h>

#include <numeric>

#include <map>

#include "cyclo/error.hpp"
#include "cyclo/numtheory.hpp"

using namespace cyclo;

namespace {

bool trial_division_prime(i64 m) {
  if (m < 2) return false;
  for (i64 d = 2; d * d <= m; ++d) {
    if (m % d == 0) return false;
  }
  return true;
}

// N in (-n/2, n/2) matching every residue, by scanning.
i64 brute_crt(const ResidueCell& cell, const FactoredModulus& fm) {
  const i64 half = fm.n() / 2;
  for (i64 N = -half; N <= half; ++N) {
    bool ok = true;
    for (std::size_t i = 0; i < fm.k() && ok; ++i) {
      ok = ((N - cell.residues[i]) % fm.prime(i)) == 0;
    }
    if (ok) return N;
  }
  return fm.n();
}

}  // namespace

TEST_CASE("factored modulus validation") {
  const FactoredModulus fm({7, 3, 5});
  CHECK(fm.n() == 105);
  CHECK(fm.k() == 3);
  CHECK(fm.prime(0) == 3);
  CHECK(fm.to_string() == "3*5*7");
  CHECK(fm.product_of(0b101) == 21);
  CHECK_THROWS_WITH_AS(FactoredModulus({3, 9}), doctest::Contains("9"), Error);
  CHECK_THROWS_AS(FactoredModulus({2, 3}), Error);
  CHECK_THROWS_AS(FactoredModulus({3, 3}), Error);
  CHECK_THROWS_AS(FactoredModulus({}), Error);
  CHECK_THROWS_AS(FactoredModulus({2147483647, 2147483629, 2147483587}), Error);
}

TEST_CASE("mod_inverse") {
  CHECK(mod_inverse(3, 5) == 2);
  CHECK(mod_inverse(5, 3) == 2);
  CHECK(mod_inverse(1, 97) == 1);
  CHECK(mod_inverse(-1, 7) == 6);
  CHECK_THROWS_WITH_AS(mod_inverse(6, 9), doctest::Contains("not coprime"), Error);
  CHECK_THROWS_AS(mod_inverse(0, 7), Error);

  // exhaustive for m <= 1000
  for (i64 m = 2; m <= 1000; ++m) {
    for (i64 a = 1; a < m; ++a) {
      if (std::gcd(a, m) != 1) continue;
      const i64 inv = mod_inverse(a, m);
      REQUIRE(inv >= 1);
      REQUIRE(inv < m);
      REQUIRE(a * inv % m == 1);
    }
  }
}

TEST_CASE("signed residues") {
  CHECK(signed_residue(4, 5) == -1);
  CHECK(signed_residue(2, 5) == 2);
  CHECK(signed_residue(-3, 5) == 2);
  CHECK(mod_floor(-1, 7) == 6);
}

TEST_CASE("crt_signed and cell_of") {
  const FactoredModulus f15({3, 5});
  CHECK(crt_signed({{0, 0}}, f15) == 0);
  CHECK(crt_signed({{1, -2}}, f15) == -2);
  CHECK(crt_signed({{1, 1, 1}}, FactoredModulus({3, 5, 7})) == 1);
  CHECK(cell_of(-2, f15) == ResidueCell{{1, -2}});
  CHECK(cell_of(0, FactoredModulus({11, 13})) == ResidueCell{{0, 0}});
  CHECK(cell_of(1, FactoredModulus({3, 5, 7})) == ResidueCell{{1, 1, 1}});

  CHECK_THROWS_AS(crt_signed({{2, 0}}, f15), Error);
  CHECK_THROWS_AS(crt_signed({{0}}, f15), Error);
  CHECK_THROWS_AS(cell_of(8, f15), Error);
  CHECK_THROWS_AS(cell_of(-8, f15), Error);

  SUBCASE("brute-force oracle") {
    for (const auto& primes : std::vector<std::vector<i64>>{{3, 5}, {3, 5, 7}, {5, 11, 13}, {3, 5, 7, 11}}) {
      const FactoredModulus fm(primes);
      const i64 half = fm.n() / 2;
      for (i64 N = -half; N <= half; N += 7) {
        const ResidueCell c = cell_of(N, fm);
        REQUIRE(is_valid_cell(c, fm));
        REQUIRE(brute_crt(c, fm) == N);
      }
    }
  }

  SUBCASE("round trip, exhaustive") {
    for (const auto& primes : std::vector<std::vector<i64>>{{3, 5, 7, 11, 13}, {23, 37, 101}, {7, 13331}}) {
      const FactoredModulus fm(primes);
      REQUIRE(fm.n() <= 100'000);
      const i64 half = fm.n() / 2;
      for (i64 N = -half; N <= half; ++N) REQUIRE(crt_signed(cell_of(N, fm), fm) == N);
    }
  }
}

TEST_CASE("crt_combine") {
  const Congruence c = crt_combine({2, 3}, {3, 5});
  CHECK(c.modulus == 15);
  CHECK(c.residue == 8);
  CHECK_THROWS_AS(crt_combine({1, 6}, {1, 9}), Error);
}

TEST_CASE("is_prime") {
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK_FALSE(is_prime(561));
  for (i64 m = 0; m < 100'000; ++m) REQUIRE(is_prime(static_cast<u64>(m)) == trial_division_prime(m));
  // strong pseudoprimes to many small bases
  CHECK_FALSE(is_prime(3215031751ULL));
  CHECK_FALSE(is_prime(3825123056546413051ULL));
  CHECK(is_prime(2305843009213693951ULL));  // 2^61 - 1
  CHECK(is_prime(18446744073709551557ULL));  // largest 64-bit prime
  CHECK_FALSE(is_prime(18446744073709551615ULL));
}

TEST_CASE("prime_in_progression") {
  CHECK(prime_in_progression(1, 4, 10) == 13);
  CHECK(prime_in_progression(2, 3, 2) == 5);
  CHECK(prime_in_progression(1, 2, 2) == 3);
  CHECK_THROWS_AS(prime_in_progression(2, 4, 10), Error);
  CHECK_THROWS_WITH_AS(prime_in_progression(1, 1'000'000, 10, 3), doctest::Contains("3"), Error);
  for (i64 m : {3, 7, 30, 101}) {
    for (i64 r = 1; r < m; ++r) {
      if (std::gcd(r, m) != 1) continue;
      const i64 p = prime_in_progression(r, m, 1000);
      REQUIRE(p > 1000);
      REQUIRE(trial_division_prime(p));
      REQUIRE(p % m == r);
      for (i64 c = 1001; c < p; ++c) REQUIRE_FALSE((c % m == r && trial_division_prime(c)));
    }
  }
}

TEST_CASE("odd_primes_in, euler_phi, moebius") {
  CHECK(odd_primes_in(1, 20) == std::vector<i64>{3, 5, 7, 11, 13, 17, 19});
  CHECK(euler_phi(FactoredModulus({3, 5, 7})) == 48);
  const FactoredModulus fm({3, 5, 7});
  CHECK(moebius_complement(fm, 0b111) == 1);
  CHECK(moebius_complement(fm, 0b011) == -1);
  CHECK(moebius_complement(fm, 0) == -1);
}
