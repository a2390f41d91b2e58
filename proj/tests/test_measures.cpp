#include <doctest.h>

#include <cmath>

#include "cyclo/error.hpp"
#include "cyclo/measures.hpp"
#include "cyclo/polyarith.hpp"

using namespace cyclo;

TEST_CASE("coefficient measures") {
  const CoeffVec phi15 = cyclotomic(FactoredModulus({3, 5}));
  CHECK(height(phi15) == 1);
  CHECK(abs_sum(phi15) == 7);
  CHECK(square_sum(phi15) == 7);
  CHECK(jump_sum(phi15) == 14);  // includes the two boundary jumps
  CHECK(height(cyclotomic(FactoredModulus({3, 5, 7}))) == 2);
  CHECK(height(cyclotomic(FactoredModulus({3}))) == 1);
  const CoeffVec zero;
  CHECK(height(zero) == 0);
  CHECK(abs_sum(zero) == 0);
  CHECK(square_sum(zero) == 0);
  CHECK(jump_sum(CoeffVec({1, 1, 1})) == 2);
  CHECK(jump_sum(CoeffVec({5})) == 10);
  for (i64 p : {3, 5, 7, 101}) {
    const CoeffVec c = cyclotomic(FactoredModulus({p}));
    CHECK(abs_sum(c) == p);
    CHECK(square_sum(c) == p);
  }
  CHECK_THROWS_AS(square_sum(CoeffVec({3'037'000'500, 3'037'000'500})), OverflowError);
}

TEST_CASE("carlitz closed form") {
  CHECK(carlitz_S(3, 5) == 7);
  CHECK(carlitz_S(3, 7) == 9);
  for (i64 p : {3, 5, 7, 11, 13}) {
    for (i64 q : {17, 19, 23, 29}) {
      const CoeffVec c = cyclotomic(FactoredModulus({p, q}));
      REQUIRE(carlitz_S(p, q) == abs_sum(c));
      REQUIRE(carlitz_S(p, q) == square_sum(c));
      REQUIRE(2 * carlitz_S(p, q) < p * q);
    }
  }
}

TEST_CASE("normalizer") {
  CHECK(m_normalizer(FactoredModulus({3, 5})) == 1);
  CHECK(m_normalizer(FactoredModulus({7})) == 1);
  CHECK(m_normalizer(FactoredModulus({3, 5, 7})) == 3);
  CHECK(m_normalizer(FactoredModulus({3, 5, 7, 11})) == 135);
}

TEST_CASE("u_pair and u_max") {
  CHECK(u_pair(5, 3) == Rational(11, 30));
  CHECK(u_pair(3, 5) == Rational(9, 30));
  const Rational u = u_max(3, 5, 7);
  CHECK(u >= u_pair(5, 7));
  CHECK(u >= u_pair(7, 3));
  CHECK(u >= u_pair(3, 5));
  CHECK((u == u_pair(5, 7) || u == u_pair(7, 3) || u == u_pair(3, 5)));
}

TEST_CASE("measure report and chain") {
  const FactoredModulus f5({5});
  const MeasureReport r5 = measure_report(f5, cyclotomic(f5), 5.0);
  CHECK(r5.A == 1);
  CHECK(r5.S == 5);
  CHECK(r5.Q == 5);
  CHECK(chain_holds(r5));

  const FactoredModulus f15({3, 5});
  MeasureReport r = measure_report(f15, cyclotomic(f15));
  CHECK(r.A == 1);
  CHECK(r.S == 7);
  CHECK(r.Q == 7);
  CHECK(r.M == 1);
  CHECK(r.normalized_S() == doctest::Approx(7.0 / 15));
  CHECK(r.normalized_Q() == doctest::Approx(std::sqrt(7.0 / 15)));
  CHECK_FALSE(r.normalized_L());
  CHECK(chain_holds(r));
  r.L = 7.0 + 1e-3;  // L/n above S/n breaks the chain
  CHECK_FALSE(chain_holds(r));
}
