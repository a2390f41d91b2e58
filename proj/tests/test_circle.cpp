#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "cyclo/circle.hpp"
#include "cyclo/error.hpp"
#include "cyclo/measures.hpp"

using namespace cyclo;

namespace {

double rel(double a, double b) { return std::fabs(a - b) / std::max(1.0, std::fabs(b)); }

}  // namespace

TEST_CASE("sine helpers") {
  CHECK(s(0.5) == doctest::Approx(1.0));
  CHECK(s(0.0) == 0.0);
  CHECK(s(3.0) == 0.0);
  CHECK(s_d(1.0, 2) == doctest::Approx(1.0));
  CHECK(s(-0.25) == doctest::Approx(std::sqrt(0.5)));
}

TEST_CASE("eval_F at special points") {
  for (i64 p : {3, 5, 13}) {
    const FactoredModulus fm({p});
    CHECK(eval_F(cyclotomic_product(fm), 0.0L) == doctest::Approx(static_cast<double>(p)));
    CHECK(eval_F(cyclotomic_product(fm), Rational(0, 1)) == doctest::Approx(static_cast<double>(p)));
  }
  CHECK(eval_F(SineProduct({{1, 1}}), 0.5L) == doctest::Approx(2.0));
  CHECK(eval_F(SineProduct({{1, 1}}), Rational(1, 2)) == doctest::Approx(2.0));
  CHECK_THROWS_AS(eval_F(SineProduct({{1, -1}}), 0.0L), PoleError);
  CHECK_THROWS_AS(eval_F(SineProduct({{2, 1}, {1, -2}}), Rational(0, 1)), PoleError);
  CHECK(eval_F(SineProduct({{1, 2}, {2, -1}}), Rational(0, 1)) == 0.0);
  // Phi_15 at x = 1/3: Phi_15(omega) with omega a primitive cube root of unity
  const FactoredModulus f15({3, 5});
  CHECK(eval_F(cyclotomic_product(f15), Rational(1, 3)) ==
        doctest::Approx(eval_at_unit(cyclotomic(f15), 1.0 / 3)).epsilon(1e-12));
}

TEST_CASE("eval_F matches direct coefficient evaluation") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-0.5, 0.5);
  for (const auto& ps : std::vector<std::vector<i64>>{{3, 5}, {3, 5, 7}, {7, 11, 13}, {3, 5, 7, 11}, {11, 101}}) {
    const FactoredModulus fm(ps);
    const CoeffVec phi = cyclotomic(fm);
    const SineProduct spec = cyclotomic_product(fm);
    const CoeffVec rel_poly = relative_poly(fm);
    const SineProduct rel_spec = relative_product(fm);
    for (int i = 0; i < 1000; ++i) {
      const double x = xs(rng);
      const double direct = eval_at_unit(phi, x);
      REQUIRE(std::fabs(eval_F(spec, x) - direct) <= 1e-9 * std::max(1.0, direct));
      const double direct_rel = eval_at_unit(rel_poly, x);
      REQUIRE(std::fabs(eval_F(rel_spec, x) - direct_rel) <= 1e-9 * std::max(1.0, direct_rel));
    }
  }
}

TEST_CASE("circle points") {
  const FactoredModulus fm({3, 5, 7});
  const CirclePoint pt = make_point(fm, {{1, 1, 1}}, 0.25);
  CHECK(pt.N == 1);
  CHECK(static_cast<double>(pt.x(fm)) == doctest::Approx(1.25 / 105));
  CHECK_THROWS_AS(make_point(fm, {{1, 1, 1}}, 0.5), Error);
  CHECK_THROWS_AS(point_at(fm, 0, -0.6), Error);
  const CirclePoint back = point_near(fm, static_cast<double>(pt.x(fm)));
  CHECK(back.N == 1);
  CHECK(back.t == doctest::Approx(0.25));
  CHECK(point_near(fm, -0.4999).N == -52);
}

TEST_CASE("eval_F_crt") {
  const FactoredModulus f15({3, 5});
  const SineProduct spec15 = cyclotomic_product(f15);
  const CirclePoint pt = make_point(f15, {{0, 0}}, 0.2);
  CHECK(eval_F_crt(f15, pt, spec15) == doctest::Approx(eval_F(spec15, 0.2L / 15)).epsilon(1e-12));

  // s(nx) = s(t) = 0 at t = 0
  const FactoredModulus f105({3, 5, 7});
  const SineProduct spec105 = cyclotomic_product(f105);
  const CirclePoint p1 = make_point(f105, {{1, 1, 1}}, 0.0);
  CHECK(eval_F_crt(f105, p1, spec105) == doctest::Approx(eval_F(spec105, Rational(1, 105))).epsilon(1e-12));

  CHECK_THROWS_AS(eval_F_crt(f15, pt, SineProduct({{7, 1}})), Error);

  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> ts(-0.5, 0.5);
  for (const auto& ps : std::vector<std::vector<i64>>{{3, 5, 7}, {3, 5, 7, 11}, {5, 7, 11, 13}}) {
    const FactoredModulus fm(ps);
    const SineProduct spec = cyclotomic_product(fm);
    for (int i = 0; i < 1000; ++i) {
      ResidueCell cell;
      for (i64 p : fm.primes()) cell.residues.push_back(std::uniform_int_distribution<i64>(-(p - 1) / 2, (p - 1) / 2)(rng));
      const CirclePoint q = make_point(fm, cell, ts(rng));
      const double direct = eval_F(spec, q.x(fm));
      REQUIRE(rel(eval_F_crt(fm, q, spec, PairForm::kFirst), direct) <= 1e-12);
      REQUIRE(rel(eval_F_crt(fm, q, spec, PairForm::kSecond), direct) <= 1e-12);
      // the two printed forms of the pair factor
      for (std::size_t a = 0; a < fm.k(); ++a) {
        for (std::size_t b = a + 1; b < fm.k(); ++b) {
          const double first = pair_sine(fm, cell, a, b, q.t, PairForm::kFirst);
          const double second = pair_sine(fm, cell, a, b, q.t, PairForm::kSecond);
          const double d = static_cast<double>(fm.n() / (fm.prime(a) * fm.prime(b)));
          REQUIRE(std::fabs(first - second) <= 1e-12);
          REQUIRE(std::fabs(first - s(static_cast<double>(d * q.x(fm)))) <= 1e-11);
        }
      }
    }
  }
}

TEST_CASE("max_on_circle") {
  const FactoredModulus f3({3});
  const MaximizeResult m3 = max_on_circle(cyclotomic_product(f3), f3);
  CHECK(m3.value == doctest::Approx(3.0));
  CHECK(std::fabs(m3.x) < 1e-9);

  // Phi_15 against a dense grid of 10^6 points
  const FactoredModulus f15({3, 5});
  const CoeffVec phi15 = cyclotomic(f15);
  double grid = 0;
  for (int i = 0; i < 1'000'000; ++i) grid = std::max(grid, eval_at_unit(phi15, -0.5 + i / 1e6));
  for (Strategy st : {Strategy::kCells, Strategy::kGrid, Strategy::kBoth}) {
    MaximizeOptions o;
    o.strategy = st;
    const MaximizeResult m = max_on_circle(cyclotomic_product(f15), f15, o);
    CHECK(std::fabs(m.value - grid) / grid <= 1e-6);
    CHECK(m.value >= grid * (1 - 1e-12));
    CHECK(m.value == doctest::Approx(eval_F_crt(f15, m.argmax, cyclotomic_product(f15))).epsilon(1e-12));
    CHECK(m.value == doctest::Approx(eval_F(cyclotomic_product(f15), m.argmax.x(f15))).epsilon(1e-12));
  }
  MaximizeOptions both;
  both.strategy = Strategy::kBoth;
  const MaximizeResult mb = max_on_circle(cyclotomic_product(f15), f15, both);
  REQUIRE(mb.disagreement());
  CHECK(*mb.disagreement() < 1e-6);
}

TEST_CASE("cells strategy is never worse than a grid of the same budget") {
  for (const auto& ps : std::vector<std::vector<i64>>{{3, 5, 7}, {5, 7, 11}, {3, 5, 7, 11}, {11, 13}}) {
    const FactoredModulus fm(ps);
    const SineProduct spec = cyclotomic_product(fm);
    MaximizeOptions cells;
    const MaximizeResult c = max_on_circle(spec, fm, cells);
    const CoeffVec phi = cyclotomic(fm);
    double naive = 0;
    const int budget = 1 << 16;
    for (int i = 0; i < budget; ++i) naive = std::max(naive, eval_at_unit(phi, -0.5 + static_cast<double>(i) / budget));
    CHECK(c.value >= naive * (1 - 1e-12));
    // the value is F at the argmax and below S
    CHECK(c.value <= static_cast<double>(abs_sum(phi)) + 1e-9);
  }
}

TEST_CASE("cap 0 still examines the special cells") {
  const FactoredModulus fm({3, 5, 7});
  MaximizeOptions o;
  o.cap = 0;
  const MaximizeResult m = max_on_circle(cyclotomic_product(fm), fm, o);
  CHECK(m.cells_examined > 1);
  CHECK(m.value > 0);
}

TEST_CASE("parseval_Q") {
  for (const auto& ps : std::vector<std::vector<i64>>{{3}, {3, 5}, {3, 5, 7}}) {
    const FactoredModulus fm(ps);
    CHECK(std::fabs(parseval_Q(cyclotomic_product(fm), fm) - static_cast<double>(square_sum(cyclotomic(fm)))) <= 1e-6);
  }
  QuadratureOptions tight;
  tight.tolerance = 1e-30;
  tight.max_depth = 6;
  const FactoredModulus f15({3, 5});
  try {
    parseval_Q(cyclotomic_product(f15), f15, tight);
    FAIL("expected QuadratureError");
  } catch (const QuadratureError& e) {
    CHECK(e.best_estimate() == doctest::Approx(7.0).epsilon(1e-3));
  }
}

TEST_CASE("quotient bounds") {
  CHECK(quotient_bound_check(3, 3, 1000).holds);
  CHECK(quotient_bound_check(5, 3, 1000).holds);
  const QuotientCheck q = quotient_bound_check(7, 4, 1000);
  CHECK(q.holds);
  CHECK(q.worst_single == doctest::Approx(1.0));  // equality at x -> 0
}

TEST_CASE("strategy names") {
  CHECK(strategy_from_string("grid") == Strategy::kGrid);
  CHECK(to_string(Strategy::kCells) == "cells");
  CHECK_THROWS_AS(strategy_from_string("random"), Error);
}
