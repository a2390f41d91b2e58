#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cyclo/bounds.hpp"
#include "cyclo/error.hpp"

using namespace cyclo;

namespace {

constexpr double kPi = std::numbers::pi;

// (1/(16 pi^4)) sum_{n != 0} g(n)/n^4 with the S2 bracket, truncated at M.
double s2_lattice(double x, double y, int M) {
  auto e = [](double u) { return std::cos(2 * kPi * u); };
  double acc = 0;
  for (int n = M; n >= 1; --n) {
    const double v = 12 - 8 * e(n * x) - 8 * e(n * y) + 2 * e(n * (y + x)) + 2 * e(n * (y - x)) - 4 * e(2 * n * x) -
                     4 * e(2 * n * y) + 2 * e(n * (2 * y - x)) + 2 * e(n * (2 * y + x)) + 2 * e(n * (2 * x - y)) +
                     2 * e(n * (2 * x + y));
    acc += 2 * v / std::pow(n, 4);
  }
  return acc / (16 * std::pow(kPi, 4));
}

// Same for S1 over m, n != 0.
double s1_lattice(double x, double y, int M) {
  auto e = [](double u) { return std::cos(2 * kPi * u); };
  double acc = 0;
  for (int m = -M; m <= M; ++m) {
    if (m == 0) continue;
    for (int n = -M; n <= M; ++n) {
      if (n == 0) continue;
      const double v = 12 - 8 * e(m * x) - 8 * e(n * y) + 4 * e(m * x + n * y) - 4 * e(m * y + n * y) -
                       4 * e(m * x + n * x) + 2 * e(m * (y + x) + n * y) + 2 * e(m * (y - x) + n * y) +
                       2 * e(m * x + n * (y + x)) + 2 * e(m * x + n * (y - x));
      acc += v / (static_cast<double>(m) * m * n * n);
    }
  }
  return acc / (16 * std::pow(kPi, 4));
}

}  // namespace

TEST_CASE("Bernoulli polynomials") {
  CHECK(bernoulli_B2(0) == doctest::Approx(1.0 / 6));
  CHECK(bernoulli_B4(0) == doctest::Approx(-1.0 / 30));
  CHECK(bernoulli_B2(0.5) == doctest::Approx(-1.0 / 12));
  CHECK(frac(-0.25) == doctest::Approx(0.75));
  CHECK(frac(2.0) == 0.0);
}

TEST_CASE("Fourier series of B2 and B4") {
  const FourierCheck z4 = fourier_check(4, 0.0, 1000);
  CHECK(z4.closed == doctest::Approx(std::pow(kPi, 4) / 45));
  CHECK(z4.truncated == doctest::Approx(std::pow(kPi, 4) / 45).epsilon(1e-9));
  const FourierCheck h2 = fourier_check(2, 0.5, 10'000);
  // B2(1/2) = -1/12 recovered from the truncated sum
  CHECK(std::fabs(h2.truncated / (2 * kPi * kPi) + 1.0 / 12) < 1e-3);
  CHECK(fourier_check(2, 0.0, 10).closed == doctest::Approx(2 * kPi * kPi / 6));
  // O(1/M) and O(1/M^3) decay
  for (double x : {0.1, 0.37, 0.5}) {
    const double e2a = fourier_check(2, x, 100).error, e2b = fourier_check(2, x, 1000).error;
    const double e4a = fourier_check(4, x, 100).error, e4b = fourier_check(4, x, 1000).error;
    CHECK(e2b < e2a);
    CHECK(e2b < 2.0 / 1000);
    CHECK(e4b < e4a);
    CHECK(e4b < 1.0 / 1e9);
  }
  CHECK_THROWS_AS(fourier_check(3, 0.2, 10), Error);
  CHECK_THROWS_AS(fourier_check(2, 1.5, 10), Error);
  CHECK_THROWS_AS(fourier_check(2, 0.5, 0), Error);
  CHECK(lattice_check(0.3, 0.7, 10'000).error < 1e-2);
}

TEST_CASE("P and f") {
  CHECK(P_poly(0.5, 0.5) == doctest::Approx(0.375));
  CHECK(f_frac(0.25, 0.25) == doctest::Approx(9.0 / 64));
  double worst = 0;
  for (int i = 0; i <= 100; ++i) {
    for (int j = 0; j <= i; ++j) worst = std::max(worst, f_frac(j / 200.0, i / 200.0));
  }
  CHECK(worst <= 0.25);
  CHECK_THROWS_AS(P_poly(0.3, 0.2), Error);
  CHECK_THROWS_AS(f_frac(-0.1, 0.2), Error);
  CHECK_THROWS_AS(P_poly(0.1, 0.6), Error);
  // diagonal closed form
  for (double y : {0.1, 0.25, 0.4}) {
    CHECK(P_poly(y, y) == doctest::Approx(2 * y - 4 * y * y + 8 * y * y * y - 10 * y * y * y * y));
  }
}

TEST_CASE("derivatives match finite differences") {
  const double h = 1e-6;
  for (double x : {0.05, 0.2, 0.3}) {
    for (double y : {0.31, 0.45}) {
      const double fd = (P_poly(x + h, y) - P_poly(x - h, y)) / (2 * h);
      CHECK(P_dx(x, y) == doctest::Approx(fd).epsilon(1e-6));
    }
  }
  for (double y : {0.1, 0.3, 0.45}) {
    const double fd = (P_poly(y + h, y + h) - P_poly(y - h, y - h)) / (2 * h);
    CHECK(P_diag_dy(y) == doctest::Approx(fd).epsilon(1e-6));
  }
}

TEST_CASE("inverse fractions and q_bound") {
  const InverseFractions f = inverse_fractions(3, 5, 7);
  CHECK(f.q_inv == 2);
  CHECK(f.r_inv == 1);
  CHECK(f.x == doctest::Approx(1.0 / 3));
  CHECK(f.y == doctest::Approx(1.0 / 3));
  CHECK(q_bound(3, 5, 7) == doctest::Approx(P_poly(1.0 / 3, 1.0 / 3) / 6 + f_frac(1.0 / 3, 1.0 / 3) / 12));
  CHECK(q_bound(11, 13, 17) == q_bound(11, 17, 13));
  CHECK(P_poly(0.5, 0.5) / 6 + 0.25 / 12 == doctest::Approx(1.0 / 12));
  CHECK_THROWS_AS(inverse_fractions(3, 5, 5), Error);
}

TEST_CASE("S1 and S2 closed forms") {
  CHECK(s1_closed(1e-12, 0.3) == doctest::Approx(0.0).epsilon(1e-10));
  CHECK(std::fabs(s2_closed(0.25, 0.25) - s2_lattice(0.25, 0.25, 1000)) < 1e-2);
  for (const auto& [x, y] : std::vector<std::pair<double, double>>{{0.1, 0.3}, {0.2, 0.45}, {0.25, 0.25}}) {
    CHECK(std::fabs(s2_closed(x, y) - s2_lattice(x, y, 1000)) < 1e-9);
    CHECK(std::fabs(s1_closed(x, y) - s1_lattice(x, y, 300)) < 2e-3);
  }
}

TEST_CASE("routine integral") {
  const IntegralCheck a = routine_integral(1, 2);
  CHECK(a.closed == doctest::Approx(1.5 * kPi * kPi));
  CHECK(a.relative_error() < 1e-6);
  const IntegralCheck b = routine_integral(-1, 1);
  CHECK(b.closed == doctest::Approx(1.5 * kPi * kPi));
  CHECK(b.relative_error() < 1e-6);
  CHECK(routine_integral(2, 5).relative_error() < 1e-6);
  CHECK_THROWS_AS(routine_integral(0, 2), Error);
  CHECK_THROWS_AS(routine_integral(3, 3), Error);
  const double tv = ternary_variance_integral();
  CHECK(std::fabs(tv - 3 / (2 * std::pow(kPi, 4))) < 1e-6);
  CHECK(tv * std::pow(kPi, 6) == doctest::Approx(1.5 * kPi * kPi));
}

TEST_CASE("variational solver") {
  CHECK(variational_constraint(0) == doctest::Approx(-1.0 / 12));
  const VariationalSolution v = variational_solve();
  CHECK(std::fabs(v.a - 0.273099) < 1e-5);
  CHECK(std::fabs(v.residual) < 1e-10);
  CHECK(v.a < 0.2731);
  CHECK(v.m == doctest::Approx(1 - std::sqrt(1 - 2 * v.a)));
  // increasing on the bracket
  for (double a = 0.2; a < 0.3; a += 0.01) CHECK(variational_constraint(a + 0.01) > variational_constraint(a));
}

TEST_CASE("b_k and C") {
  const BkSequence b = bk_sequence(30);
  CHECK(b(1) == 1.0);
  CHECK(b(2) == 0.5);
  CHECK(b(3) == 0.2731);
  CHECK(b(4) == doctest::Approx(1.0 / 6).epsilon(1e-15));
  CHECK(b(5) == doctest::Approx(0.2731 / 30).epsilon(1e-15));
  for (std::size_t k = 6; k <= 12; ++k) {
    REQUIRE(b(k) > 0);
    REQUIRE(b(k) == doctest::Approx((k - 1.0) / k * b(k - 1) * b(k - 1)).epsilon(1e-12));
    // ratio form of the same relation
    REQUIRE(b(k) / b(k - 1) == doctest::Approx((k - 1.0) / k * b(k - 1)).epsilon(1e-12));
  }
  for (std::size_t k = 6; k <= 30; ++k) {
    REQUIRE(std::isfinite(b.log(k)));
    REQUIRE(b.log(k) == doctest::Approx(std::log((k - 1.0) / k) + 2 * b.log(k - 1)).epsilon(1e-12));
  }
  CHECK(b(30) == 0.0);
  CHECK_THROWS_AS(bk_sequence(2), Error);
  const CConstant c = c_constant();
  CHECK(c.value < 0.859125);
  CHECK(c.value == doctest::Approx(0.8591248754366).epsilon(1e-12));
  CHECK(c.tail_bound < std::ldexp(1.0, -60));
  // C = lim b_k^(2^-k)
  CHECK(std::exp(std::ldexp(b.log(30), -30)) == doctest::Approx(c.value).epsilon(1e-8));
  CHECK(factorial_root(20) < 1 + 1e-3);
  CHECK(factorial_root(3) > factorial_root(10));
}

TEST_CASE("named constants") {
  const auto table = named_constants();
  auto find = [&](const std::string& name) {
    for (const auto& c : table) {
      if (c.name == name) return c;
    }
    FAIL("missing constant " << name);
    return table.front();
  };
  CHECK(*find("B2_circ").value == doctest::Approx(0.405285).epsilon(1e-6));
  CHECK(*find("B2_sum").value == 0.5);
  CHECK(*find("B2_sqr").value == doctest::Approx(std::sqrt(2.0) / 2));
  CHECK(*find("B2_height").value == 1.0);
  CHECK(*find("B3_circ").value == doctest::Approx(1 / (kPi * kPi)));
  CHECK(*find("B3_sum").upper == 0.2731);
  CHECK(*find("B3_sqr").upper == doctest::Approx(0.288675).epsilon(1e-6));
  CHECK(*find("B3_sqr").lower == doctest::Approx(0.124093).epsilon(1e-6));
  CHECK(*find("B3_height").lower == doctest::Approx(2.0 / 3));
  CHECK(*find("B3_height").upper == 0.75);
  for (const auto& c : table) CHECK_FALSE(c.source.empty());
}
