#include "cyclo/bounds.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"

namespace cyclo {

namespace {

constexpr double kPi = std::numbers::pi;

void check_domain(double x, double y, const char* what) {
  if (!(x >= 0.0 && x <= y && y <= 0.5)) {
    throw Error(std::string(what) + ": need 0 <= x <= y <= 1/2, got (" + std::to_string(x) + ", " +
                std::to_string(y) + ")");
  }
}

double quartic_bump(double u) noexcept {
  const double f = frac(u);
  return f * f * (1 - f) * (1 - f);
}

// 20-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 10> kGaussX = {
    0.0765265211334973337546404, 0.2277858511416450780804962, 0.3737060887154195606725482,
    0.5108670019508270980043641, 0.6360536807265150254528367, 0.7463319064601507926143051,
    0.8391169718222188233945291, 0.9122344282513259058677524, 0.9639719272779137912676661,
    0.9931285991850949247861224};
constexpr std::array<double, 10> kGaussW = {
    0.1527533871307258506980843, 0.1491729864726037467878287, 0.1420961093183820513292983,
    0.1316886384491766268984945, 0.1181945319615184173123774, 0.1019301198172404350367501,
    0.0832767415767047487247581, 0.0626720483341090635695065, 0.0406014298003869413310400,
    0.0176140071391521183118620};

// sin(pi u) evaluated from the offset to the nearest integer, so that it keeps
// full relative accuracy near the integer zeros.
double sin_pi(double u) noexcept {
  const double k = std::nearbyint(u);
  const double h = u - k;
  const double s = std::sin(kPi * h);
  return std::fmod(k, 2.0) == 0.0 ? s : -s;
}

// int over the unit panel [a, a+1].
template <class F>
double gauss_panel(const F& f, double a) {
  const double mid = a + 0.5;
  double acc = 0.0;
  for (std::size_t i = 0; i < kGaussX.size(); ++i) {
    acc += kGaussW[i] * (f(mid - 0.5 * kGaussX[i]) + f(mid + 0.5 * kGaussX[i]));
  }
  return 0.5 * acc;
}

constexpr double kIntegralCutoff = 1e4;

}  // namespace

double bernoulli_B2(double x) noexcept { return x * x - x + 1.0 / 6.0; }

double bernoulli_B4(double x) noexcept {
  const double x2 = x * x;
  return x2 * x2 - 2 * x2 * x + x2 - 1.0 / 30.0;
}

double frac(double x) noexcept { return x - std::floor(x); }

FourierCheck fourier_check(int k, double x, i64 M) {
  if (k != 2 && k != 4) throw Error("fourier_check: k must be 2 or 4");
  if (M < 1) throw Error("fourier_check: M must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw Error("fourier_check: x must lie in [0, 1]");
  // sum_{j != 0} e(jx)/j^k is real: 2 sum_{j>=1} cos(2 pi j x)/j^k; add small terms first
  double sum = 0.0;
  for (i64 j = M; j >= 1; --j) {
    const double jd = static_cast<double>(j);
    sum += 2.0 * std::cos(2 * kPi * frac(jd * x)) / std::pow(jd, k);
  }
  // -(2 pi i)^k / k!:  k=2 -> 2 pi^2,  k=4 -> -(2/3) pi^4
  const double closed = k == 2 ? 2 * kPi * kPi * bernoulli_B2(x)
                               : -2.0 / 3.0 * std::pow(kPi, 4) * bernoulli_B4(x);
  return {sum, closed, std::fabs(sum - closed)};
}

FourierCheck lattice_check(double u, double v, i64 M) {
  const FourierCheck a = fourier_check(2, frac(u), M);
  const FourierCheck b = fourier_check(2, frac(v), M);
  const double closed = 4 * std::pow(kPi, 4) * bernoulli_B2(frac(u)) * bernoulli_B2(frac(v));
  const double truncated = a.truncated * b.truncated;
  return {truncated, closed, std::fabs(truncated - closed)};
}

double P_poly(double x, double y) {
  check_domain(x, y, "P_poly");
  const double x2 = x * x, y2 = y * y;
  return 2 * x - 11 * x2 + 26 * x2 * x - 17 * x2 * x2 - 5 * y2 + 18 * y2 * y - 17 * y2 * y2 +
         12 * x * y - 24 * x2 * y - 12 * x * y2 + 24 * x2 * y2;
}

double f_frac(double x, double y) {
  check_domain(x, y, "f_frac");
  return quartic_bump(2 * x + y) + quartic_bump(2 * x - y) + quartic_bump(2 * y + x) +
         quartic_bump(2 * y - x);
}

double P_dx(double x, double y) {
  check_domain(x, y, "P_dx");
  return 2 - 22 * x + 78 * x * x - 68 * x * x * x + 12 * y - 48 * x * y - 12 * y * y +
         48 * x * y * y;
}

double P_diag_dy(double y) {
  check_domain(y, y, "P_diag_dy");
  // P(y, y) = 2y - 4y^2 + 8y^3 - 10y^4
  return 2 - 8 * y + 24 * y * y - 40 * y * y * y;
}

InverseFractions inverse_fractions(i64 p, i64 q, i64 r) {
  if (p == q || p == r || q == r) throw Error("inverse_fractions: primes must be distinct");
  InverseFractions out;
  out.q_inv = mod_inverse(q, p);
  out.r_inv = mod_inverse(r, p);
  const double pd = static_cast<double>(p);
  out.x = static_cast<double>(std::min(out.q_inv, p - out.q_inv)) / pd;
  out.y = static_cast<double>(std::min(out.r_inv, p - out.r_inv)) / pd;
  if (out.x > out.y) {
    std::swap(out.x, out.y);
    out.swapped = true;
  }
  return out;
}

double q_bound(i64 p, i64 q, i64 r) {
  const InverseFractions f = inverse_fractions(p, q, r);
  return P_poly(f.x, f.y) / 6.0 + f_frac(f.x, f.y) / 12.0;
}

double s1_closed(double x, double y) {
  check_domain(x, y, "s1_closed");
  const double x2 = x * x;
  return x / 3 + 2 * x * y - x2 + x2 * x - 2 * x * y * y - 3 * x2 * y + 3 * x2 * y * y;
}

double s2_closed(double x, double y) {
  check_domain(x, y, "s2_closed");
  const double x2 = x * x, y2 = y * y;
  return 17.0 / 6 * x2 * x2 + 17.0 / 6 * y2 * y2 - 10.0 / 3 * x2 * x - 3 * y2 * y + 5.0 / 6 * x2 +
         5.0 / 6 * y2 - x2 * y2 + x2 * y - f_frac(x, y) / 12;
}

double IntegralCheck::relative_error() const noexcept {
  return std::fabs(numeric - closed) / std::fabs(closed);
}

IntegralCheck routine_integral(i64 m, i64 n) {
  if (m == 0 || n == 0 || m == n) throw Error("routine_integral: need distinct nonzero m, n");
  const double md = static_cast<double>(m), nd = static_cast<double>(n);
  auto integrand = [md, nd](double u) {
    const double v = sin_pi(u) / (u * (u - md) * (u - nd));
    return v * v;
  };
  // Panels are summed from the outside in so the small tail terms go first.
  const auto panels = static_cast<i64>(kIntegralCutoff);
  double acc = 0.0;
  for (i64 a = panels; a >= 1; --a) {
    acc += gauss_panel(integrand, static_cast<double>(a - 1));
    acc += gauss_panel(integrand, -static_cast<double>(a));
  }
  if (!std::isfinite(acc)) throw Error("routine_integral: quadrature produced a non-finite value");
  const double m2 = md * md, n2 = nd * nd, d2 = (md - nd) * (md - nd);
  const double closed = kPi * kPi * (1 / (m2 * n2) + 1 / (m2 * d2) + 1 / (n2 * d2));
  return {acc, closed};
}

double ternary_variance_integral() {
  return routine_integral(1, -1).numeric / std::pow(kPi, 6);
}

double variational_constraint(double a) {
  const double m = 1 - std::sqrt(1 - 2 * a);
  return a * a - 2.0 / 3.0 * m * m * m + (m - a) * (m - a) + a * m * m - 1.0 / 12.0;
}

VariationalSolution variational_solve() {
  double lo = 0.2, hi = 0.3;
  if (!(variational_constraint(lo) < 0 && variational_constraint(hi) > 0)) {
    throw Error("variational_solve: no sign change on [0.2, 0.3]");
  }
  VariationalSolution out;
  while (hi - lo > 1e-12) {
    const double mid = 0.5 * (lo + hi);
    (variational_constraint(mid) <= 0 ? lo : hi) = mid;
    ++out.iterations;
  }
  out.a = lo;
  out.m = 1 - std::sqrt(1 - 2 * lo);
  out.residual = variational_constraint(lo);
  return out;
}

BkSequence bk_sequence(std::size_t K, double b3) {
  if (K < 3) throw Error("bk_sequence: need K >= 3");
  BkSequence seq;
  seq.logs = {0.0, std::log(0.5), std::log(b3)};
  for (std::size_t k = 4; k <= K; ++k) {
    // log b_k = (k-1) log 2 - log k! + sum_j (k-j-1) log b_j
    double lg = static_cast<double>(k - 1) * std::log(2.0) - std::lgamma(static_cast<double>(k) + 1);
    for (std::size_t j = 1; j + 2 <= k; ++j) lg += static_cast<double>(k - j - 1) * seq.log(j);
    seq.logs.push_back(lg);
  }
  for (double lg : seq.logs) seq.values.push_back(std::exp(lg));
  return seq;
}

CConstant c_constant(double b3, int truncation) {
  const BkSequence seq = bk_sequence(5, b3);
  double lg = seq.log(5) / 32.0;
  for (int k = 6; k <= truncation; ++k) {
    lg += std::ldexp(std::log(static_cast<double>(k - 1) / k), -k);
  }
  CConstant c;
  c.value = std::exp(lg);
  c.truncation = truncation;
  // |log((k-1)/k)| <= 1/(k-1) <= 1, so the tail is below sum_{k>T} 2^{-k} = 2^{-T}.
  c.tail_bound = std::ldexp(1.0, -truncation);
  return c;
}

double factorial_root(int k) {
  return std::exp(std::ldexp(std::lgamma(static_cast<double>(k) + 1), -k));
}

std::vector<NamedConstant> named_constants() {
  const double pi2 = kPi * kPi;
  const CConstant c = c_constant();
  return {
      {"B2_circ", 4 / pi2, std::nullopt, std::nullopt, "binary-circle-maximum"},
      {"B2_sum", 0.5, std::nullopt, std::nullopt, "carlitz-binary-sum"},
      {"B2_sqr", std::sqrt(2.0) / 2, std::nullopt, std::nullopt, "carlitz-binary-square-sum"},
      {"B2_height", 1.0, std::nullopt, std::nullopt, "migotti-binary-height"},
      {"B3_circ", 1 / pi2, std::nullopt, std::nullopt, "ternary-circle-maximum"},
      {"B3_sum", std::nullopt, 1 / pi2, kTernarySumBound, "ternary-sum-variational"},
      {"B3_sqr", std::nullopt, std::sqrt(1.5) / pi2, std::sqrt(1.0 / 12), "ternary-square-sum"},
      {"B3_height", std::nullopt, 2.0 / 3.0, 0.75, "bachman-ternary-height"},
      {"C", c.value, std::nullopt, 0.859125, "general-order-constant"},
      {"ternary_variance", 3 / (2 * pi2 * pi2), std::nullopt, std::nullopt,
       "ternary-square-sum-lower"},
  };
}

}  // namespace cyclo
