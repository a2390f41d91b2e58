#pragma once

// Closed-form bound machinery for ternary coefficient measures and the
// constants derived from it.

#include <optional>
#include <string>
#include <vector>

#include "cyclo/numtheory.hpp"

namespace cyclo {

double bernoulli_B2(double x) noexcept;
double bernoulli_B4(double x) noexcept;

/// x - floor(x), in [0, 1).
double frac(double x) noexcept;

struct FourierCheck {
  double truncated = 0.0;
  double closed = 0.0;
  double error = 0.0;  // |truncated - closed|
};

/// sum_{0<|j|<=M} e(jx)/j^k against -(2 pi i)^k B_k(x)/k!, for k in {2, 4}
/// and x in [0, 1].
FourierCheck fourier_check(int k, double x, i64 M);

/// sum_{0<|m|,|n|<=M} e(mu + nv)/(m^2 n^2) against 4 pi^4 B2({u}) B2({v}).
/// The truncated double sum is a product of two single sums and is computed
/// that way.
FourierCheck lattice_check(double u, double v, i64 M);

/// The polynomial P(x, y) of the ternary square-sum bound.
/// Domain 0 <= x <= y <= 1/2, otherwise throws.
double P_poly(double x, double y);
/// f(x, y) = sum over {2x+y, 2x-y, 2y+x, 2y-x} of {u}^2 (1 - {u})^2; same domain.
double f_frac(double x, double y);
/// Partial derivative of P in x.
double P_dx(double x, double y);
/// d/dy P(y, y).
double P_diag_dy(double y);

/// x = min{q', p - q'}/p, y = min{r', p - r'}/p with q' = q^{-1}, r' = r^{-1}
/// mod p; swapped so that x <= y.
struct InverseFractions {
  double x = 0.0;
  double y = 0.0;
  i64 q_inv = 0;
  i64 r_inv = 0;
  bool swapped = false;
};

InverseFractions inverse_fractions(i64 p, i64 q, i64 r);

/// P(x, y)/6 + f(x, y)/12 at the inverse fractions of (p, q, r).
double q_bound(i64 p, i64 q, i64 r);

double s1_closed(double x, double y);
double s2_closed(double x, double y);

struct IntegralCheck {
  double numeric = 0.0;
  double closed = 0.0;
  double relative_error() const noexcept;
};

/// int_R (s(u) / (u (u - m)(u - n)))^2 du against
/// pi^2 (1/(m^2 n^2) + 1/(m^2 (m-n)^2) + 1/(n^2 (m-n)^2)).
/// Gauss-Legendre on unit panels over [-10^4, 10^4]; the tail is below 1e-15.
IntegralCheck routine_integral(i64 m, i64 n);

/// pi^-6 int_R (s(x) / (x (x-1)(x+1)))^2 dx, numerically.
double ternary_variance_integral();

/// The constraint a^2 - (2/3) m^3 + (m - a)^2 + a m^2 - 1/12 with
/// m = 1 - sqrt(1 - 2a); the variational bound is its root.
double variational_constraint(double a);

struct VariationalSolution {
  double a = 0.0;
  double m = 0.0;
  double residual = 0.0;  // constraint value at a
  int iterations = 0;
};

/// Bisection for the root of variational_constraint on [0.2, 0.3] to 1e-12.
VariationalSolution variational_solve();

inline constexpr double kTernarySumBound = 0.2731;

/// b_1 .. b_K of the general-order recursion.
struct BkSequence {
  std::vector<double> values;  // values[k-1] = b_k; underflows to 0 from k = 13 on
  std::vector<double> logs;    // logs[k-1] = log b_k, finite for every k

  double operator()(std::size_t k) const { return values.at(k - 1); }
  double log(std::size_t k) const { return logs.at(k - 1); }
  std::size_t size() const noexcept { return values.size(); }
};

/// Seeds b_1 = 1, b_2 = 1/2, b_3 = b3; b_k = 2^{k-1}/k! prod_{j=1}^{k-2} b_j^{k-j-1}.
BkSequence bk_sequence(std::size_t K, double b3 = kTernarySumBound);

struct CConstant {
  double value = 0.0;
  int truncation = 0;
  double tail_bound = 0.0;  // bound on the dropped log-product tail
};

/// C = b_5^{1/32} prod_{k=6}^{truncation} ((k-1)/k)^{2^{-k}}.
CConstant c_constant(double b3 = kTernarySumBound, int truncation = 64);

/// (k!)^{2^{-k}}, computed in logs.
double factorial_root(int k);

struct NamedConstant {
  std::string name;
  std::optional<double> value;
  std::optional<double> lower;
  std::optional<double> upper;
  std::string source;
};

std::vector<NamedConstant> named_constants();

}  // namespace cyclo
