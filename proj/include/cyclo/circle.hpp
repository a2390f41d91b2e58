#pragma once

// F(x) = |P(e^{2 pi i x})| for P = prod (1 - z^d)^{j_d}, written as the sine
// product 2^{sum j_d} prod s(d x)^{j_d} with s(x) = |sin(pi x)|.

#include <cstdint>
#include <optional>
#include <string>

#include "cyclo/numtheory.hpp"
#include "cyclo/polyarith.hpp"
#include "cyclo/rational.hpp"

namespace cyclo {

/// |sin(pi x)|
double s(double x) noexcept;
/// s(x / d)
double s_d(double x, i64 d) noexcept;

/// F at a floating point x. Factors that vanish exactly are paired: when the
/// vanishing exponents sum to zero each contributes its analytic limit d^{j_d};
/// a positive sum gives 0, a negative sum throws PoleError.
double eval_F(const SineProduct& p, long double x);
/// F at a rational x; fractional parts of d*x are computed exactly.
double eval_F(const SineProduct& p, const Rational& x);

/// x = (N + t)/n with N = crt_signed(cell) and t in [-1/2, 1/2).
struct CirclePoint {
  ResidueCell cell;
  i64 N = 0;
  double t = 0.0;

  long double x(const FactoredModulus& fm) const noexcept {
    return (static_cast<long double>(N) + t) / static_cast<long double>(fm.n());
  }
};

CirclePoint make_point(const FactoredModulus& fm, const ResidueCell& cell, double t);
CirclePoint point_at(const FactoredModulus& fm, i64 N, double t);
/// Nearest CirclePoint to a floating x in [-1/2, 1/2).
CirclePoint point_near(const FactoredModulus& fm, double x);

/// Which of the two equal expressions is used for s((n/p_i p_j) x).
enum class PairForm { kFirst, kSecond };

/// s((n / p_i p_j) x) from the residues only: with p_i^* = p_i^{-1} mod p_j,
///   kFirst:  s_{p_i p_j}((a_j - a_i) p_i p_i^* + a_i + t)
///   kSecond: s_{p_i p_j}((a_i - a_j) p_j p_j^* + a_j + t)
double pair_sine(const FactoredModulus& fm, const ResidueCell& cell, std::size_t i, std::size_t j,
                 double t, PairForm form = PairForm::kFirst);

/// F at a CirclePoint, every factor computed from residues: d = n as s(t),
/// d = n/p_i as s_{p_i}(a_i + t), d = n/p_i p_j by pair_sine, any other
/// divisor from N mod (n/d). Every d must divide n.
double eval_F_crt(const FactoredModulus& fm, const CirclePoint& pt, const SineProduct& p,
                  PairForm form = PairForm::kFirst);

enum class Strategy { kGrid, kCells, kBoth };

std::string to_string(Strategy s);
Strategy strategy_from_string(const std::string& s);

struct MaximizeOptions {
  Strategy strategy = Strategy::kCells;
  i64 cap = 32;     // |a_i| <= cap for the cell box
  i64 grid = 0;     // grid points; 0 = min(2^24, max(2^12, 16 n))
  unsigned jobs = 0;
};

struct MaximizeResult {
  double value = 0.0;
  CirclePoint argmax;
  double x = 0.0;
  std::size_t cells_examined = 0;
  int refinement_depth = 0;
  Strategy strategy = Strategy::kCells;
  std::optional<double> grid_value;
  std::optional<double> cells_value;

  /// Relative disagreement of the two strategies when both ran.
  std::optional<double> disagreement() const noexcept;
};

/// Best value of F found on the circle: a certified lower bound on max F,
/// since `value` is F evaluated at `argmax`.
MaximizeResult max_on_circle(const SineProduct& p, const FactoredModulus& fm,
                             const MaximizeOptions& opts = {});

struct QuadratureOptions {
  double tolerance = 1e-9;  // absolute, on Q
  int max_depth = 40;
  unsigned jobs = 0;
};

/// I_cell = int_{-1/2}^{1/2} F((N + t)/n)^2 dt by adaptive Simpson, split at t = 0.
double cell_integral(const SineProduct& p, const FactoredModulus& fm, const ResidueCell& cell,
                     const QuadratureOptions& opts = {});

/// Q = int_{-1/2}^{1/2} F(x)^2 dx = (1/n) sum over all cells of I_cell.
/// Throws QuadratureError (with the best estimate) if any panel hits max_depth.
double parseval_Q(const SineProduct& p, const FactoredModulus& fm, const QuadratureOptions& opts = {});

struct QuotientCheck {
  bool holds = false;
  double worst_single = 0.0;  // max s(px)/s(x) / p
  double worst_pair = 0.0;    // max s(px)s(qx)/s(x) / min{p,q}
  std::size_t points = 0;
};

/// Checks s(px)/s(x) <= p and s(px)s(qx)/s(x) <= min{p,q} on `samples`
/// random points plus j/p, j/q and their +-1e-9 neighbours.
QuotientCheck quotient_bound_check(i64 p, i64 q, std::size_t samples, std::uint64_t seed = 1);

}  // namespace cyclo
