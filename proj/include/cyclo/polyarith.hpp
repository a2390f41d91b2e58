#pragma once

// Exact dense integer arithmetic for products  prod_d (1 - z^d)^{j_d}.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "cyclo/numtheory.hpp"

namespace cyclo {

/// Dense integer polynomial, lowest degree first, trailing zeros trimmed.
class CoeffVec {
 public:
  CoeffVec() = default;
  explicit CoeffVec(std::vector<i64> coeffs);

  std::span<const i64> coeffs() const noexcept { return c_; }
  std::size_t size() const noexcept { return c_.size(); }
  /// Coefficient of z^m; zero past the end.
  i64 operator[](std::size_t m) const noexcept { return m < c_.size() ? c_[m] : 0; }
  /// -1 for the zero polynomial.
  i64 degree() const noexcept { return static_cast<i64>(c_.size()) - 1; }
  bool is_zero() const noexcept { return c_.empty(); }

  bool operator==(const CoeffVec&) const = default;

 private:
  std::vector<i64> c_;
};

/// One factor (1 - z^d)^j.
struct SineTerm {
  i64 d = 1;
  i64 j = 1;

  bool operator==(const SineTerm&) const = default;
};

/// A formal product prod (1 - z^d)^{j_d} with distinct d and nonzero j_d.
class SineProduct {
 public:
  SineProduct() = default;
  explicit SineProduct(std::vector<SineTerm> terms);

  std::span<const SineTerm> terms() const noexcept { return terms_; }
  /// sum of j_d; the power of two in the sine form.
  i64 exponent_sum() const noexcept;
  /// sum of d * j_d; the degree when the product is a polynomial.
  i64 weighted_degree() const;

 private:
  std::vector<SineTerm> terms_;
};

/// Moebius product for Phi_n:  prod_{d | n} (1 - z^d)^{mu(n/d)}.
SineProduct cyclotomic_product(const FactoredModulus& fm);
/// (1 - z^n) prod_{i<j} (1 - z^{n/p_i p_j}) / prod_i (1 - z^{n/p_i}).
SineProduct relative_product(const FactoredModulus& fm);
/// (1 - z^n) prod_{i>=2} (1 - z^{n/p_1 p_i}) / prod_i (1 - z^{n/p_i}); needs k >= 2.
SineProduct fn_product(const FactoredModulus& fm);

// In-place kernels on a power series truncated at c.size().
void multiply_one_minus(std::vector<i64>& c, i64 d);
void divide_one_minus(std::vector<i64>& c, i64 d);

/// Power series of the product modulo z^T. Positive factors are applied before
/// the divisions; the result does not depend on the order.
CoeffVec expand_product(const SineProduct& p, std::size_t T);

CoeffVec cyclotomic(const FactoredModulus& fm);
/// f_n^*: the recursion series of Phi_n truncated modulo z^n.
CoeffVec fn_star(const FactoredModulus& fm);
/// P_n; throws if the quotient does not terminate below 2n.
CoeffVec relative_poly(const FactoredModulus& fm);

/// a * b modulo z^T.
CoeffVec multiply_truncated(const CoeffVec& a, const CoeffVec& b, std::size_t T);
/// c(z^e) modulo z^T.
CoeffVec substitute_power(const CoeffVec& c, i64 e, std::size_t T);

/// One inner factor Phi_{p_1...p_j}(z^e) of the f_n recursion (1-based i, j).
struct RecursionFactor {
  std::size_t j = 0;
  std::size_t i = 0;
  i64 base = 1;      // p_1 ... p_j
  i64 exponent = 1;  // p_{j+2} ... p_k / p_i
};

struct RecursionCheck {
  bool holds = false;
  std::vector<RecursionFactor> factors;
  std::optional<i64> first_mismatch;  // exponent of the first differing coefficient
  i64 lhs_coeff = 0;                  // Phi_n coefficient there
  i64 rhs_coeff = 0;                  // product coefficient there
  std::string diagnostic;
};

/// Checks Phi_n = f_n^* prod_j prod_i Phi_{p_1..p_j}(z^{p_{j+2}..p_k/p_i}) mod z^n.
RecursionCheck verify_recursion(const FactoredModulus& fm);

/// |sum_m c_m e^{2 pi i m x}| by direct complex summation.
double eval_at_unit(const CoeffVec& c, double x);

}  // namespace cyclo
