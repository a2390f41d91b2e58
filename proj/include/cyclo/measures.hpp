#pragma once

// Coefficient statistics of cyclotomic polynomials.

#include <optional>
#include <string>

#include "cyclo/numtheory.hpp"
#include "cyclo/polyarith.hpp"
#include "cyclo/rational.hpp"

namespace cyclo {

/// Height A: max |a(m)|.
i64 height(const CoeffVec& c) noexcept;
/// S: sum |a(m)|, overflow-checked.
i64 abs_sum(const CoeffVec& c);
/// Q: sum a(m)^2, overflow-checked.
i64 square_sum(const CoeffVec& c);

/// Total variation sum_k |a(k) - a(k-1)|, counting the virtual zeros at
/// k = -1 and k = deg + 1 (so a constant c contributes 2|c|).
i64 jump_sum(const CoeffVec& c);

/// 2 p* q* - 1 with p* = p^{-1} mod q and q* = q^{-1} mod p.
i64 carlitz_S(i64 p, i64 q);

/// M_n = prod_{j=1}^{k-2} p_j^{2^{k-j-1} - 1}; 1 for k <= 2.
i64 m_normalizer(const FactoredModulus& fm);

/// (1/p) min{q*, p - q*} - 1/(2pq), q* = q^{-1} mod p.
Rational u_pair(i64 p, i64 q);
/// max{u_pair(q,r), u_pair(r,p), u_pair(p,q)}.
Rational u_max(i64 p, i64 q, i64 r);

struct MeasureReport {
  FactoredModulus modulus{{3}};
  i64 A = 0;
  i64 S = 0;
  i64 Q = 0;
  i64 J = 0;
  std::optional<double> L;
  i64 M = 1;

  i64 n() const noexcept { return modulus.n(); }
  std::size_t k() const noexcept { return modulus.k(); }
  double normalized_A() const noexcept;
  double normalized_S() const noexcept;  // (S/n)/M
  double normalized_Q() const noexcept;  // sqrt(Q/n)/M
  std::optional<double> normalized_L() const noexcept;
};

MeasureReport measure_report(const FactoredModulus& fm, const CoeffVec& phi,
                             std::optional<double> L = std::nullopt);

/// L/n <= S/n <= sqrt(Q/n) <= A, with `tol` slack on the L entry only.
bool chain_holds(const MeasureReport& r, double tol = 1e-9) noexcept;

}  // namespace cyclo
