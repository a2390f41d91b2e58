#include "cyclo/measures.hpp"

#include <algorithm>
#include <cmath>

#include "cyclo/error.hpp"

namespace cyclo {

namespace {

i64 iabs(i64 v) noexcept { return v < 0 ? -v : v; }

}  // namespace

i64 height(const CoeffVec& c) noexcept {
  i64 h = 0;
  for (i64 a : c.coeffs()) h = std::max(h, iabs(a));
  return h;
}

i64 abs_sum(const CoeffVec& c) {
  i64 s = 0;
  const auto cc = c.coeffs();
  for (std::size_t m = 0; m < cc.size(); ++m) {
    if (__builtin_add_overflow(s, iabs(cc[m]), &s)) throw OverflowError("abs_sum", static_cast<i64>(m));
  }
  return s;
}

i64 square_sum(const CoeffVec& c) {
  i64 s = 0;
  const auto cc = c.coeffs();
  for (std::size_t m = 0; m < cc.size(); ++m) {
    i64 sq = 0;
    if (__builtin_mul_overflow(cc[m], cc[m], &sq) || __builtin_add_overflow(s, sq, &s)) {
      throw OverflowError("square_sum", static_cast<i64>(m));
    }
  }
  return s;
}

i64 jump_sum(const CoeffVec& c) {
  const auto cc = c.coeffs();
  i64 j = 0;
  i64 prev = 0;
  for (i64 a : cc) {
    j += iabs(a - prev);
    prev = a;
  }
  return j + iabs(prev);
}

i64 carlitz_S(i64 p, i64 q) {
  if (p == q) throw Error("carlitz_S: primes must be distinct");
  return 2 * mod_inverse(p, q) * mod_inverse(q, p) - 1;
}

i64 m_normalizer(const FactoredModulus& fm) {
  const std::size_t k = fm.k();
  i64 M = 1;
  for (std::size_t j = 1; j + 2 <= k; ++j) {
    const i64 e = (i64{1} << (k - j - 1)) - 1;
    for (i64 r = 0; r < e; ++r) {
      if (__builtin_mul_overflow(M, fm.prime(j - 1), &M)) throw Error("m_normalizer overflows 64 bits");
    }
  }
  return M;
}

Rational u_pair(i64 p, i64 q) {
  const i64 qs = mod_inverse(q, p);
  return Rational(std::min(qs, p - qs), p) - Rational(1, 2 * p * q);
}

Rational u_max(i64 p, i64 q, i64 r) {
  return std::max({u_pair(q, r), u_pair(r, p), u_pair(p, q)});
}

double MeasureReport::normalized_A() const noexcept {
  return static_cast<double>(A) / static_cast<double>(M);
}

double MeasureReport::normalized_S() const noexcept {
  return static_cast<double>(S) / static_cast<double>(n()) / static_cast<double>(M);
}

double MeasureReport::normalized_Q() const noexcept {
  return std::sqrt(static_cast<double>(Q) / static_cast<double>(n())) / static_cast<double>(M);
}

std::optional<double> MeasureReport::normalized_L() const noexcept {
  if (!L) return std::nullopt;
  return *L / static_cast<double>(n()) / static_cast<double>(M);
}

MeasureReport measure_report(const FactoredModulus& fm, const CoeffVec& phi, std::optional<double> L) {
  MeasureReport r;
  r.modulus = fm;
  r.A = height(phi);
  r.S = abs_sum(phi);
  r.Q = square_sum(phi);
  r.J = jump_sum(phi);
  r.L = L;
  r.M = m_normalizer(fm);
  return r;
}

bool chain_holds(const MeasureReport& r, double tol) noexcept {
  const i128 n = r.n();
  // S/n <= sqrt(Q/n)  <=>  S^2 <= n Q;  sqrt(Q/n) <= A  <=>  Q <= n A^2
  const bool exact = static_cast<i128>(r.S) * r.S <= n * r.Q &&
                     static_cast<i128>(r.Q) <= n * r.A * r.A;
  if (!r.L) return exact;
  const double nd = static_cast<double>(r.n());
  return exact && *r.L / nd <= static_cast<double>(r.S) / nd + tol;
}

}  // namespace cyclo
