#include "cyclo/polyarith.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <set>

#include "cyclo/error.hpp"

namespace cyclo {

namespace {

std::vector<i64> trim(std::vector<i64> c) {
  while (!c.empty() && c.back() == 0) c.pop_back();
  return c;
}

i64 checked_add(i64 a, i64 b, std::size_t m, const char* what) {
  i64 r = 0;
  if (__builtin_add_overflow(a, b, &r)) throw OverflowError(what, static_cast<i64>(m));
  return r;
}

}  // namespace

CoeffVec::CoeffVec(std::vector<i64> coeffs) : c_(trim(std::move(coeffs))) {}

SineProduct::SineProduct(std::vector<SineTerm> terms) : terms_(std::move(terms)) {
  std::set<i64> seen;
  for (const SineTerm& t : terms_) {
    if (t.d <= 0) throw Error("sine product: d must be positive");
    if (t.j == 0) throw Error("sine product: zero exponent for d=" + std::to_string(t.d));
    if (!seen.insert(t.d).second) throw Error("sine product: repeated d=" + std::to_string(t.d));
  }
}

i64 SineProduct::exponent_sum() const noexcept {
  i64 s = 0;
  for (const SineTerm& t : terms_) s += t.j;
  return s;
}

i64 SineProduct::weighted_degree() const {
  i64 s = 0;
  for (const SineTerm& t : terms_) {
    i64 dj = 0;
    if (__builtin_mul_overflow(t.d, t.j, &dj) || __builtin_add_overflow(s, dj, &s)) {
      throw Error("sine product degree overflows");
    }
  }
  return s;
}

SineProduct cyclotomic_product(const FactoredModulus& fm) {
  std::vector<SineTerm> terms;
  const unsigned full = (1u << fm.k()) - 1;
  for (unsigned mask = full;; --mask) {
    terms.push_back({fm.product_of(mask), moebius_complement(fm, mask)});
    if (mask == 0) break;
  }
  return SineProduct(std::move(terms));
}

SineProduct relative_product(const FactoredModulus& fm) {
  const i64 n = fm.n();
  std::vector<SineTerm> terms{{n, 1}};
  for (std::size_t i = 0; i < fm.k(); ++i) {
    for (std::size_t j = i + 1; j < fm.k(); ++j) terms.push_back({n / (fm.prime(i) * fm.prime(j)), 1});
  }
  for (i64 p : fm.primes()) terms.push_back({n / p, -1});
  return SineProduct(std::move(terms));
}

SineProduct fn_product(const FactoredModulus& fm) {
  if (fm.k() < 2) throw Error("f_n needs at least two primes");
  const i64 n = fm.n();
  std::vector<SineTerm> terms{{n, 1}};
  for (std::size_t i = 1; i < fm.k(); ++i) terms.push_back({n / (fm.prime(0) * fm.prime(i)), 1});
  for (i64 p : fm.primes()) terms.push_back({n / p, -1});
  return SineProduct(std::move(terms));
}

void multiply_one_minus(std::vector<i64>& c, i64 d) {
  const auto step = static_cast<std::size_t>(d);
  for (std::size_t m = c.size(); m-- > step;) {
    i64 r = 0;
    if (__builtin_sub_overflow(c[m], c[m - step], &r)) {
      throw OverflowError("multiply by (1 - z^" + std::to_string(d) + ")", static_cast<i64>(m));
    }
    c[m] = r;
  }
}

void divide_one_minus(std::vector<i64>& c, i64 d) {
  const auto step = static_cast<std::size_t>(d);
  for (std::size_t m = step; m < c.size(); ++m) {
    c[m] = checked_add(c[m], c[m - step], m, "divide by (1 - z^d)");
  }
}

CoeffVec expand_product(const SineProduct& p, std::size_t T) {
  if (T == 0) throw Error("expand_product: truncation must be >= 1");
  std::vector<SineTerm> order(p.terms().begin(), p.terms().end());
  std::stable_sort(order.begin(), order.end(),
                   [](const SineTerm& a, const SineTerm& b) { return (a.j > 0) > (b.j > 0); });
  std::vector<i64> c(T, 0);
  c[0] = 1;
  for (const SineTerm& t : order) {
    if (static_cast<u64>(t.d) >= T) continue;  // (1 - z^d) = 1 modulo z^T
    for (i64 r = 0; r < (t.j < 0 ? -t.j : t.j); ++r) {
      if (t.j > 0) {
        multiply_one_minus(c, t.d);
      } else {
        divide_one_minus(c, t.d);
      }
    }
  }
  return CoeffVec(std::move(c));
}

CoeffVec cyclotomic(const FactoredModulus& fm) {
  return expand_product(cyclotomic_product(fm), static_cast<std::size_t>(euler_phi(fm)) + 1);
}

CoeffVec fn_star(const FactoredModulus& fm) {
  return expand_product(fn_product(fm), static_cast<std::size_t>(fm.n()));
}

CoeffVec relative_poly(const FactoredModulus& fm) {
  const SineProduct spec = relative_product(fm);
  const i64 degree = spec.weighted_degree();
  const i64 bound = 2 * fm.n();
  if (degree < 0 || degree >= bound) {
    throw Error("relative_poly: expected degree " + std::to_string(degree) +
                " outside the truncation bound " + std::to_string(bound));
  }
  CoeffVec c = expand_product(spec, static_cast<std::size_t>(bound));
  if (c.degree() > degree) {
    throw Error("relative_poly: quotient does not terminate (nonzero coefficient at z^" +
                std::to_string(c.degree()) + ", expected degree " + std::to_string(degree) + ")");
  }
  return c;
}

CoeffVec multiply_truncated(const CoeffVec& a, const CoeffVec& b, std::size_t T) {
  std::vector<i64> out(std::min(T, a.size() + b.size()), 0);
  const auto ac = a.coeffs();
  const auto bc = b.coeffs();
  for (std::size_t i = 0; i < ac.size() && i < out.size(); ++i) {
    if (ac[i] == 0) continue;
    for (std::size_t j = 0; j < bc.size() && i + j < out.size(); ++j) {
      if (bc[j] == 0) continue;
      i64 prod = 0;
      if (__builtin_mul_overflow(ac[i], bc[j], &prod)) {
        throw OverflowError("multiply_truncated", static_cast<i64>(i + j));
      }
      out[i + j] = checked_add(out[i + j], prod, i + j, "multiply_truncated");
    }
  }
  return CoeffVec(std::move(out));
}

CoeffVec substitute_power(const CoeffVec& c, i64 e, std::size_t T) {
  if (e < 1) throw Error("substitute_power: exponent must be positive");
  std::vector<i64> out;
  const auto cc = c.coeffs();
  for (std::size_t m = 0; m < cc.size(); ++m) {
    const u64 idx = static_cast<u64>(m) * static_cast<u64>(e);
    if (idx >= T) break;
    if (out.size() <= idx) out.resize(idx + 1, 0);
    out[idx] = cc[m];
  }
  return CoeffVec(std::move(out));
}

RecursionCheck verify_recursion(const FactoredModulus& fm) {
  if (fm.k() < 2) throw Error("verify_recursion needs at least two primes");
  const std::size_t k = fm.k();
  const auto T = static_cast<std::size_t>(fm.n());
  const auto p = fm.primes();

  RecursionCheck out;
  CoeffVec rhs = fn_star(fm);
  for (std::size_t j = 1; j + 2 <= k; ++j) {
    const FactoredModulus head(std::vector<i64>(p.begin(), p.begin() + static_cast<long>(j)));
    const CoeffVec inner = cyclotomic(head);
    i64 tail = 1;  // p_{j+2} ... p_k
    for (std::size_t l = j + 2; l <= k; ++l) tail *= p[l - 1];
    for (std::size_t i = j + 2; i <= k; ++i) {
      const RecursionFactor f{j, i, head.n(), tail / p[i - 1]};
      out.factors.push_back(f);
      rhs = multiply_truncated(rhs, substitute_power(inner, f.exponent, T), T);
    }
  }

  const CoeffVec lhs = cyclotomic(fm);
  for (std::size_t m = 0; m < T; ++m) {
    if (lhs[m] != rhs[m]) {
      out.first_mismatch = static_cast<i64>(m);
      out.lhs_coeff = lhs[m];
      out.rhs_coeff = rhs[m];
      out.diagnostic = "coefficient of z^" + std::to_string(m) + ": Phi_n has " +
                       std::to_string(lhs[m]) + ", recursion product has " + std::to_string(rhs[m]);
      return out;
    }
  }
  out.holds = true;
  out.diagnostic = "identity holds modulo z^" + std::to_string(T) + " with " +
                   std::to_string(out.factors.size()) + " inner factors";
  return out;
}

double eval_at_unit(const CoeffVec& c, double x) {
  const auto cc = c.coeffs();
  long double re = 0, im = 0;
  const long double xl = x;
  for (std::size_t m = 0; m < cc.size(); ++m) {
    if (cc[m] == 0) continue;
    long double phase = static_cast<long double>(m) * xl;
    phase -= std::floor(phase);
    const long double angle = 2 * std::numbers::pi_v<long double> * phase;
    re += cc[m] * std::cos(angle);
    im += cc[m] * std::sin(angle);
  }
  return static_cast<double>(std::sqrt(re * re + im * im));
}

}  // namespace cyclo
