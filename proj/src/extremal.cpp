#include "cyclo/extremal.hpp"

#include <cmath>
#include <numbers>

#include "cyclo/error.hpp"

namespace cyclo {

namespace {

constexpr double kPi = std::numbers::pi;

void require_odd_prime(i64 p, const char* what) {
  if (p < 3 || !is_prime(static_cast<u64>(p))) {
    throw Error(std::string(what) + ": " + std::to_string(p) + " is not an odd prime");
  }
}

Witness witness(std::string relation, i64 value, i64 modulus, i64 expected) {
  return {std::move(relation), value, modulus, mod_floor(expected, modulus)};
}

double double_factorial_odd(int k) {  // (2k-1)!!
  double out = 1;
  for (int i = 1; i <= 2 * k - 1; i += 2) out *= i;
  return out;
}

}  // namespace

std::string to_string(FamilyTag tag) {
  switch (tag) {
    case FamilyTag::kBinary: return "binary";
    case FamilyTag::kTernary: return "ternary";
    case FamilyTag::kRelatives: return "relatives";
  }
  return "?";
}

FamilyTag family_from_string(const std::string& s) {
  if (s == "binary") return FamilyTag::kBinary;
  if (s == "ternary") return FamilyTag::kTernary;
  if (s == "relatives") return FamilyTag::kRelatives;
  throw Error("unknown family '" + s + "' (expected binary, ternary or relatives)");
}

bool verify_congruences(const FamilyInstance& inst) {
  const FactoredModulus& fm = inst.primes;
  const i64 n = fm.n();
  if (inst.eval_point.den != n && inst.eval_point.den != 2 * n) {
    // a reduced fraction may have a smaller denominator; compare after scaling
    if ((2 * n) % inst.eval_point.den != 0) return false;
  }
  for (const Witness& w : inst.witnesses) {
    if (mod_floor(w.value, w.modulus) != w.expected) return false;
  }
  switch (inst.tag) {
    case FamilyTag::kBinary: {
      if (fm.k() != 2) return false;
      const i64 p = fm.prime(0), q = fm.prime(1);
      if (mod_floor(q, p) != p - 2) return false;
      return inst.eval_point == Rational(p * q - q - 1, 2 * p * q);
    }
    case FamilyTag::kTernary: {
      if (fm.k() != 3) return false;
      const i64 p = fm.prime(0), q = fm.prime(1), r = fm.prime(2);
      if (mod_floor(q, p) != 2 || mod_floor(r, p) != 2) return false;
      // r (p - 1) = -4 (mod q)
      if (mul_mod(r, p - 1, q) != mod_floor(-4, q)) return false;
      const i64 N = r * ((p - 1) / 2) + 1;
      if (!(inst.eval_point == Rational(N, n))) return false;
      return mod_floor(N, p) == 0 && mod_floor(N, q) == q - 1 && mod_floor(N, r) == 1;
    }
    case FamilyTag::kRelatives: {
      const std::size_t k = fm.k();
      for (std::size_t j = 1; j < k; ++j) {
        for (std::size_t i = 0; i < j; ++i) {
          const i64 pi = fm.prime(i);
          if (mod_floor(fm.prime(j), pi) != mod_floor(2 * static_cast<i64>(j - i), pi)) return false;
        }
      }
      ResidueCell cell;
      for (std::size_t i = 0; i < k; ++i) cell.residues.push_back(static_cast<i64>(i + 1));
      const i64 N = crt_signed(cell, fm);
      return inst.eval_point == Rational(2 * N - 1, 2 * n);
    }
  }
  return false;
}

FamilyInstance binary_family(i64 p, i64 q_lower) {
  require_odd_prime(p, "binary_family");
  const i64 q = prime_in_progression(p - 2, p, std::max(q_lower, p));
  FamilyInstance inst;
  inst.primes = FactoredModulus({p, q});
  inst.tag = FamilyTag::kBinary;
  inst.eval_point = Rational(p * q - q - 1, 2 * p * q);
  const double pd = static_cast<double>(p);
  inst.predicted = 4 / (kPi * kPi) + (2 * kPi * kPi - 3) / (6 * kPi * kPi) / (pd * pd);
  inst.witnesses.push_back(witness("q mod p", q, p, -2));
  return inst;
}

FamilyInstance ternary_family(i64 p, i64 q_lower, i64 r_lower) {
  require_odd_prime(p, "ternary_family");
  if (p <= 3) throw Error("ternary_family: need p > 3");
  const i64 q = prime_in_progression(2, p, std::max(q_lower, p));
  // -4/(p-1) mod q; p - 1 < q so the inverse exists
  const i64 target = mul_mod(mod_floor(-4, q), mod_inverse(p - 1, q), q);
  const Congruence sys = crt_combine({2, p}, {target, q});
  const i64 r = prime_in_progression(sys.residue, sys.modulus, std::max(r_lower, q));
  FamilyInstance inst;
  inst.primes = FactoredModulus({p, q, r});
  inst.tag = FamilyTag::kTernary;
  const i64 N = r * ((p - 1) / 2) + 1;
  inst.eval_point = Rational(N, inst.primes.n());
  inst.predicted = 1 / (kPi * kPi);
  inst.witnesses = {witness("q mod p", q, p, 2),
                    witness("r mod p", r, p, 2),
                    witness("r mod q", r, q, target),
                    witness("N mod p", N, p, 0),
                    witness("N mod q", N, q, -1),
                    witness("N mod r", N, r, 1)};
  return inst;
}

FamilyInstance ternary_family(i64 p, i64 ratio) {
  require_odd_prime(p, "ternary_family");
  const i64 q_lower = ratio * p;
  const i64 q = prime_in_progression(2, p, std::max(q_lower, p));
  return ternary_family(p, q_lower, ratio * q);
}

FamilyInstance relatives_family(int k, i64 lower) {
  if (k < 2) throw Error("relatives_family: need k >= 2");
  if (lower < 2 * k) throw Error("relatives_family: need lower >= 2k so the cell (1..k) is valid");
  std::vector<i64> primes;
  primes.push_back(prime_in_progression(1, 2, lower));
  FamilyInstance inst;
  inst.tag = FamilyTag::kRelatives;
  for (int j = 1; j < k; ++j) {
    Congruence sys{0, 1};
    for (int i = 0; i < j; ++i) {
      sys = crt_combine(sys, {mod_floor(2 * (j - i), primes[i]), primes[i]});
    }
    // the system fixes the residue mod prod p_i, which is odd; ask for odd p_j
    sys = crt_combine(sys, {1, 2});
    const i64 pj = prime_in_progression(sys.residue, sys.modulus, primes.back());
    for (int i = 0; i < j; ++i) {
      inst.witnesses.push_back(witness("p" + std::to_string(j + 1) + " mod p" + std::to_string(i + 1),
                                       pj, primes[i], 2 * (j - i)));
    }
    primes.push_back(pj);
  }
  inst.primes = FactoredModulus(primes);
  ResidueCell cell;
  for (int i = 1; i <= k; ++i) cell.residues.push_back(i);
  const i64 N = crt_signed(cell, inst.primes);
  inst.eval_point = Rational(2 * N - 1, 2 * inst.primes.n());
  const int pairs = k * (k - 1) / 2;
  inst.predicted = std::ldexp(1.0, pairs + 1) / (std::pow(kPi, k) * double_factorial_odd(k));
  return inst;
}

std::vector<ResidueCell> variance_family_cells(const FamilyInstance& inst, i64 a_range) {
  if (inst.tag != FamilyTag::kTernary) throw Error("variance_family_cells: need a ternary instance");
  const FactoredModulus& fm = inst.primes;
  const i64 p = fm.prime(0), q = fm.prime(1), r = fm.prime(2);
  if (a_range < 0 || 2 * a_range >= p) throw Error("variance_family_cells: need 0 <= a_range < p/2");
  std::vector<ResidueCell> cells;
  for (i64 a = -a_range; a <= a_range; ++a) {
    cells.push_back({{signed_residue(a, p), signed_residue(a - 1, q), signed_residue(a + 1, r)}});
  }
  return cells;
}

}  // namespace cyclo
