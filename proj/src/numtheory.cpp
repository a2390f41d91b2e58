#include "cyclo/numtheory.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <tuple>

#include "cyclo/error.hpp"

namespace cyclo {

namespace {

u64 mul_mod_u(u64 a, u64 b, u64 m) noexcept {
  return static_cast<u64>(static_cast<unsigned __int128>(a) * b % m);
}

u64 pow_mod_u(u64 base, u64 e, u64 m) noexcept {
  u64 r = 1 % m;
  base %= m;
  while (e != 0) {
    if (e & 1) r = mul_mod_u(r, base, m);
    base = mul_mod_u(base, base, m);
    e >>= 1;
  }
  return r;
}

bool miller_rabin_witness(u64 n, u64 a, u64 d, int s) noexcept {
  u64 x = pow_mod_u(a, d, n);
  if (x == 1 || x == n - 1) return false;
  for (int r = 1; r < s; ++r) {
    x = mul_mod_u(x, x, n);
    if (x == n - 1) return false;
  }
  return true;
}

}  // namespace

FactoredModulus::FactoredModulus(std::vector<i64> primes) : primes_(std::move(primes)) {
  if (primes_.empty()) throw Error("factored modulus needs at least one prime");
  if (primes_.size() > 31) throw Error("factored modulus: too many primes");
  std::sort(primes_.begin(), primes_.end());
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    const i64 p = primes_[i];
    if (p < 3 || p % 2 == 0 || !is_prime(static_cast<u64>(p))) {
      throw Error("not an odd prime: " + std::to_string(p));
    }
    if (i > 0 && primes_[i - 1] == p) throw Error("repeated prime: " + std::to_string(p));
    if (__builtin_mul_overflow(n_, p, &n_)) throw Error("modulus exceeds 64 bits");
  }
}

i64 FactoredModulus::product_of(unsigned mask) const {
  i64 d = 1;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (mask & (1u << i)) d *= primes_[i];
  }
  return d;
}

std::string FactoredModulus::to_string() const {
  std::string out;
  for (std::size_t i = 0; i < primes_.size(); ++i) {
    if (i) out += '*';
    out += std::to_string(primes_[i]);
  }
  return out;
}

bool is_valid_cell(const ResidueCell& cell, const FactoredModulus& fm) noexcept {
  if (cell.residues.size() != fm.k()) return false;
  for (std::size_t i = 0; i < fm.k(); ++i) {
    // |a| < p/2  <=>  2|a| < p
    const i64 a = cell.residues[i];
    if (2 * (a < 0 ? -a : a) >= fm.prime(i)) return false;
  }
  return true;
}

i64 mul_mod(i64 a, i64 b, i64 m) noexcept {
  return static_cast<i64>(static_cast<i128>(mod_floor(a, m)) * mod_floor(b, m) % m);
}

i64 mod_inverse(i64 a, i64 m) {
  if (m < 2) throw Error("mod_inverse: modulus must be >= 2");
  i64 r0 = m, r1 = mod_floor(a, m);
  i64 s0 = 0, s1 = 1;
  while (r1 != 0) {
    const i64 q = r0 / r1;
    std::tie(r0, r1) = std::pair{r1, r0 - q * r1};
    std::tie(s0, s1) = std::pair{s1, s0 - q * s1};
  }
  if (r0 != 1) {
    throw Error("not coprime: " + std::to_string(a) + " has no inverse modulo " +
                std::to_string(m));
  }
  return mod_floor(s0, m);
}

i64 crt_signed(const ResidueCell& cell, const FactoredModulus& fm) {
  if (!is_valid_cell(cell, fm)) throw Error("invalid residue cell for modulus " + fm.to_string());
  const i64 n = fm.n();
  i128 acc = 0;
  for (std::size_t i = 0; i < fm.k(); ++i) {
    const i64 p = fm.prime(i);
    const i64 cofactor = n / p;
    const i64 coeff = mul_mod(cell.residues[i], mod_inverse(cofactor % p, p), p);
    acc += static_cast<i128>(coeff) * cofactor;
  }
  return signed_residue(static_cast<i64>(acc % n), n);
}

ResidueCell cell_of(i64 N, const FactoredModulus& fm) {
  const i64 n = fm.n();
  if (2 * static_cast<i128>(N < 0 ? -N : N) >= n) {
    throw Error("cell_of: |N| must be < n/2 (N=" + std::to_string(N) + ", n=" + std::to_string(n) +
                ")");
  }
  ResidueCell cell;
  cell.residues.reserve(fm.k());
  for (i64 p : fm.primes()) cell.residues.push_back(signed_residue(N, p));
  return cell;
}

Congruence crt_combine(Congruence a, Congruence b) {
  if (std::gcd(a.modulus, b.modulus) != 1) throw Error("crt_combine: moduli not coprime");
  i64 m = 0;
  if (__builtin_mul_overflow(a.modulus, b.modulus, &m)) throw Error("crt_combine: modulus overflow");
  // x = a.r + a.m * k,  k = (b.r - a.r) * inv(a.m) mod b.m
  const i64 k = mul_mod(b.residue - a.residue, mod_inverse(a.modulus, b.modulus), b.modulus);
  const i128 x = static_cast<i128>(a.residue) + static_cast<i128>(a.modulus) * k;
  return {mod_floor(static_cast<i64>(x % m), m), m};
}

bool is_prime(u64 n) noexcept {
  if (n < 2) return false;
  static constexpr u64 kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (u64 p : kSmall) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases are a proven witness set for n < 3.3 * 10^24.
  for (u64 a : kSmall) {
    if (miller_rabin_witness(n, a, d, s)) return false;
  }
  return true;
}

i64 prime_in_progression(i64 residue, i64 modulus, i64 lower, i64 cap) {
  if (modulus < 1) throw Error("prime_in_progression: modulus must be positive");
  const i64 r = mod_floor(residue, modulus);
  if (std::gcd(r, modulus) != 1 && modulus > 1) {
    throw Error("prime_in_progression: residue " + std::to_string(residue) +
                " not coprime to modulus " + std::to_string(modulus));
  }
  // first candidate > lower that is = r (mod modulus)
  i64 c = lower + 1;
  c += mod_floor(r - c, modulus);
  for (i64 examined = 0; examined < cap; ++examined) {
    if (c > 1 && is_prime(static_cast<u64>(c))) return c;
    if (__builtin_add_overflow(c, modulus, &c)) break;
  }
  throw Error("prime_in_progression: search cap of " + std::to_string(cap) +
              " candidates exceeded");
}

std::vector<i64> odd_primes_in(i64 lo, i64 hi) {
  std::vector<i64> out;
  for (i64 m = std::max<i64>(lo, 3) | 1; m <= hi; m += 2) {
    if (is_prime(static_cast<u64>(m))) out.push_back(m);
  }
  return out;
}

i64 euler_phi(const FactoredModulus& fm) {
  i64 phi = 1;
  for (i64 p : fm.primes()) phi *= p - 1;
  return phi;
}

int moebius_complement(const FactoredModulus& fm, unsigned mask) noexcept {
  const int missing = static_cast<int>(fm.k()) - std::popcount(mask);
  return missing % 2 == 0 ? 1 : -1;
}

}  // namespace cyclo
