#pragma once

// Modular arithmetic, the signed Chinese remainder map, primality and prime
// search in arithmetic progressions. All inputs are 64-bit; intermediate
// products go through 128-bit integers.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace cyclo {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;

/// An odd squarefree modulus n = p_1 p_2 ... p_k given by its prime factors.
///
/// The constructor sorts the primes and checks that they are distinct odd
/// primes whose product fits in 63 bits.
class FactoredModulus {
 public:
  explicit FactoredModulus(std::vector<i64> primes);

  std::span<const i64> primes() const noexcept { return primes_; }
  i64 prime(std::size_t i) const { return primes_.at(i); }
  std::size_t k() const noexcept { return primes_.size(); }
  i64 n() const noexcept { return n_; }

  /// Product of the primes selected by the bit mask (bit i <-> p_{i+1}).
  i64 product_of(unsigned mask) const;

  std::string to_string() const;  // "3*5*7"

  bool operator==(const FactoredModulus&) const = default;

 private:
  std::vector<i64> primes_;
  i64 n_ = 1;
};

/// Signed residues (a_1, ..., a_k) with |a_i| < p_i / 2 naming one CRT cell.
struct ResidueCell {
  std::vector<i64> residues;

  bool operator==(const ResidueCell&) const = default;
  auto operator<=>(const ResidueCell&) const = default;
};

bool is_valid_cell(const ResidueCell& cell, const FactoredModulus& fm) noexcept;

/// a mod m in [0, m).
constexpr i64 mod_floor(i64 a, i64 m) noexcept {
  i64 r = a % m;
  return r < 0 ? r + m : r;
}

/// a mod m in the symmetric window (-m/2, m/2]; for odd m strictly |r| < m/2.
constexpr i64 signed_residue(i64 a, i64 m) noexcept {
  i64 r = mod_floor(a, m);
  return 2 * r > m ? r - m : r;
}

i64 mul_mod(i64 a, i64 b, i64 m) noexcept;

/// Inverse of a modulo m in {1, ..., m-1}. Throws Error("not coprime ...").
i64 mod_inverse(i64 a, i64 m);

/// The unique N with |N| < n/2 and N = a_i (mod p_i) for all i.
i64 crt_signed(const ResidueCell& cell, const FactoredModulus& fm);

/// Inverse of crt_signed.
ResidueCell cell_of(i64 N, const FactoredModulus& fm);

/// x = residue (mod modulus), residue in [0, modulus).
struct Congruence {
  i64 residue = 0;
  i64 modulus = 1;
};

/// Combines two congruences with coprime moduli. Throws on overflow or
/// non-coprime moduli.
Congruence crt_combine(Congruence a, Congruence b);

/// Deterministic Miller-Rabin, exact for every 64-bit input.
bool is_prime(u64 m) noexcept;

inline constexpr i64 kDefaultProgressionCap = 10'000'000;

/// Smallest prime p > lower with p = residue (mod modulus), examining at most
/// `cap` candidates.
i64 prime_in_progression(i64 residue, i64 modulus, i64 lower,
                         i64 cap = kDefaultProgressionCap);

/// Odd primes in [lo, hi], ascending.
std::vector<i64> odd_primes_in(i64 lo, i64 hi);

/// Euler phi of the squarefree modulus.
i64 euler_phi(const FactoredModulus& fm);

/// Moebius value mu(n / d) for a divisor given by mask, i.e. (-1)^(k - |mask|).
int moebius_complement(const FactoredModulus& fm, unsigned mask) noexcept;

}  // namespace cyclo
