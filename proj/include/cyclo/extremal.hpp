#pragma once

// Explicit prime families on which the circle maximum and the square sum
// approach their asymptotic constants.

#include <string>
#include <vector>

#include "cyclo/numtheory.hpp"
#include "cyclo/rational.hpp"

namespace cyclo {

enum class FamilyTag { kBinary, kTernary, kRelatives };

std::string to_string(FamilyTag tag);
FamilyTag family_from_string(const std::string& s);

/// value = expected (mod modulus), recorded at construction time.
struct Witness {
  std::string relation;  // e.g. "q mod p"
  i64 value = 0;
  i64 modulus = 1;
  i64 expected = 0;
};

struct FamilyInstance {
  FactoredModulus primes{{3}};
  Rational eval_point;
  double predicted = 0.0;  // predicted F(x) divided by the family normalizer
  FamilyTag tag = FamilyTag::kBinary;
  std::vector<Witness> witnesses;
};

/// Recomputes every congruence of the family from the primes alone.
bool verify_congruences(const FamilyInstance& inst);

/// q = first prime > max(q_lower, p) with q = -2 (mod p); x = (pq - q - 1)/(2pq).
/// predicted is F(x)/(pq) ~ 4/pi^2 + (2 pi^2 - 3)/(6 pi^2) p^-2.
FamilyInstance binary_family(i64 p, i64 q_lower);

/// Default floors: q_lower = ratio * p, r_lower = ratio * q.
inline constexpr i64 kDefaultRatioFloor = 50;

/// q = 2 (mod p); r = 2 (mod p), r = -4/(p-1) (mod q); x = N/(pqr) with
/// N = r(p-1)/2 + 1. predicted is F(x)/(p^2 qr) ~ 1/pi^2.
FamilyInstance ternary_family(i64 p, i64 q_lower, i64 r_lower);
FamilyInstance ternary_family(i64 p, i64 ratio = kDefaultRatioFloor);

/// p_1 the first prime > lower, then p_j the smallest prime > p_{j-1} with
/// p_j = 2(j - i) (mod p_i) for all i < j. x = (N - 1/2)/n where N is the
/// cell (1, 2, ..., k). predicted is |P_n(x)|/n ~ 2^{C(k,2)+1}/(pi^k (2k-1)!!).
FamilyInstance relatives_family(int k, i64 lower);

/// Cells (a, a - 1, a + 1) for |a| <= a_range, as signed residues. Throws if
/// a_range >= p/2.
std::vector<ResidueCell> variance_family_cells(const FamilyInstance& inst, i64 a_range);

}  // namespace cyclo
