#pragma once

// Named verification suites. Each suite produces BoundReport rows in a fixed
// order; a suite passes iff every row passes.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "cyclo/numtheory.hpp"

namespace cyclo {

struct BoundReport {
  std::string suite;
  std::string tag;       // the claim the suite checks
  std::string instance;  // e.g. "3*5*7" or "p=101 q=11411"
  double computed = 0.0;
  double reference = 0.0;
  double margin = 0.0;  // computed/reference for bands, computed-reference for exact checks
  bool pass = false;
  double runtime_ms = 0.0;
  std::string note;
};

struct SuiteConfig {
  i64 pair_max = 60;      // binary suites: 3 <= p < q <= pair_max
  i64 triple_max = 41;    // ternary suites: p < q < r <= triple_max
  i64 qbound_min = 11;    // qbound: qbound_min <= p < q < r <= qbound_max
  i64 qbound_max = 97;
  i64 chain_nmax = 100'000;
  int chain_samples = 50;
  i64 ratio_floor = 50;  // q/p and r/q floors for the ternary family
  /// Replaces the declared relative band of every banded check when set.
  std::optional<double> slack;
  unsigned jobs = 0;
  std::uint64_t seed = 1;
};

const std::vector<std::string>& suite_names();

/// Throws Error listing the valid names for an unknown suite.
std::vector<BoundReport> run_suite(const std::string& name, const SuiteConfig& config = {});

bool all_pass(const std::vector<BoundReport>& rows) noexcept;

}  // namespace cyclo
