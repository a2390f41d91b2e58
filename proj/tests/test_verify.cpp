#include <doctest.h>

#include "cyclo/error.hpp"
#include "cyclo/serialize.hpp"
#include "cyclo/verify.hpp"

using namespace cyclo;

TEST_CASE("suite registry") {
  const auto& names = suite_names();
  for (const char* n : {"carlitz", "migotti", "bachman", "ssum", "parseval", "qbound", "qlower", "jumps",
                        "fnstar", "recursion", "binarymax", "ternarymax", "relatives", "constants",
                        "bernoulli", "integrals", "variational", "bksequence", "chain"}) {
    CHECK(std::find(names.begin(), names.end(), n) != names.end());
  }
  CHECK_THROWS_WITH_AS(run_suite("nonsense"), doctest::Contains("carlitz"), Error);
}

TEST_CASE("carlitz suite passes and is deterministic") {
  SuiteConfig cfg;
  cfg.pair_max = 30;
  const auto a = run_suite("carlitz", cfg);
  cfg.jobs = 1;
  const auto b = run_suite("carlitz", cfg);
  CHECK(all_pass(a));
  CHECK(a.size() == 36);  // C(9, 2) odd prime pairs up to 29
  CHECK(reports_to_csv(a) == reports_to_csv(b));
  CHECK(reports_to_jsonl(a) == reports_to_jsonl(b));
  for (const auto& r : a) {
    CHECK(r.suite == "carlitz");
    CHECK_FALSE(r.tag.empty());
  }
}

TEST_CASE("exact closed-form suites pass") {
  for (const char* name : {"recursion", "constants", "bksequence", "integrals", "variational", "bernoulli"}) {
    const auto rows = run_suite(name);
    CAPTURE(name);
    CHECK_FALSE(rows.empty());
    CHECK(all_pass(rows));
  }
}

TEST_CASE("identity suite keeps the derivative rows honest") {
  const auto rows = run_suite("identities");
  for (const auto& r : rows) {
    if (r.instance.rfind("S1 - S2", 0) == 0 || r.instance.rfind("P(1/2,1/2)", 0) == 0 ||
        r.instance.rfind("f <= 1/4", 0) == 0) {
      CHECK(r.pass);
    }
    if (r.instance.rfind("dP/dx", 0) == 0) CHECK(r.computed < 0);
  }
}

TEST_CASE("slack override reaches banded checks") {
  SuiteConfig cfg;
  cfg.slack = 1e-9;
  const auto rows = run_suite("ternarymax", cfg);
  CHECK_FALSE(all_pass(rows));
}
