// cyclo: command line front end for the cyclotomic measure library.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "cyclo/bounds.hpp"
#include "cyclo/circle.hpp"
#include "cyclo/error.hpp"
#include "cyclo/extremal.hpp"
#include "cyclo/measures.hpp"
#include "cyclo/polyarith.hpp"
#include "cyclo/serialize.hpp"
#include "cyclo/verify.hpp"

namespace fs = std::filesystem;
using namespace cyclo;

namespace {

constexpr int kExitPass = 0;
constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

// Library errors caused by bad arguments (composite primes, unknown suite, ...).
struct UsageError : Error {
  using Error::Error;
};

fs::path default_out_dir() {
  const char* env = std::getenv("CYCLO_OUT_DIR");
  return env ? fs::path(env) : fs::path();
}

FactoredModulus parse_modulus(const std::vector<i64>& primes) {
  try {
    return FactoredModulus(primes);
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

// Writes to `out` when given (relative paths resolve against CYCLO_OUT_DIR), else stdout.
void emit(const std::string& text, const std::string& out) {
  if (out.empty()) {
    std::cout << text;
    return;
  }
  fs::path path(out);
  if (path.is_relative() && !default_out_dir().empty()) path = default_out_dir() / path;
  if (path.has_parent_path()) fs::create_directories(path.parent_path());
  std::ofstream f(path);
  if (!f) throw Error("cannot write " + path.string());
  f << text;
}

std::string measure_table(const MeasureReport& r) {
  std::ostringstream os;
  os << std::setprecision(12);
  os << "n      " << r.n() << " (" << r.modulus.to_string() << ")\n"
     << "k      " << r.k() << "\n"
     << "A      " << r.A << "\n"
     << "S      " << r.S << "\n"
     << "Q      " << r.Q << "\n"
     << "J      " << r.J << "\n";
  if (r.L) os << "L      " << *r.L << "\n";
  os << "M      " << r.M << "\n"
     << "A/M            " << r.normalized_A() << "\n"
     << "(S/n)/M        " << r.normalized_S() << "\n"
     << "sqrt(Q/n)/M    " << r.normalized_Q() << "\n";
  if (r.normalized_L()) os << "(L/n)/M        " << *r.normalized_L() << "\n";
  return os.str();
}

std::string report_table(const std::vector<BoundReport>& rows) {
  std::ostringstream os;
  std::size_t failed = 0;
  for (const BoundReport& r : rows) {
    if (!r.pass) ++failed;
    os << (r.pass ? "PASS " : "FAIL ") << std::left << std::setw(12) << r.suite << std::setw(34)
       << r.instance << " computed=" << format_real(r.computed) << " reference=" << format_real(r.reference);
    if (!r.note.empty()) os << "  # " << r.note;
    os << "\n";
  }
  os << rows.size() - failed << "/" << rows.size() << " rows pass\n";
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"cyclotomic polynomial coefficient measures"};
  app.require_subcommand(1);

  std::vector<i64> primes;
  std::string out;
  std::string format;
  unsigned jobs = 0;

  auto* phi = app.add_subcommand("compute-phi", "coefficients of Phi_n as a JSON array");
  phi->add_option("--primes", primes, "distinct odd primes of n")->required()->delimiter(',');
  phi->add_option("--out", out, "output file (default stdout)");

  bool with_L = false;
  auto* meas = app.add_subcommand("measures", "A, S, Q, J (and L) of Phi_n");
  meas->add_option("--primes", primes, "distinct odd primes of n")->required()->delimiter(',');
  meas->add_flag("--with-L", with_L, "also maximize |Phi_n| on the unit circle");
  meas->add_option("--format", format, "table, csv or json")->check(CLI::IsMember({"table", "csv", "json"}));
  meas->add_option("--out", out, "output file (default stdout)");
  meas->add_option("--jobs", jobs, "worker threads (0 = all)");

  std::string strategy = "cells";
  MaximizeOptions mopts;
  auto* maxi = app.add_subcommand("maximize", "maximum of |Phi_n| on the unit circle");
  maxi->add_option("--primes", primes, "distinct odd primes of n")->required()->delimiter(',');
  maxi->add_option("--strategy", strategy, "cells, grid or both")->check(CLI::IsMember({"cells", "grid", "both"}));
  maxi->add_option("--cap", mopts.cap, "residue box |a_i| <= cap")->check(CLI::NonNegativeNumber);
  maxi->add_option("--grid", mopts.grid, "grid points (0 = automatic)")->check(CLI::NonNegativeNumber);
  maxi->add_option("--jobs", jobs, "worker threads (0 = all)");
  maxi->add_option("--out", out, "output file (default stdout)");

  std::string family;
  i64 fam_p = 0, q_lower = -1, r_lower = -1, ratio = kDefaultRatioFloor, lower = 0;
  int fam_k = 0;
  auto* fam = app.add_subcommand("search-family", "construct an extremal prime family");
  fam->add_option("--family", family, "binary, ternary or relatives")
      ->required()
      ->check(CLI::IsMember({"binary", "ternary", "relatives"}));
  fam->add_option("--p", fam_p, "smallest prime (binary, ternary)");
  fam->add_option("--k", fam_k, "number of primes (relatives)");
  fam->add_option("--q-lower", q_lower, "q floor (binary, ternary)");
  fam->add_option("--r-lower", r_lower, "r floor (ternary)");
  fam->add_option("--ratio", ratio, "q/p and r/q floor when explicit floors are absent (ternary)");
  fam->add_option("--lower", lower, "p_1 floor (relatives)");
  fam->add_option("--out", out, "output file (default stdout)");

  std::string suite;
  SuiteConfig scfg;
  double slack = 0;
  bool timings = false;
  std::string out_dir;
  auto* ver = app.add_subcommand("verify", "run verification suites");
  ver->add_option("--suite", suite, "suite name or 'all'")->required();
  ver->add_option("--slack", slack, "relative band replacing each banded check's declared band")
      ->check(CLI::PositiveNumber);
  ver->add_option("--jobs", jobs, "worker threads (0 = all)");
  ver->add_option("--pmax", scfg.pair_max, "binary suites: p < q <= pmax");
  ver->add_option("--tmax", scfg.triple_max, "ternary suites: p < q < r <= tmax");
  ver->add_option("--seed", scfg.seed, "sampling seed");
  ver->add_option("--format", format, "table, csv or jsonl")->check(CLI::IsMember({"table", "csv", "jsonl"}));
  ver->add_option("--out-dir", out_dir, "write <suite>.csv and <suite>.jsonl here (default $CYCLO_OUT_DIR)");
  ver->add_flag("--timings", timings, "include runtime_ms in reports");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitPass : kExitUsage;
  }

  try {
    if (*phi) {
      const FactoredModulus fm = parse_modulus(primes);
      emit(to_json(cyclotomic(fm)).dump() + "\n", out);
      return kExitPass;
    }
    if (*meas) {
      const FactoredModulus fm = parse_modulus(primes);
      std::optional<double> L;
      if (with_L) {
        MaximizeOptions mo;
        mo.jobs = jobs;
        L = max_on_circle(cyclotomic_product(fm), fm, mo).value;
      }
      const MeasureReport r = measure_report(fm, cyclotomic(fm), L);
      if (format == "json") emit(to_json(r).dump(2) + "\n", out);
      else if (format == "csv") emit(measure_csv_header() + "\n" + to_csv(r) + "\n", out);
      else emit(measure_table(r), out);
      return kExitPass;
    }
    if (*maxi) {
      const FactoredModulus fm = parse_modulus(primes);
      mopts.strategy = strategy_from_string(strategy);
      mopts.jobs = jobs;
      const MaximizeResult r = max_on_circle(cyclotomic_product(fm), fm, mopts);
      Json j = to_json(r, fm);
      if (auto d = r.disagreement(); d && *d > 1e-6) {
        j["warning"] = "grid and cells strategies disagree by " + format_real(*d) + " (relative)";
        std::cerr << "warning: strategies disagree by " << format_real(*d) << "\n";
      }
      emit(j.dump(2) + "\n", out);
      return kExitPass;
    }
    if (*fam) {
      FamilyInstance inst;
      switch (family_from_string(family)) {
        case FamilyTag::kBinary:
          if (fam_p == 0) throw UsageError("--family binary needs --p");
          inst = binary_family(fam_p, q_lower < 0 ? 10'000 : q_lower);
          break;
        case FamilyTag::kTernary:
          if (fam_p == 0) throw UsageError("--family ternary needs --p");
          if (q_lower >= 0 || r_lower >= 0) {
            const i64 ql = q_lower < 0 ? ratio * fam_p : q_lower;
            inst = ternary_family(fam_p, ql, r_lower < 0 ? ratio * ql : r_lower);
          } else {
            inst = ternary_family(fam_p, ratio);
          }
          break;
        case FamilyTag::kRelatives:
          if (fam_k == 0) throw UsageError("--family relatives needs --k");
          inst = relatives_family(fam_k, lower == 0 ? std::max<i64>(2 * fam_k, 50) : lower);
          break;
      }
      emit(to_json(inst).dump(2) + "\n", out);
      return verify_congruences(inst) ? kExitPass : kExitFail;
    }
    if (*ver) {
      scfg.jobs = jobs;
      if (slack > 0) scfg.slack = slack;
      std::vector<std::string> names;
      if (suite == "all") {
        names = suite_names();
      } else {
        const auto& valid = suite_names();
        if (std::find(valid.begin(), valid.end(), suite) == valid.end()) {
          std::string list;
          for (const auto& n : valid) list += (list.empty() ? "" : ", ") + n;
          throw UsageError("unknown suite '" + suite + "'; valid suites: " + list + ", all");
        }
        names = {suite};
      }
      fs::path dir = out_dir.empty() ? default_out_dir() : fs::path(out_dir);
      std::vector<BoundReport> all;
      for (const std::string& name : names) {
        const auto rows = run_suite(name, scfg);
        if (!dir.empty()) {
          fs::create_directories(dir);
          std::ofstream(dir / (name + ".csv")) << reports_to_csv(rows, timings);
          std::ofstream(dir / (name + ".jsonl")) << reports_to_jsonl(rows, timings);
        }
        all.insert(all.end(), rows.begin(), rows.end());
      }
      if (format == "csv") std::cout << reports_to_csv(all, timings);
      else if (format == "jsonl") std::cout << reports_to_jsonl(all, timings);
      else std::cout << report_table(all);
      return all_pass(all) ? kExitPass : kExitFail;
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitFail;
  }
  return kExitUsage;
}
