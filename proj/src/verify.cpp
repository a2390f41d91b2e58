#include "cyclo/verify.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <numbers>
#include <random>
#include <set>
#include <sstream>

#include "cyclo/bounds.hpp"
#include "cyclo/circle.hpp"
#include "cyclo/error.hpp"
#include "cyclo/extremal.hpp"
#include "cyclo/measures.hpp"
#include "cyclo/parallel.hpp"
#include "cyclo/polyarith.hpp"
#include "cyclo/serialize.hpp"

namespace cyclo {

namespace {

constexpr double kPi = std::numbers::pi;

using Rows = std::vector<BoundReport>;

struct Triple {
  i64 p, q, r;
};

std::vector<std::pair<i64, i64>> pairs_upto(i64 hi) {
  const auto primes = odd_primes_in(3, hi);
  std::vector<std::pair<i64, i64>> out;
  for (std::size_t a = 0; a < primes.size(); ++a) {
    for (std::size_t b = a + 1; b < primes.size(); ++b) out.emplace_back(primes[a], primes[b]);
  }
  return out;
}

std::vector<Triple> triples_in(i64 lo, i64 hi) {
  const auto primes = odd_primes_in(lo, hi);
  std::vector<Triple> out;
  for (std::size_t a = 0; a < primes.size(); ++a) {
    for (std::size_t b = a + 1; b < primes.size(); ++b) {
      for (std::size_t c = b + 1; c < primes.size(); ++c) out.push_back({primes[a], primes[b], primes[c]});
    }
  }
  return out;
}

std::string triple_name(const Triple& t) {
  return std::to_string(t.p) + "*" + std::to_string(t.q) + "*" + std::to_string(t.r);
}

double ratio(double computed, double reference) {
  return reference != 0 ? computed / reference : computed - reference;
}

// A row whose margin is computed/reference.
// std::max drops a NaN second argument; worst-case accumulators must not.
double worst_of(double a, double b) { return std::isnan(a) || std::isnan(b) ? std::nan("") : std::max(a, b); }

BoundReport band_row(std::string instance, double computed, double reference, bool pass,
                     std::string note = {}) {
  BoundReport r;
  r.instance = std::move(instance);
  r.computed = computed;
  r.reference = reference;
  r.margin = ratio(computed, reference);
  r.pass = pass;
  r.note = std::move(note);
  return r;
}

// A row whose margin is computed - reference.
BoundReport exact_row(std::string instance, double computed, double reference, bool pass,
                      std::string note = {}) {
  BoundReport r = band_row(std::move(instance), computed, reference, pass, std::move(note));
  r.margin = computed - reference;
  return r;
}

double elapsed_ms(std::chrono::steady_clock::time_point since) {
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

// Runs body(i) -> Rows for each instance in parallel and concatenates in index order.
Rows per_instance(std::size_t count, unsigned jobs, const std::function<Rows(std::size_t)>& body) {
  std::vector<Rows> slots(count);
  parallel_for(count, jobs, [&](std::size_t i) {
    const auto start = std::chrono::steady_clock::now();
    slots[i] = body(i);
    const double ms = elapsed_ms(start);
    for (BoundReport& r : slots[i]) r.runtime_ms = ms;
  });
  Rows out;
  for (Rows& s : slots) std::move(s.begin(), s.end(), std::back_inserter(out));
  return out;
}

Rows single(const std::function<Rows()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Rows rows = body();
  const double ms = elapsed_ms(start);
  for (BoundReport& r : rows) r.runtime_ms = ms;
  return rows;
}

std::string fmt(double v) { return format_real(v); }

i64 binomial(i64 n, i64 k) {
  if (k < 0 || k > n) return 0;
  i64 out = 1;
  for (i64 i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

double factorial(int k) { return std::tgamma(static_cast<double>(k) + 1); }

// ---------------------------------------------------------------- binary

Rows suite_carlitz(const SuiteConfig& cfg) {
  const auto pairs = pairs_upto(cfg.pair_max);
  return per_instance(pairs.size(), cfg.jobs, [&](std::size_t i) {
    const auto [p, q] = pairs[i];
    const CoeffVec phi = cyclotomic(FactoredModulus({p, q}));
    const i64 S = abs_sum(phi), Q = square_sum(phi), ref = carlitz_S(p, q);
    const bool pass = S == ref && Q == ref && 2 * ref < p * q;
    return Rows{exact_row(std::to_string(p) + "*" + std::to_string(q), static_cast<double>(S),
                          static_cast<double>(ref), pass, "Q=" + std::to_string(Q))};
  });
}

Rows suite_migotti(const SuiteConfig& cfg) {
  const auto pairs = pairs_upto(cfg.pair_max);
  return per_instance(pairs.size(), cfg.jobs, [&](std::size_t i) {
    const auto [p, q] = pairs[i];
    const i64 A = height(cyclotomic(FactoredModulus({p, q})));
    return Rows{exact_row(std::to_string(p) + "*" + std::to_string(q), static_cast<double>(A), 1.0, A == 1)};
  });
}

// ---------------------------------------------------------------- ternary coefficients

Rows suite_bachman(const SuiteConfig& cfg) {
  const auto triples = triples_in(3, cfg.triple_max);
  return per_instance(triples.size(), cfg.jobs, [&](std::size_t i) {
    const Triple& t = triples[i];
    const CoeffVec phi = cyclotomic(FactoredModulus({t.p, t.q, t.r}));
    const i64 A = height(phi), S = abs_sum(phi);
    const double pd = static_cast<double>(t.p);
    const i128 p2qr = static_cast<i128>(t.p) * t.p * t.q * t.r;
    BoundReport a = band_row(triple_name(t) + " A", static_cast<double>(A), 0.75 * pd, 4 * A <= 3 * t.p,
                             "A/(2p/3)=" + fmt(static_cast<double>(A) / (2 * pd / 3)) + " (conjecture, not asserted)");
    BoundReport s = band_row(triple_name(t) + " S", static_cast<double>(S) / static_cast<double>(p2qr),
                             15.0 / 32.0, 32 * static_cast<i128>(S) <= 15 * p2qr);
    return Rows{a, s};
  });
}

Rows suite_ssum(const SuiteConfig& cfg) {
  const auto triples = triples_in(3, cfg.triple_max);
  Rows rows = per_instance(triples.size(), cfg.jobs, [&](std::size_t i) {
    const Triple& t = triples[i];
    const CoeffVec phi = cyclotomic(FactoredModulus({t.p, t.q, t.r}));
    const i64 S = abs_sum(phi);
    const i128 p2qr = static_cast<i128>(t.p) * t.p * t.q * t.r;
    const double obs = static_cast<double>(S) / static_cast<double>(p2qr);
    return Rows{band_row(triple_name(t), obs, 15.0 / 32.0, 32 * static_cast<i128>(S) <= 15 * p2qr,
                         "S/(p^2qr) vs asymptotic upper 0.2731: " + fmt(obs / kTernarySumBound))};
  });
  // trend: the largest ratio overall and among triples with p >= triple_max/3
  double sup_all = 0, sup_large = 0;
  const i64 p_cut = cfg.triple_max / 3;
  for (std::size_t i = 0; i < triples.size(); ++i) {
    sup_all = worst_of(sup_all, rows[i].computed);
    if (triples[i].p >= p_cut) sup_large = worst_of(sup_large, rows[i].computed);
  }
  rows.push_back(band_row("sup all triples", sup_all, kTernarySumBound, true,
                          "reported only: 0.2731 is an asymptotic upper bound"));
  rows.push_back(band_row("sup p>=" + std::to_string(p_cut), sup_large, kTernarySumBound, true,
                          "reported only: trend toward the asymptotic regime"));
  return rows;
}

Rows suite_jumps(const SuiteConfig& cfg) {
  const auto triples = triples_in(3, cfg.triple_max);
  Rows rows = per_instance(triples.size(), cfg.jobs, [&](std::size_t i) {
    const Triple& t = triples[i];
    const CoeffVec phi = cyclotomic(FactoredModulus({t.p, t.q, t.r}));
    const i64 J = jump_sum(phi);
    const double U = u_max(t.p, t.q, t.r).to_double();
    const double stat = static_cast<double>(J) / (static_cast<double>(t.p * t.q * t.r) * U * U);
    return Rows{band_row(triple_name(t), stat, 0.0, std::isfinite(stat) && stat > 0,
                         "J=" + std::to_string(J) + " U=" + u_max(t.p, t.q, t.r).to_string())};
  });
  double lo = HUGE_VAL, hi = 0;
  for (const BoundReport& r : rows) {
    lo = std::min(lo, r.computed);
    hi = worst_of(hi, r.computed);
  }
  // the reported constant c is the supremum over the tested set
  for (BoundReport& r : rows) {
    r.reference = hi;
    r.margin = ratio(r.computed, hi);
    r.pass = r.pass && r.computed <= hi;
  }
  const double spread = hi / lo;
  rows.push_back(band_row("sup J/(pqr U^2)", hi, hi, std::isfinite(hi), "reported constant c"));
  rows.push_back(band_row("max/min spread", spread, 1e3, spread < 1e3));
  return rows;
}

Rows suite_fnstar(const SuiteConfig& cfg) {
  const double band = cfg.slack.value_or(0.5);
  const auto triples = triples_in(3, cfg.triple_max);
  Rows rows = per_instance(triples.size(), cfg.jobs, [&](std::size_t i) {
    const Triple& t = triples[i];
    const FactoredModulus fm({t.p, t.q, t.r});
    const CoeffVec f = fn_star(fm);
    const int k = 3;
    const i64 hbound = binomial(k - 2, k / 2 - 1);
    const i64 A = height(f);
    const double sum_bound = std::ldexp(1.0, k - 1) * static_cast<double>(fm.n()) / factorial(k);
    const double sum_ratio = static_cast<double>(abs_sum(f)) / sum_bound;
    return Rows{exact_row(triple_name(t) + " height", static_cast<double>(A), static_cast<double>(hbound), A <= hbound),
                band_row(triple_name(t) + " sum", sum_ratio, 1 + band, sum_ratio <= 1 + band,
                         "abs sum / (2^(k-1) n/k!)")};
  });
  for (const auto& primes : std::vector<std::vector<i64>>{{3, 5, 7}, {3, 5, 11}, {3, 7, 11}}) {
    const FactoredModulus fm(primes);
    const RecursionCheck rc = verify_recursion(fm);
    rows.push_back(exact_row(fm.to_string() + " recursion", rc.holds ? 1 : 0, 1, rc.holds, rc.diagnostic));
  }
  return rows;
}

Rows suite_recursion(const SuiteConfig&) {
  return single([] {
    Rows rows;
    for (const auto& primes : std::vector<std::vector<i64>>{
             {3, 5}, {3, 5, 7}, {3, 5, 11}, {3, 7, 11}, {5, 7, 11}, {3, 5, 7, 11}}) {
      const FactoredModulus fm(primes);
      const RecursionCheck rc = verify_recursion(fm);
      rows.push_back(exact_row(fm.to_string(), rc.holds ? 1 : 0, 1, rc.holds, rc.diagnostic));
    }
    return rows;
  });
}

// ---------------------------------------------------------------- square sums

Rows suite_parseval(const SuiteConfig& cfg) {
  const std::vector<std::vector<i64>> moduli = {{3}, {3, 5}, {3, 5, 7}, {3, 5, 17}, {3, 7, 11}, {3, 5, 7, 11}};
  return per_instance(moduli.size(), 1, [&](std::size_t i) {
    const FactoredModulus fm(moduli[i]);
    QuadratureOptions opts;
    opts.jobs = cfg.jobs;
    const double Q = parseval_Q(cyclotomic_product(fm), fm, opts);
    const i64 exact = square_sum(cyclotomic(fm));
    const double diff = std::fabs(Q - static_cast<double>(exact));
    return Rows{exact_row(fm.to_string(), Q, static_cast<double>(exact), diff <= 1e-6)};
  });
}

Rows suite_qbound(const SuiteConfig& cfg) {
  const double band = cfg.slack.value_or(0.15);
  const auto triples = triples_in(cfg.qbound_min, cfg.qbound_max);
  return per_instance(triples.size(), cfg.jobs, [&](std::size_t i) {
    const Triple& t = triples[i];
    const i64 Q = square_sum(cyclotomic(FactoredModulus({t.p, t.q, t.r})));
    const double norm = static_cast<double>(t.p) * t.p * t.p * t.q * t.r;
    const double obs = static_cast<double>(Q) / norm;
    const double qb = q_bound(t.p, t.q, t.r);
    const InverseFractions f = inverse_fractions(t.p, t.q, t.r);
    const std::string where = "x=" + fmt(f.x) + " y=" + fmt(f.y);
    return Rows{band_row(triple_name(t) + " Q/(p^3qr)", obs, (1 + band) * qb, obs <= (1 + band) * qb, where),
                band_row(triple_name(t) + " q_bound", qb, 1.0 / 12, qb <= 1.0 / 12 + 1e-12, where)};
  });
}

Rows suite_qlower(const SuiteConfig& cfg) {
  const double band = cfg.slack.value_or(0.15);
  const std::vector<i64> ps = {31, 37};
  return per_instance(ps.size(), cfg.jobs, [&](std::size_t i) {
    const FamilyInstance inst = ternary_family(ps[i], cfg.ratio_floor);
    const FactoredModulus& fm = inst.primes;
    const double p = static_cast<double>(fm.prime(0));
    const double p2qr = p * p * fm.prime(1) * fm.prime(2);
    const SineProduct spec = cyclotomic_product(fm);
    QuadratureOptions opts;
    opts.tolerance = 1e-10 * p2qr * p2qr;  // relative to the scale of F^2
    double sum = 0;
    const auto cells = variance_family_cells(inst, (fm.prime(0) - 1) / 2);
    for (const ResidueCell& c : cells) sum += cell_integral(spec, fm, c, opts);
    // a partial Parseval sum over some cells is a lower bound on Q
    const double obs = sum / static_cast<double>(fm.n()) / (p * p2qr);
    const double ref = 3 / (2 * std::pow(kPi, 4));
    return Rows{band_row(fm.to_string(), obs, ref, obs >= (1 - band) * ref,
                         std::to_string(cells.size()) + " cells (a, a-1, a+1); partial Parseval sum")};
  });
}

// ---------------------------------------------------------------- circle maxima

Rows suite_binarymax(const SuiteConfig& cfg) {
  const double band = cfg.slack.value_or(0.02);
  const double limit = 4 / (kPi * kPi);
  const std::vector<i64> ps = {11, 31, 101, 311};
  Rows rows = per_instance(ps.size(), cfg.jobs, [&](std::size_t i) {
    const FamilyInstance inst = binary_family(ps[i], std::max<i64>(10'000, 300 * ps[i]));
    const double v = eval_F(cyclotomic_product(inst.primes), inst.eval_point) / static_cast<double>(inst.primes.n());
    return Rows{band_row("p=" + std::to_string(ps[i]) + " q=" + std::to_string(inst.primes.prime(1)), v,
                         inst.predicted, std::fabs(v / inst.predicted - 1) <= band,
                         "F(x)/(pq) vs 4/pi^2 + (2pi^2-3)/(6pi^2) p^-2")};
  });
  bool monotone = true;
  for (std::size_t i = 1; i < rows.size(); ++i) monotone = monotone && rows[i].computed > rows[i - 1].computed;
  const double last = rows.back().computed;
  rows.push_back(band_row("trend p in {11,31,101,311}", last, limit, monotone && last <= limit + 0.02,
                          monotone ? "increasing toward 4/pi^2" : "not monotone"));

  const auto start = std::chrono::steady_clock::now();
  const FamilyInstance inst = binary_family(101, 10'000);
  const SineProduct spec = cyclotomic_product(inst.primes);
  const double pq = static_cast<double>(inst.primes.n());
  const double v = eval_F(spec, inst.eval_point) / pq;
  const std::string name = "p=101 q=" + std::to_string(inst.primes.prime(1));
  rows.push_back(band_row(name + " F(x)/(pq)", v, limit, v >= limit - 1e-3 && v <= limit + 1e-2,
                          "band [4/pi^2 - 1e-3, 4/pi^2 + 1e-2]"));
  MaximizeOptions mo;
  mo.jobs = cfg.jobs;
  const MaximizeResult m = max_on_circle(spec, inst.primes, mo);
  rows.push_back(band_row(name + " max/(pq)", m.value / pq, v, m.value / pq >= v * (1 - 1e-12),
                          "max_on_circle vs family point"));
  rows[rows.size() - 2].runtime_ms = rows.back().runtime_ms = elapsed_ms(start);
  return rows;
}

Rows suite_ternarymax(const SuiteConfig& cfg) {
  const double band = cfg.slack.value_or(0.15);
  const std::vector<i64> ps = {31, 37};
  return per_instance(ps.size(), cfg.jobs, [&](std::size_t i) {
    const FamilyInstance inst = ternary_family(ps[i], cfg.ratio_floor);
    const FactoredModulus& fm = inst.primes;
    const double p = static_cast<double>(fm.prime(0));
    const double v = eval_F(cyclotomic_product(fm), inst.eval_point) / (p * p * fm.prime(1) * fm.prime(2));
    const bool ok = verify_congruences(inst) && std::fabs(v / inst.predicted - 1) <= band;
    return Rows{band_row(fm.to_string(), v, inst.predicted, ok, "F(N/pqr)/(p^2qr) vs 1/pi^2")};
  });
}

Rows suite_relatives(const SuiteConfig& cfg) {
  const double band = cfg.slack.value_or(0.10);
  Rows rows = single([] {
    Rows out;
    for (const auto& [p, q] : pairs_upto(31)) {
      const FactoredModulus fm({p, q});
      const bool same = relative_poly(fm) == cyclotomic(fm);
      out.push_back(exact_row(fm.to_string() + " P_n == Phi_n", same ? 1 : 0, 1, same));
    }
    return out;
  });
  const std::vector<i64> lowers = {50, 100};
  Rows fam = per_instance(lowers.size(), cfg.jobs, [&](std::size_t i) {
    const FamilyInstance inst = relatives_family(3, lowers[i]);
    const double v = eval_F(relative_product(inst.primes), inst.eval_point) /
                     static_cast<double>(inst.primes.n());
    const bool ok = verify_congruences(inst) && std::fabs(v / inst.predicted - 1) <= band;
    return Rows{band_row(inst.primes.to_string(), v, inst.predicted, ok, "|P_n(x)|/n vs 2^4/(15 pi^3)")};
  });
  std::move(fam.begin(), fam.end(), std::back_inserter(rows));
  return rows;
}

Rows suite_chain(const SuiteConfig& cfg) {
  // deterministic sample of odd squarefree n <= chain_nmax with 1 to 4 prime factors
  std::mt19937_64 rng(cfg.seed);
  const auto primes = odd_primes_in(3, cfg.chain_nmax / 15 + 1);
  std::set<std::vector<i64>> chosen;
  std::vector<std::vector<i64>> sample;
  std::uniform_int_distribution<int> pick_k(1, 4);
  for (int attempts = 0; static_cast<int>(sample.size()) < cfg.chain_samples && attempts < 100'000; ++attempts) {
    const int k = pick_k(rng);
    std::vector<i64> ps;
    i64 n = 1;
    // bias toward small primes so larger k stays feasible
    for (int j = 0; j < k; ++j) {
      const i64 room = cfg.chain_nmax / n;
      const auto end = std::upper_bound(primes.begin(), primes.end(), room);
      if (end == primes.begin()) break;
      std::uniform_int_distribution<std::size_t> idx(0, static_cast<std::size_t>(end - primes.begin()) - 1);
      const i64 p = primes[idx(rng)];
      ps.push_back(p);
      n *= p;
    }
    std::sort(ps.begin(), ps.end());
    if (static_cast<int>(ps.size()) != k || std::adjacent_find(ps.begin(), ps.end()) != ps.end()) continue;
    if (n > cfg.chain_nmax || !chosen.insert(ps).second) continue;
    sample.push_back(ps);
  }
  std::sort(sample.begin(), sample.end(), [](const auto& a, const auto& b) {
    return FactoredModulus(a).n() < FactoredModulus(b).n();
  });
  return per_instance(sample.size(), 1, [&](std::size_t i) {
    const FactoredModulus fm(sample[i]);
    MaximizeOptions mo;
    mo.jobs = cfg.jobs;
    const double L = max_on_circle(cyclotomic_product(fm), fm, mo).value;
    const MeasureReport r = measure_report(fm, cyclotomic(fm), L);
    const double n = static_cast<double>(fm.n());
    std::ostringstream note;
    note << "L/n=" << fmt(L / n) << " S/n=" << fmt(r.S / n) << " sqrt(Q/n)=" << fmt(std::sqrt(r.Q / n))
         << " A=" << r.A;
    return Rows{band_row(fm.to_string(), L / n, static_cast<double>(r.S) / n, chain_holds(r, 1e-9), note.str())};
  });
}

// ---------------------------------------------------------------- closed forms

Rows suite_constants(const SuiteConfig&) {
  return single([] {
    Rows rows;
    const CConstant c = c_constant();
    rows.push_back(band_row("C", c.value, 0.859125, c.value < 0.859125, "truncation k=" + std::to_string(c.truncation)));
    rows.push_back(band_row("C log tail", c.tail_bound, std::ldexp(1.0, -60), c.tail_bound < std::ldexp(1.0, -60)));
    const double pi2 = kPi * kPi;
    // the displayed ordering of the order-3 constants
    const std::vector<std::pair<std::string, std::pair<double, double>>> chain = {
        {"1/pi^2 <= 0.2731", {1 / pi2, kTernarySumBound}},
        {"sqrt(3/2)/pi^2 <= sqrt(1/12)", {std::sqrt(1.5) / pi2, std::sqrt(1.0 / 12)}},
        {"sqrt(1/12) < 2/3", {std::sqrt(1.0 / 12), 2.0 / 3}},
        {"2/3 <= 3/4", {2.0 / 3, 0.75}}};
    for (const auto& [name, v] : chain) rows.push_back(band_row(name, v.first, v.second, v.first <= v.second));
    for (const NamedConstant& nc : named_constants()) {
      const double shown = nc.value ? *nc.value : *nc.upper;
      const bool consistent = std::isfinite(shown) && (!nc.lower || !nc.upper || *nc.lower <= *nc.upper);
      rows.push_back(band_row(nc.name, shown, nc.lower.value_or(shown), consistent, nc.source));
    }
    return rows;
  });
}

Rows suite_bksequence(const SuiteConfig&) {
  return single([] {
    Rows rows;
    const BkSequence b = bk_sequence(24);
    rows.push_back(exact_row("b_4", b(4), 1.0 / 6, std::fabs(b(4) - 1.0 / 6) <= 1e-15));
    rows.push_back(exact_row("b_5", b(5), b(3) / 30, std::fabs(b(5) / (b(3) / 30) - 1) <= 1e-15));
    // b_13 is below the smallest double, so from there on the relation is checked on log b_k
    double worst = 0, worst_log = 0;
    for (std::size_t k = 6; k <= b.size(); ++k) {
      const double factor = static_cast<double>(k - 1) / static_cast<double>(k);
      if (k <= 12) {
        const double dev = std::fabs(b(k) / (factor * b(k - 1) * b(k - 1)) - 1);
        worst = worst_of(worst, dev);
      } else {
        const double expect = std::log(factor) + 2 * b.log(k - 1);
        const double dev = std::fabs(b.log(k) - expect) / std::fabs(expect);
        worst_log = worst_of(worst_log, dev);
      }
    }
    rows.push_back(exact_row("b_k = (k-1)/k b_{k-1}^2, 6<=k<=12", worst, 0, worst <= 1e-12,
                             "max relative deviation"));
    rows.push_back(exact_row("log b_k relation, 13<=k<=24", worst_log, 0,
                             worst_log <= 1e-12, "max relative deviation of log b_k"));
    const double fr = factorial_root(20);
    rows.push_back(band_row("(20!)^(2^-20)", fr, 1 + 1e-3, fr < 1 + 1e-3));
    return rows;
  });
}

Rows suite_bernoulli(const SuiteConfig&) {
  return single([] {
    Rows rows;
    const std::vector<i64> Ms = {100, 1'000, 10'000};
    auto add = [&](const std::string& name, const std::function<FourierCheck(i64)>& check) {
      std::vector<double> errs;
      for (i64 M : Ms) errs.push_back(check(M).error);
      const bool decreasing = errs[1] < errs[0] && errs[2] < errs[1];
      rows.push_back(band_row(name + " M=1e4", errs.back(), 1e-2, errs.back() < 1e-2 && decreasing,
                              "errors " + fmt(errs[0]) + ", " + fmt(errs[1]) + ", " + fmt(errs[2])));
    };
    for (double x : {0.0, 0.25, 0.3, 0.5}) {
      add("B2 x=" + fmt(x), [x](i64 M) { return fourier_check(2, x, M); });
      add("B4 x=" + fmt(x), [x](i64 M) { return fourier_check(4, x, M); });
    }
    for (const auto& [u, v] : std::vector<std::pair<double, double>>{{0.3, 0.7}, {0.1, 0.45}, {-0.2, 1.3}}) {
      add("B2B2 u=" + fmt(u) + " v=" + fmt(v), [u, v](i64 M) { return lattice_check(u, v, M); });
    }
    return rows;
  });
}

Rows suite_integrals(const SuiteConfig&) {
  return single([] {
    Rows rows;
    for (const auto& [m, n] : std::vector<std::pair<i64, i64>>{{1, 2}, {-1, 1}, {2, 5}, {-3, 4}}) {
      const IntegralCheck ic = routine_integral(m, n);
      rows.push_back(band_row("m=" + std::to_string(m) + " n=" + std::to_string(n), ic.numeric, ic.closed,
                              ic.relative_error() <= 1e-6));
    }
    const double tv = ternary_variance_integral();
    const double ref = 3 / (2 * std::pow(kPi, 4));
    rows.push_back(exact_row("ternary variance integral", tv, ref, std::fabs(tv - ref) <= 1e-6));
    return rows;
  });
}

Rows suite_variational(const SuiteConfig&) {
  return single([] {
    const VariationalSolution v = variational_solve();
    return Rows{exact_row("a*", v.a, 0.273099, std::fabs(v.a - 0.273099) <= 1e-5),
                exact_row("constraint at a*", v.residual, 0, std::fabs(v.residual) <= 1e-10),
                band_row("a* < 0.2731", v.a, kTernarySumBound, v.a < kTernarySumBound)};
  });
}

Rows suite_identities(const SuiteConfig&) {
  return single([] {
    Rows rows;
    double worst = 0;
    for (int i = 0; i < 50; ++i) {
      for (int j = i; j < 50; ++j) {
        const double x = (i + 0.5) / 100, y = (j + 0.5) / 100;
        const double lhs = s1_closed(x, y) - s2_closed(x, y);
        const double rhs = P_poly(x, y) / 6 + f_frac(x, y) / 12;
        worst = worst_of(worst, std::fabs(lhs - rhs));
      }
    }
    rows.push_back(exact_row("S1 - S2 = P/6 + f/12 (50x50)", worst, 0, worst <= 1e-12, "max abs difference"));

    double min_dx = HUGE_VAL, min_dx_x = 0, min_dx_y = 0, min_diag = HUGE_VAL, min_diag_y = 0;
    double max_P = 0, max_f = 0;
    for (int i = 0; i < 200; ++i) {
      const double y = (i + 0.5) / 400;
      const double d = P_diag_dy(y);
      if (d < min_diag) min_diag = d, min_diag_y = y;
      for (int j = 0; j <= i; ++j) {
        const double x = (j + 0.5) / 400;
        const double dx = P_dx(x, y);
        if (dx < min_dx) min_dx = dx, min_dx_x = x, min_dx_y = y;
        max_P = worst_of(max_P, P_poly(x, y));
      }
    }
    for (int i = 0; i < 100; ++i) {
      for (int j = 0; j <= i; ++j) max_f = worst_of(max_f, f_frac((j + 0.5) / 200, (i + 0.5) / 200));
    }
    rows.push_back(band_row("dP/dx >= 0 (200 grid)", min_dx, 0, min_dx >= 0,
                            "min at x=" + fmt(min_dx_x) + " y=" + fmt(min_dx_y)));
    rows.push_back(band_row("dP(y,y)/dy >= 0 (200 grid)", min_diag, 0, min_diag >= 0, "min at y=" + fmt(min_diag_y)));
    const double p_half = P_poly(0.5, 0.5);
    rows.push_back(exact_row("P(1/2,1/2) = 3/8", p_half, 0.375, std::fabs(p_half - 0.375) <= 1e-15));
    rows.push_back(band_row("P <= 3/8 (200 grid)", max_P, 0.375, max_P <= 0.375 + 1e-15));
    rows.push_back(band_row("f <= 1/4 (100 grid)", max_f, 0.25, max_f <= 0.25));
    return rows;
  });
}

Rows suite_crtidentity(const SuiteConfig& cfg) {
  Rows rows;
  for (const auto& primes : std::vector<std::vector<i64>>{{3, 5, 7}, {3, 5, 7, 11}}) {
    rows.push_back(single([&] {
      const FactoredModulus fm(primes);
      const SineProduct spec = cyclotomic_product(fm);
      std::mt19937_64 rng(cfg.seed);
      std::uniform_real_distribution<double> tdist(-0.5, 0.5);
      double worst = 0, worst_forms = 0;
      for (int draw = 0; draw < 1000; ++draw) {
        ResidueCell cell;
        for (i64 p : fm.primes()) {
          std::uniform_int_distribution<i64> a(-(p - 1) / 2, (p - 1) / 2);
          cell.residues.push_back(a(rng));
        }
        const CirclePoint pt = make_point(fm, cell, tdist(rng));
        const double direct = eval_F(spec, pt.x(fm));
        const double first = eval_F_crt(fm, pt, spec, PairForm::kFirst);
        const double second = eval_F_crt(fm, pt, spec, PairForm::kSecond);
        const double scale = std::max(1.0, std::fabs(direct));
        worst = worst_of(worst, std::fabs(first - direct) / scale);
        worst_forms = worst_of(worst_forms, std::fabs(first - second) / scale);
      }
      return Rows{band_row(fm.to_string(), worst, 1e-12, worst <= 1e-12 && worst_forms <= 1e-12,
                           "1000 draws; pair forms differ by " + fmt(worst_forms))};
    })[0]);
  }
  Rows quot = single([] {
    Rows out;
    for (const auto& [p, q] : std::vector<std::pair<i64, i64>>{{3, 5}, {5, 3}, {7, 11}, {13, 4}}) {
      const QuotientCheck qc = quotient_bound_check(p, q, 1000);
      out.push_back(band_row("s(px)/s(x), p=" + std::to_string(p) + " q=" + std::to_string(q),
                             std::max(qc.worst_single, qc.worst_pair), 1, qc.holds,
                             std::to_string(qc.points) + " points"));
    }
    return out;
  });
  std::move(quot.begin(), quot.end(), std::back_inserter(rows));
  return rows;
}

struct SuiteEntry {
  const char* tag;
  Rows (*run)(const SuiteConfig&);
};

const std::map<std::string, SuiteEntry>& registry() {
  static const std::map<std::string, SuiteEntry> table = {
      {"carlitz", {"carlitz-binary-sum", suite_carlitz}},
      {"migotti", {"migotti-binary-height", suite_migotti}},
      {"bachman", {"bachman-ternary-height", suite_bachman}},
      {"ssum", {"ternary-absolute-sum", suite_ssum}},
      {"parseval", {"parseval-identity", suite_parseval}},
      {"qbound", {"ternary-square-sum-upper", suite_qbound}},
      {"qlower", {"ternary-square-sum-lower", suite_qlower}},
      {"jumps", {"ternary-jump-sum", suite_jumps}},
      {"fnstar", {"general-order-recursion-tail", suite_fnstar}},
      {"recursion", {"general-order-recursion", suite_recursion}},
      {"binarymax", {"binary-circle-maximum", suite_binarymax}},
      {"ternarymax", {"ternary-circle-maximum", suite_ternarymax}},
      {"relatives", {"relatives-circle-maximum", suite_relatives}},
      {"constants", {"general-order-constant", suite_constants}},
      {"bernoulli", {"bernoulli-fourier-series", suite_bernoulli}},
      {"integrals", {"routine-integral", suite_integrals}},
      {"variational", {"ternary-sum-variational", suite_variational}},
      {"bksequence", {"general-order-constant", suite_bksequence}},
      {"chain", {"measure-chain", suite_chain}},
      {"identities", {"ternary-square-sum-identities", suite_identities}},
      {"crtidentity", {"crt-sine-identities", suite_crtidentity}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, entry] : registry()) out.push_back(name);
    return out;
  }();
  return names;
}

std::vector<BoundReport> run_suite(const std::string& name, const SuiteConfig& config) {
  const auto it = registry().find(name);
  if (it == registry().end()) {
    std::string valid;
    for (const std::string& n : suite_names()) valid += (valid.empty() ? "" : ", ") + n;
    throw Error("unknown suite '" + name + "'; valid suites: " + valid);
  }
  Rows rows = it->second.run(config);
  for (BoundReport& r : rows) {
    r.suite = name;
    r.tag = it->second.tag;
  }
  return rows;
}

bool all_pass(const std::vector<BoundReport>& rows) noexcept {
  return std::all_of(rows.begin(), rows.end(), [](const BoundReport& r) { return r.pass; });
}

}  // namespace cyclo
