#include "cyclo/circle.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cyclo/error.hpp"
#include "cyclo/parallel.hpp"

namespace cyclo {

namespace {

constexpr long double kPi = std::numbers::pi_v<long double>;

// Accumulates sine factors, pairing exact zeros by their analytic limits.
class FactorProduct {
 public:
  void add(long double sine, bool zero, i64 d, i64 j) {
    if (zero) {
      vanishing_ += j;
      limit_ *= std::pow(static_cast<long double>(d), static_cast<long double>(j));
    } else {
      value_ *= j == 1 ? sine : std::pow(sine, static_cast<long double>(j));
    }
  }

  double finish(i64 exponent_sum) const {
    if (vanishing_ < 0) throw PoleError("pole: " + std::to_string(-vanishing_) + " unmatched vanishing factor(s)");
    if (vanishing_ > 0) return 0.0;
    return static_cast<double>(std::ldexp(value_ * limit_, static_cast<int>(exponent_sum)));
  }

 private:
  long double value_ = 1;
  long double limit_ = 1;
  i64 vanishing_ = 0;
};

enum class FactorKind { kFull, kSingle, kPair, kGeneral };

// A term of the sine product seen from a fixed modulus: d = n / m.
struct TermShape {
  i64 d = 1;
  i64 j = 1;
  i64 m = 1;
  FactorKind kind = FactorKind::kFull;
  std::size_t first = 0;
  std::size_t second = 0;
};

std::vector<TermShape> shape_terms(const FactoredModulus& fm, const SineProduct& p) {
  std::vector<TermShape> out;
  for (const SineTerm& term : p.terms()) {
    if (fm.n() % term.d != 0) {
      throw Error("d=" + std::to_string(term.d) + " does not divide n=" + std::to_string(fm.n()));
    }
    TermShape s{term.d, term.j, fm.n() / term.d};
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < fm.k(); ++i) {
      if (s.m % fm.prime(i) == 0) idx.push_back(i);
    }
    switch (idx.size()) {
      case 0: s.kind = FactorKind::kFull; break;
      case 1: s.kind = FactorKind::kSingle; s.first = idx[0]; break;
      case 2: s.kind = FactorKind::kPair; s.first = idx[0]; s.second = idx[1]; break;
      default: s.kind = FactorKind::kGeneral; break;
    }
    out.push_back(s);
  }
  return out;
}

i64 pair_residue(const FactoredModulus& fm, const ResidueCell& cell, std::size_t i, std::size_t j,
                 PairForm form) {
  const i64 pi = fm.prime(i), pj = fm.prime(j);
  const i64 ai = cell.residues[i], aj = cell.residues[j];
  const i64 m = pi * pj;
  i128 u = 0;
  if (form == PairForm::kFirst) {
    u = static_cast<i128>(aj - ai) * pi * mod_inverse(pi, pj) + ai;
  } else {
    u = static_cast<i128>(ai - aj) * pj * mod_inverse(pj, pi) + aj;
  }
  i128 r = u % m;
  if (r < 0) r += m;
  return signed_residue(static_cast<i64>(r), m);
}

// Per-cell factor data: F((N+t)/n) = 2^{sum j} prod |sin(pi (u + t) / m)|^j.
struct CellPlan {
  struct Factor {
    i64 d, j, m, u;
  };
  std::vector<Factor> factors;
  i64 exponent_sum = 0;

  double operator()(double t) const {
    FactorProduct acc;
    for (const Factor& f : factors) {
      const long double arg = (static_cast<long double>(f.u) + t) / static_cast<long double>(f.m);
      acc.add(std::fabs(std::sin(kPi * arg)), t == 0.0 && f.u == 0, f.d, f.j);
    }
    return acc.finish(exponent_sum);
  }
};

CellPlan plan_cell(const FactoredModulus& fm, const std::vector<TermShape>& shapes,
                   const ResidueCell& cell, i64 N, i64 exponent_sum, PairForm form) {
  CellPlan plan;
  plan.exponent_sum = exponent_sum;
  plan.factors.reserve(shapes.size());
  for (const TermShape& s : shapes) {
    i64 u = 0;
    switch (s.kind) {
      case FactorKind::kFull: u = 0; break;
      case FactorKind::kSingle: u = cell.residues[s.first]; break;
      case FactorKind::kPair: u = pair_residue(fm, cell, s.first, s.second, form); break;
      case FactorKind::kGeneral: u = signed_residue(N, s.m); break;
    }
    plan.factors.push_back({s.d, s.j, s.m, u});
  }
  return plan;
}

struct Probe {
  double t = 0.0;
  double value = -1.0;
};

constexpr double kInvPhi = 0.6180339887498948482;

// Golden-section search for a maximum of f on [lo, hi]; returns the best point
// evaluated (never worse than `best`).
template <class F>
Probe golden_max(const F& f, double lo, double hi, double width, Probe best) {
  double a = lo, b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double fc = f(c), fd = f(d);
  auto keep = [&](double t, double v) {
    if (v > best.value) best = {t, v};
  };
  keep(c, fc);
  keep(d, fd);
  while (b - a > width) {
    if (fc >= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - kInvPhi * (b - a);
      fc = f(c);
      keep(c, fc);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + kInvPhi * (b - a);
      fd = f(d);
      keep(d, fd);
    }
  }
  return best;
}

// Maximizes one cell's plan over t in [-1/2, 1/2]: 65 seeds, golden-section
// restarts from the three best seeds.
Probe maximize_cell(const CellPlan& plan) {
  constexpr int kSeeds = 64;
  constexpr int kRestarts = 3;
  constexpr double kStep = 1.0 / kSeeds;
  std::vector<Probe> seeds;
  seeds.reserve(kSeeds + 1);
  for (int s = 0; s <= kSeeds; ++s) {
    const double t = -0.5 + s * kStep;
    seeds.push_back({t, plan(t)});
  }
  std::stable_sort(seeds.begin(), seeds.end(),
                   [](const Probe& a, const Probe& b) { return a.value > b.value; });
  Probe best = seeds.front();
  for (int r = 0; r < kRestarts; ++r) {
    const double t = seeds[static_cast<std::size_t>(r)].t;
    best = golden_max(plan, std::max(-0.5, t - kStep), std::min(0.5, t + kStep), 1e-12, best);
  }
  return best;
}

// Signed CRT with precomputed idempotents e_i (e_i = 1 mod p_i, 0 mod p_l).
class CrtMap {
 public:
  explicit CrtMap(const FactoredModulus& fm) : n_(fm.n()) {
    for (i64 p : fm.primes()) {
      const i64 cof = n_ / p;
      idem_.push_back(static_cast<i64>(static_cast<i128>(cof) * mod_inverse(cof % p, p) % n_));
    }
  }

  i64 operator()(std::span<const i64> a) const {
    i128 acc = 0;
    for (std::size_t i = 0; i < a.size(); ++i) acc = (acc + static_cast<i128>(a[i]) * idem_[i]) % n_;
    if (acc < 0) acc += n_;
    return signed_residue(static_cast<i64>(acc), n_);
  }

 private:
  i64 n_;
  std::vector<i64> idem_;
};

// Calls visit(a) for every vector with a_i in [lo_i, hi_i].
template <class Visit>
void odometer(const std::vector<i64>& lo, const std::vector<i64>& hi, Visit&& visit) {
  std::vector<i64> a = lo;
  for (;;) {
    visit(std::span<const i64>(a));
    std::size_t i = 0;
    while (i < a.size()) {
      if (a[i] < hi[i]) {
        ++a[i];
        break;
      }
      a[i] = lo[i];
      ++i;
    }
    if (i == a.size()) return;
  }
}

constexpr i64 kMaxCells = 20'000'000;

std::vector<i64> candidate_cells(const FactoredModulus& fm, i64 cap) {
  const std::size_t k = fm.k();
  const CrtMap crt(fm);
  std::vector<i64> half(k), lo(k), hi(k);
  i64 box = 1;
  for (std::size_t i = 0; i < k; ++i) {
    half[i] = (fm.prime(i) - 1) / 2;
    hi[i] = std::min(std::max<i64>(cap, 0), half[i]);
    lo[i] = -hi[i];
    if (__builtin_mul_overflow(box, 2 * hi[i] + 1, &box) || box > kMaxCells) {
      throw Error("cell box exceeds " + std::to_string(kMaxCells) + " cells; lower the cap");
    }
  }
  std::vector<i64> out;
  out.reserve(static_cast<std::size_t>(box));
  auto push = [&](std::span<const i64> a) { out.push_back(crt(a)); };

  odometer(lo, hi, push);
  // residues in {-1, 0, 1}
  odometer(std::vector<i64>(k, -1), std::vector<i64>(k, 1), push);
  // a single nonzero residue, anywhere in its range
  std::vector<i64> a(k, 0);
  for (std::size_t i = 0; i < k; ++i) {
    for (i64 v = -half[i]; v <= half[i]; ++v) {
      a[i] = v;
      push(a);
    }
    a[i] = 0;
  }
  // all residues equal
  for (i64 v = -half[0]; v <= half[0]; ++v) {
    std::fill(a.begin(), a.end(), v);
    push(a);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

CirclePoint normalized_point(const FactoredModulus& fm, i64 N, double t) {
  if (t >= 0.5) {
    t -= 1.0;
    N += 1;
    if (2 * N >= fm.n()) N -= fm.n();
  }
  return point_at(fm, N, t);
}

MaximizeResult maximize_cells(const SineProduct& p, const FactoredModulus& fm,
                              const MaximizeOptions& opts) {
  const auto shapes = shape_terms(fm, p);
  const std::vector<i64> cells = candidate_cells(fm, opts.cap);
  std::vector<Probe> best(cells.size());
  parallel_for(cells.size(), opts.jobs, [&](std::size_t c) {
    const i64 N = cells[c];
    const CellPlan plan = plan_cell(fm, shapes, cell_of(N, fm), N, p.exponent_sum(), PairForm::kFirst);
    best[c] = maximize_cell(plan);
  });
  std::size_t arg = 0;
  for (std::size_t c = 1; c < best.size(); ++c) {
    if (best[c].value > best[arg].value) arg = c;
  }
  MaximizeResult r;
  r.strategy = Strategy::kCells;
  r.argmax = normalized_point(fm, cells[arg], best[arg].t);
  r.value = eval_F_crt(fm, r.argmax, p);
  r.x = static_cast<double>(r.argmax.x(fm));
  r.cells_examined = cells.size();
  r.refinement_depth = 1;
  r.cells_value = r.value;
  return r;
}

i64 default_grid(const FactoredModulus& fm) {
  const i64 wanted = std::max<i64>(i64{1} << 12, 16 * fm.n());
  return std::min<i64>(wanted, i64{1} << 24);
}

MaximizeResult maximize_grid(const SineProduct& p, const FactoredModulus& fm,
                             const MaximizeOptions& opts) {
  const i64 G = opts.grid > 0 ? opts.grid : default_grid(fm);
  constexpr std::size_t kKeep = 16;
  constexpr i64 kChunk = 1 << 14;
  const auto chunks = static_cast<std::size_t>((G + kChunk - 1) / kChunk);
  auto grid_x = [G](i64 g) { return -0.5 + static_cast<double>(g) / static_cast<double>(G); };
  auto by_value = [](const std::pair<double, i64>& a, const std::pair<double, i64>& b) {
    return a.first != b.first ? a.first > b.first : a.second < b.second;
  };

  std::vector<std::vector<std::pair<double, i64>>> tops(chunks);
  parallel_for(chunks, opts.jobs, [&](std::size_t c) {
    std::vector<std::pair<double, i64>> local;
    const i64 lo = static_cast<i64>(c) * kChunk;
    const i64 hi = std::min(G, lo + kChunk);
    for (i64 g = lo; g < hi; ++g) local.emplace_back(eval_F(p, grid_x(g)), g);
    const std::size_t keep = std::min(kKeep, local.size());
    std::partial_sort(local.begin(), local.begin() + static_cast<long>(keep), local.end(), by_value);
    local.resize(keep);
    tops[c] = std::move(local);
  });
  std::vector<std::pair<double, i64>> all;
  for (auto& t : tops) all.insert(all.end(), t.begin(), t.end());
  std::sort(all.begin(), all.end(), by_value);
  all.resize(std::min(kKeep, all.size()));

  // Three rounds of golden-section refinement, re-centred on the previous optimum.
  constexpr int kRounds = 3;
  const double h = 1.0 / static_cast<double>(G);
  auto f = [&p](double x) { return eval_F(p, x); };
  std::vector<Probe> refined(all.size());
  parallel_for(all.size(), opts.jobs, [&](std::size_t i) {
    Probe best{grid_x(all[i].second), all[i].first};
    for (int r = 0; r < kRounds; ++r) {
      const double c = best.t;
      best = golden_max(f, c - h, c + h, 1e-15, best);
    }
    refined[i] = best;
  });
  Probe top = refined.front();
  for (const Probe& q : refined) {
    if (q.value > top.value) top = q;
  }
  double x = top.t - std::floor(top.t + 0.5);  // wrap into [-1/2, 1/2)
  MaximizeResult r;
  r.strategy = Strategy::kGrid;
  r.argmax = point_near(fm, x);
  r.value = eval_F_crt(fm, r.argmax, p);
  r.x = static_cast<double>(r.argmax.x(fm));
  r.refinement_depth = kRounds;
  r.grid_value = r.value;
  return r;
}

}  // namespace

double s(double x) noexcept {
  const long double r = static_cast<long double>(x) - std::nearbyint(static_cast<long double>(x));
  return static_cast<double>(std::fabs(std::sin(kPi * r)));
}

double s_d(double x, i64 d) noexcept { return s(x / static_cast<double>(d)); }

double eval_F(const SineProduct& p, long double xl) {
  FactorProduct acc;
  for (const SineTerm& t : p.terms()) {
    const long double y = static_cast<long double>(t.d) * xl;
    const long double r = y - std::nearbyint(y);
    acc.add(std::fabs(std::sin(kPi * r)), r == 0, t.d, t.j);
  }
  return acc.finish(p.exponent_sum());
}

double eval_F(const SineProduct& p, const Rational& x) {
  FactorProduct acc;
  for (const SineTerm& t : p.terms()) {
    i128 r = static_cast<i128>(t.d) * x.num % x.den;
    if (r < 0) r += x.den;
    if (2 * r > x.den) r -= x.den;
    const long double frac = static_cast<long double>(r) / static_cast<long double>(x.den);
    acc.add(std::fabs(std::sin(kPi * frac)), r == 0, t.d, t.j);
  }
  return acc.finish(p.exponent_sum());
}

CirclePoint make_point(const FactoredModulus& fm, const ResidueCell& cell, double t) {
  if (!(t >= -0.5 && t < 0.5)) throw Error("circle point: t must lie in [-1/2, 1/2)");
  return CirclePoint{cell, crt_signed(cell, fm), t};
}

CirclePoint point_at(const FactoredModulus& fm, i64 N, double t) {
  if (!(t >= -0.5 && t < 0.5)) throw Error("circle point: t must lie in [-1/2, 1/2)");
  return CirclePoint{cell_of(N, fm), N, t};
}

CirclePoint point_near(const FactoredModulus& fm, double x) {
  const long double y = static_cast<long double>(x) * static_cast<long double>(fm.n());
  auto N = static_cast<i64>(std::floor(y + 0.5L));
  double t = static_cast<double>(y - static_cast<long double>(N));
  if (t >= 0.5) t = std::nextafter(0.5, 0.0);
  if (t < -0.5) t = -0.5;
  N = signed_residue(N, fm.n());
  return point_at(fm, N, t);
}

double pair_sine(const FactoredModulus& fm, const ResidueCell& cell, std::size_t i, std::size_t j,
                 double t, PairForm form) {
  if (i >= fm.k() || j >= fm.k() || i == j) throw Error("pair_sine: bad prime indices");
  const i64 u = pair_residue(fm, cell, i, j, form);
  const long double arg =
      (static_cast<long double>(u) + t) / static_cast<long double>(fm.prime(i) * fm.prime(j));
  return static_cast<double>(std::fabs(std::sin(kPi * arg)));
}

double eval_F_crt(const FactoredModulus& fm, const CirclePoint& pt, const SineProduct& p,
                  PairForm form) {
  if (!is_valid_cell(pt.cell, fm)) throw Error("eval_F_crt: invalid cell");
  return plan_cell(fm, shape_terms(fm, p), pt.cell, pt.N, p.exponent_sum(), form)(pt.t);
}

std::string to_string(Strategy s) {
  switch (s) {
    case Strategy::kGrid: return "grid";
    case Strategy::kCells: return "cells";
    case Strategy::kBoth: return "both";
  }
  return "?";
}

Strategy strategy_from_string(const std::string& s) {
  if (s == "grid") return Strategy::kGrid;
  if (s == "cells") return Strategy::kCells;
  if (s == "both") return Strategy::kBoth;
  throw Error("unknown strategy '" + s + "' (expected grid, cells or both)");
}

std::optional<double> MaximizeResult::disagreement() const noexcept {
  if (!grid_value || !cells_value) return std::nullopt;
  const double top = std::max(*grid_value, *cells_value);
  return top > 0 ? std::fabs(*grid_value - *cells_value) / top : 0.0;
}

MaximizeResult max_on_circle(const SineProduct& p, const FactoredModulus& fm,
                             const MaximizeOptions& opts) {
  switch (opts.strategy) {
    case Strategy::kCells: return maximize_cells(p, fm, opts);
    case Strategy::kGrid: return maximize_grid(p, fm, opts);
    case Strategy::kBoth: break;
  }
  MaximizeResult cells = maximize_cells(p, fm, opts);
  const MaximizeResult grid = maximize_grid(p, fm, opts);
  MaximizeResult r = grid.value > cells.value ? grid : cells;
  r.strategy = Strategy::kBoth;
  r.cells_examined = cells.cells_examined;
  r.refinement_depth = grid.refinement_depth;
  r.grid_value = grid.value;
  r.cells_value = cells.value;
  return r;
}

namespace {

struct Simpson {
  const CellPlan& f;
  int max_depth;
  bool failed = false;

  double panel(double a, double b, double fa, double fm, double fb, double whole, double eps,
               int depth) {
    const double c = 0.5 * (a + b);
    const double lm = 0.5 * (a + c), rm = 0.5 * (c + b);
    const double flm = sq(lm), frm = sq(rm);
    const double left = (c - a) / 6.0 * (fa + 4.0 * flm + fm);
    const double right = (b - c) / 6.0 * (fm + 4.0 * frm + fb);
    const double delta = left + right - whole;
    constexpr int kMinDepth = 4;
    if (depth >= kMinDepth && std::fabs(delta) <= 15.0 * eps) return left + right + delta / 15.0;
    if (depth >= max_depth) {
      failed = true;
      return left + right + delta / 15.0;
    }
    return panel(a, c, fa, flm, fm, left, eps / 2, depth + 1) +
           panel(c, b, fm, frm, fb, right, eps / 2, depth + 1);
  }

  double sq(double t) const {
    const double v = f(t);
    return v * v;
  }

  double integrate(double a, double b, double eps) {
    const double fa = sq(a), fb = sq(b), fm = sq(0.5 * (a + b));
    return panel(a, b, fa, fm, fb, (b - a) / 6.0 * (fa + 4.0 * fm + fb), eps, 0);
  }
};

double integrate_cell(const CellPlan& plan, const QuadratureOptions& opts, bool& failed) {
  Simpson simpson{plan, opts.max_depth};
  // split at the zero of s(t)
  const double total = simpson.integrate(-0.5, 0.0, opts.tolerance / 2) +
                       simpson.integrate(0.0, 0.5, opts.tolerance / 2);
  failed = simpson.failed;
  return total;
}

}  // namespace

double cell_integral(const SineProduct& p, const FactoredModulus& fm, const ResidueCell& cell,
                     const QuadratureOptions& opts) {
  const i64 N = crt_signed(cell, fm);
  const CellPlan plan = plan_cell(fm, shape_terms(fm, p), cell, N, p.exponent_sum(), PairForm::kFirst);
  bool failed = false;
  const double v = integrate_cell(plan, opts, failed);
  if (failed) throw QuadratureError("cell integral did not reach tolerance", v);
  return v;
}

double parseval_Q(const SineProduct& p, const FactoredModulus& fm, const QuadratureOptions& opts) {
  const auto shapes = shape_terms(fm, p);
  const i64 n = fm.n();
  const i64 half = (n - 1) / 2;
  std::vector<double> parts(static_cast<std::size_t>(n));
  std::vector<char> failed(static_cast<std::size_t>(n), 0);
  parallel_for(static_cast<std::size_t>(n), opts.jobs, [&](std::size_t c) {
    const i64 N = static_cast<i64>(c) - half;
    const CellPlan plan = plan_cell(fm, shapes, cell_of(N, fm), N, p.exponent_sum(), PairForm::kFirst);
    bool bad = false;
    parts[c] = integrate_cell(plan, opts, bad);
    failed[c] = bad;
  });
  double sum = 0.0;
  for (double v : parts) sum += v;
  const double Q = sum / static_cast<double>(n);
  if (std::find(failed.begin(), failed.end(), 1) != failed.end()) {
    throw QuadratureError("parseval_Q: tolerance not reached at max depth " +
                              std::to_string(opts.max_depth),
                          Q);
  }
  return Q;
}

QuotientCheck quotient_bound_check(i64 p, i64 q, std::size_t samples, std::uint64_t seed) {
  if (p < 1 || q < 1) throw Error("quotient_bound_check: p, q must be positive");
  std::vector<double> xs;
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uni(-0.5, 0.5);
  for (std::size_t i = 0; i < samples; ++i) xs.push_back(uni(rng));
  for (i64 m : {p, q}) {
    for (i64 j = 0; j <= m; ++j) {
      const double x = static_cast<double>(j) / static_cast<double>(m);
      xs.insert(xs.end(), {x, x - 1e-9, x + 1e-9});
    }
  }

  const double pd = static_cast<double>(p), qd = static_cast<double>(q);
  const double bound_pair = std::min(pd, qd);
  QuotientCheck out;
  out.points = xs.size();
  for (double x : xs) {
    const double sx = s(x), spx = s(pd * x), sqx = s(qd * x);
    // limits at zeros of s(x): s(px)/s(x) -> p, s(px)s(qx)/s(x) -> 0
    const double single = sx == 0.0 ? pd : spx / sx;
    const double pair = sx == 0.0 ? 0.0 : spx * sqx / sx;
    out.worst_single = std::max(out.worst_single, single / pd);
    out.worst_pair = std::max(out.worst_pair, pair / bound_pair);
  }
  constexpr double kSlack = 1e-12;
  out.holds = out.worst_single <= 1 + kSlack && out.worst_pair <= 1 + kSlack;
  return out;
}

}  // namespace cyclo
