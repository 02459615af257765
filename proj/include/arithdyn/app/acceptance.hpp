#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <set>
#include <string>
#include <vector>

#include "arithdyn/app/io.hpp"
#include "arithdyn/equilibrium/cloud.hpp"
#include "arithdyn/equilibrium/stats.hpp"
#include "arithdyn/green/height.hpp"
#include "arithdyn/parameter/families.hpp"
#include "arithdyn/parameter/locus.hpp"
#include "arithdyn/parameter/quadratic.hpp"
#include "arithdyn/random.hpp"

namespace arithdyn::app {

struct SuiteContext {
  std::uint64_t seed = 42;
  unsigned threads = 0;
};

// `pass` is the numerical verdict and goes into the artifacts; the time check is kept
// apart so artifacts do not depend on the machine.
struct CriterionOutcome {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string detail;
  Json record = Json::object();
  std::vector<std::pair<std::string, std::string>> files;
  double seconds = 0.0;
  double limit_seconds = 0.0;

  bool in_time() const { return seconds <= limit_seconds; }
  bool passed() const { return pass && in_time(); }
};

struct Criterion {
  int id;
  std::string name;
  double limit_seconds;
  std::function<void(const SuiteContext&, CriterionOutcome&)> run;
};

// Pinned by the first seed-42 run of criterion 17 and frozen.
inline constexpr double kBrannerHubbardGolden = 0.994647;
inline constexpr double kBrannerHubbardGoldenTol = 1e-3;

namespace detail {

inline std::string fmt(const char* f, double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, x);
  return buf;
}

inline std::string sci(double x) { return fmt("%.3g", x); }

inline BigRat random_rational(CounterRng& rng, long range) {
  const long a = static_cast<long>(rng.below(2 * range + 1)) - range;
  const long b = static_cast<long>(rng.below(range)) + 1;
  return BigRat(BigInt(a == 0 ? 1 : a), BigInt(b));
}

inline ProjPointQ random_point(CounterRng& rng, long range) {
  const long a = static_cast<long>(rng.below(2 * range + 1)) - range;
  const long b = static_cast<long>(rng.below(range)) + 1;
  return ProjPointQ(BigInt(a), BigInt(b));
}

inline RationalMapC quad_c(double c) { return RationalMapC::polynomial(PolyC{Complex(c), Complex(0.0), Complex(1.0)}); }

// Exact orbit with a repeat check; an orbit whose naive height passes 200 never returns.
inline bool preperiodic_by_orbit(const RationalMapQ& f, const ProjPointQ& x) {
  std::set<ProjPointQ> seen;
  ProjPointQ cur = x;
  for (int k = 0; k < 64; ++k) {
    if (!seen.insert(cur).second) return true;
    if (naive_height(cur) > 200.0) return false;
    cur = f.apply(cur);
  }
  return false;
}

inline std::vector<double> sorted_real_parts(const PointCloud& c) {
  std::vector<double> x;
  for (const auto& z : c.points) x.push_back(z.real());
  std::sort(x.begin(), x.end());
  return x;
}

inline void product_formula(const SuiteContext& ctx, CriterionOutcome& out) {
  CounterRng rng(ctx.seed, 1);
  std::size_t bad = 0;
  Json first = Json::array();
  for (int i = 0; i < 1000; ++i) {
    const BigRat x = random_rational(rng, 1000000);
    BigRat prod = abs(x);
    for (const BigInt& p : prime_divisors(BigInt(x.num() * x.den()))) prod *= padic_abs(x, p);
    if (!(prod == BigRat(1))) ++bad;
    if (i < 5) first.push_back(x.str());
  }
  out.pass = bad == 0;
  out.detail = "1000 rationals, " + std::to_string(bad) + " products differ from 1";
  out.record = {{"samples", 1000}, {"failures", bad}, {"first", first}};
}

inline void power_green(const SuiteContext& ctx, CriterionOutcome& out) {
  CounterRng rng(ctx.seed, 2);
  double worst = 0.0;
  for (std::size_t d : {2u, 3u, 5u}) {
    const RationalMapC f(RationalMapQ::power(d));
    for (int i = 0; i < 100; ++i) {
      const Complex u = std::polar(1.0, 2 * std::numbers::pi * rng.uniform());
      const LiftC v = i % 2 ? LiftC{u, Complex(rng.uniform())} : LiftC{Complex(rng.uniform()), u};
      worst = std::max(worst, std::fabs(green_arch(f, v, 1e-12).value));
    }
  }
  out.pass = worst <= 1e-12;
  out.detail = "max |G| over 300 unit points = " + sci(worst) + " (limit 1e-12)";
  out.record = {{"max_abs_value", worst}};
}

inline void chebyshev_green(const SuiteContext&, CriterionOutcome& out) {
  const GreenValue g = green_poly(PolyC{Complex(-2.0), Complex(0.0), Complex(1.0)}, Complex(3.0), 1e-12);
  // z = w + 1/w conjugates z^2 - 2 to w^2, so G(3) = log|w| with w + 1/w = 3.
  const double w = (3.0 + std::sqrt(5.0)) / 2.0;
  const double gap = std::fabs(g.value - std::log(w));
  out.pass = gap <= 1e-9;
  out.detail = "G(3) = " + fmt("%.15f", g.value) + ", oracle gap " + sci(gap) + " (limit 1e-9)";
  out.record = {{"value", g.value}, {"error", g.error}, {"oracle", std::log(w)}};
}

inline void green_functional_equation(const SuiteContext& ctx, CriterionOutcome& out) {
  CounterRng rng(ctx.seed, 4);
  std::size_t bad = 0;
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    std::vector<Complex> p(4), q(4);
    for (auto& c : p) c = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    for (auto& c : q) c = Complex(rng.uniform() - 0.5, rng.uniform() - 0.5);
    const RationalMapC f{HomPolyC(p), HomPolyC(q)};
    const LiftC v{Complex(rng.uniform() - 0.5, rng.uniform() - 0.5), Complex(rng.uniform() - 0.5, 0.3)};
    const GreenValue a = green_arch(f, v, 1e-9), b = green_arch(f, f(v), 1e-9);
    const double gap = std::fabs(b.value - 3.0 * a.value), allowed = b.error + 3.0 * a.error;
    if (gap > allowed) ++bad;
    worst = std::max(worst, gap / allowed);
  }
  out.pass = bad == 0;
  out.detail = "200 cubic maps, " + std::to_string(bad) + " violations, max gap/error = " + fmt("%.3f", worst);
  out.record = {{"violations", bad}, {"max_gap_over_error", worst}};
}

inline void power_height(const SuiteContext& ctx, CriterionOutcome& out) {
  CounterRng rng(ctx.seed, 5);
  double worst = 0.0;
  for (int i = 0; i < 100; ++i) {
    const ProjPointQ x = random_point(rng, 1000000);
    for (std::size_t d : {2u, 3u, 5u}) {
      const double n = naive_height(x);
      worst = std::max(worst, std::fabs(canonical_height_global(RationalMapQ::power(d), x, 1e-10).value - n));
      worst = std::max(worst, std::fabs(canonical_height_adelic(RationalMapQ::power(d), x, 1e-10).value - n));
    }
  }
  out.pass = worst <= 1e-10;
  out.detail = "100 rationals, d in {2,3,5}, both algorithms: max |h - naive| = " + sci(worst);
  out.record = {{"max_gap", worst}};
}

inline void height_agreement(const SuiteContext& ctx, CriterionOutcome& out) {
  CounterRng rng(ctx.seed, 6);
  std::size_t bad = 0;
  double worst = 0.0, max_err = 0.0;
  Json rows = Json::array();
  for (int i = 0; i < 100; ++i) {
    const long c = i % 5 - 2;
    const RationalMapQ f = RationalMapQ::quadratic(BigRat(c));
    const ProjPointQ x = random_point(rng, 30);
    const HeightValue g = canonical_height_global(f, x, 1e-5);
    const HeightValue a = canonical_height_adelic(f, x, 1e-9);
    const double gap = std::fabs(g.value - a.value);
    if (gap > g.error + a.error) ++bad;
    worst = std::max(worst, gap);
    max_err = std::max(max_err, g.error + a.error);
    rows.push_back({{"c", c}, {"x", x.str()}, {"global", g.value}, {"adelic", a.value}});
  }
  out.pass = bad == 0;
  out.detail = "100 pairs, " + std::to_string(bad) + " disagreements, max gap " + sci(worst) +
               ", max summed error " + sci(max_err);
  out.record = {{"violations", bad}, {"rows", rows}};
}

inline void height_functional_equation(const SuiteContext& ctx, CriterionOutcome& out) {
  CounterRng rng(ctx.seed, 7);
  std::size_t bad = 0;
  double worst = 0.0;
  for (long c = -2; c <= 2; ++c)
    for (int i = 0; i < 10; ++i) {
      const RationalMapQ f = RationalMapQ::quadratic(BigRat(c));
      const ProjPointQ x = random_point(rng, 1000);
      const HeightValue a = canonical_height_adelic(f, x, 1e-10), b = canonical_height_adelic(f, f.apply(x), 1e-10);
      const double gap = std::fabs(b.value - 2.0 * a.value);
      if (gap > b.error + 2.0 * a.error) ++bad;
      worst = std::max(worst, gap);
    }
  out.pass = bad == 0;
  out.detail = "50 cases, " + std::to_string(bad) + " violations, max |h(f(x)) - 2h(x)| = " + sci(worst);
  out.record = {{"violations", bad}, {"max_gap", worst}};
}

inline void preperiodicity(const SuiteContext&, CriterionOutcome& out) {
  std::size_t checked = 0, mismatched = 0, preper = 0;
  const auto pts = points_of_bounded_height(std::log(50.0));
  for (long c : {-1L, -2L}) {
    const RationalMapQ f = RationalMapQ::quadratic(BigRat(c));
    for (const auto& x : pts) {
      const bool want = preperiodic_by_orbit(f, x);
      const bool got = is_preperiodic(f, x).verdict == Verdict::preperiodic;
      ++checked;
      if (want != got) ++mismatched;
      if (got) ++preper;
    }
  }
  std::set<ProjPointQ> found;
  Json listed = Json::array();
  for (const auto& x : preperiodic_search(RationalMapQ::quadratic(BigRat(-1)), std::log(100.0))) {
    found.insert(x);
    listed.push_back(x.str());
  }
  const std::set<ProjPointQ> want{ProjPointQ::infinity(), ProjPointQ::parse("0"), ProjPointQ::parse("1"),
                                  ProjPointQ::parse("-1")};
  out.pass = mismatched == 0 && found == want;
  out.detail = std::to_string(checked) + " verdicts, " + std::to_string(mismatched) +
               " mismatches; search(z^2-1, log 100) = " + listed.dump();
  out.record = {{"verdicts", checked}, {"mismatches", mismatched}, {"preperiodic", preper}, {"search", listed}};
}

inline void squaring_tree(const SuiteContext& ctx, CriterionOutcome& out) {
  const PointCloud c = backward_cloud(RationalMapC(RationalMapQ::power(2)), 1.0, 12, 0, ctx.seed, ctx.threads);
  auto t = angle_fractions(c);
  std::sort(t.begin(), t.end());
  double worst = t.size() == 4096 ? 0.0 : 1.0;
  for (std::size_t k = 0; k < t.size() && k < 4096; ++k) worst = std::max(worst, std::fabs(t[k] - k / 4096.0));
  const double disc = star_discrepancy(angle_fractions(c));
  out.pass = c.size() == 4096 && worst <= 1e-12 && disc < 1e-3;
  out.detail = std::to_string(c.size()) + " atoms, max angle gap to k/4096 " + sci(worst) + ", star discrepancy " +
               sci(disc) + " (limit 1e-3)";
  out.record = {{"atoms", c.size()}, {"max_angle_gap", worst}, {"star_discrepancy", disc}};
}

inline void arcsine_law(const SuiteContext& ctx, CriterionOutcome& out) {
  const PointCloud c = backward_cloud(quad_c(-2.0), 0.0, 12, 0, ctx.seed, ctx.threads);
  const double ks = ks_distance(sorted_real_parts(c), arcsine_cdf);
  out.pass = c.size() == 4096 && ks < 0.02;
  out.detail = std::to_string(c.size()) + " atoms, Kolmogorov distance " + sci(ks) + " (limit 0.02)";
  out.record = {{"atoms", c.size()}, {"ks", ks}};
}

inline void base_point_independence(const SuiteContext& ctx, CriterionOutcome& out) {
  const RationalMapC f = quad_c(-2.0);
  const auto ring = probe_ring(3.0, 20);
  std::vector<PointCloud> clouds;
  for (Complex z0 : {Complex(0.0), Complex(5.0), Complex(0.0, 2.0)})
    clouds.push_back(backward_cloud(f, z0, 12, 0, ctx.seed, ctx.threads));
  double gap = 0.0;
  for (std::size_t i = 0; i < clouds.size(); ++i)
    for (std::size_t j = i + 1; j < clouds.size(); ++j) gap = std::max(gap, compare_clouds(clouds[i], clouds[j], ring));
  out.pass = gap < 0.02;
  out.detail = "starts 0, 5, 2i: max potential gap on |w| = 3 is " + sci(gap) + " (limit 0.02)";
  out.record = {{"max_gap", gap}};
}

inline void periodic_equidistribution(const SuiteContext& ctx, CriterionOutcome& out) {
  const RationalMapC f = quad_c(-2.0);
  const PointCloud per = periodic_cloud(f, 8);
  const PointCloud back = backward_cloud(f, 0.0, 12, 0, ctx.seed, ctx.threads);
  const double gap = compare_clouds(per, back, probe_ring(3.0, 20));
  out.pass = gap < 0.03;
  out.detail = std::to_string(per.size()) + " periodic atoms vs 4096 backward atoms: gap " + sci(gap) + " (limit 0.03)";
  out.record = {{"periodic_atoms", per.size()}, {"gap", gap}};
  out.files.emplace_back("periodic_cloud_8.csv", cloud_csv(per));
}

inline void lyapunov_exponents(const SuiteContext& ctx, CriterionOutcome& out) {
  struct Case {
    std::string name;
    RationalMapC f;
    double expect;  // 0: lower bound only
    double tol;
  };
  const std::vector<Case> cases{{"z^2", RationalMapC(RationalMapQ::power(2)), std::log(2.0), 1e-2},
                                {"z^2-2", quad_c(-2.0), std::log(2.0), 2e-2},
                                {"z^2+1", quad_c(1.0), 0.0, 0.0},
                                {"z^3", RationalMapC(RationalMapQ::power(3)), 0.0, 0.0},
                                {"lattes", RationalMapC(RationalMapQ::lattes()), 0.0, 0.0}};
  bool ok = true;
  std::string detail;
  Json rows = Json::array();
  for (const auto& c : cases) {
    const PointCloud cloud = backward_cloud(c.f, Complex(0.3, 0.2), 30, 2048, ctx.seed, ctx.threads);
    const LyapunovEstimate e = lyapunov(c.f, cloud, 5, 20, ctx.seed);
    const double floor = std::log(static_cast<double>(c.f.degree())) / 2 - 3 * e.standard_error;
    bool good = e.value >= floor;
    if (c.expect > 0) good = good && std::fabs(e.value - c.expect) <= c.tol;
    ok = ok && good;
    detail += (detail.empty() ? "" : ", ") + c.name + " " + fmt("%.4f", e.value);
    rows.push_back({{"map", c.name}, {"value", e.value}, {"stderr", e.standard_error}, {"ok", good}});
  }
  out.pass = ok;
  out.detail = detail + " (log 2 = 0.6931)";
  out.record = {{"maps", rows}};
}

inline void percrit_counts(const SuiteContext&, CriterionOutcome& out) {
  // f_c^2(0) - f_c^0(0) = c^2 + c exactly, with the rational roots 0 and -1.
  const PolyZ p2 = percrit_poly(2, 0);
  bool exact = p2 == PolyZ({BigInt(0), BigInt(1), BigInt(1)});
  const auto r2 = percrit_roots(2, 0);
  exact = exact && r2.roots.size() == 2;
  for (const auto& c : r2.roots)
    exact = exact && (std::abs(c) <= 1e-14 || std::abs(c + 1.0) <= 1e-14);
  std::size_t pairs = 0, bad = 0;
  double max_abs = 0.0, max_green = 0.0, max_residual = 0.0;
  std::string csv;
  for (std::size_t n = 1; n <= 12; ++n)
    for (std::size_t k = 0; k < n; ++k) {
      const auto r = percrit_roots(n, k);
      ++pairs;
      if (r.roots.size() != (std::size_t{1} << (n - 1))) ++bad;
      max_residual = std::max(max_residual, r.residual);
      for (const auto& c : r.roots) {
        max_abs = std::max(max_abs, std::abs(c));
        max_green = std::max(max_green, mandelbrot_green(c, 1e-4).value);
      }
      if (n == 12 && k == 0) csv = percrit_csv(r);
    }
  out.pass = exact && bad == 0 && max_abs <= 4.0 && max_green <= 1e-3;
  out.detail = std::string("(2,0) -> {0,-1} ") + (exact ? "exact" : "WRONG") + "; " + std::to_string(pairs) +
               " (n,k) pairs with n <= 12, " + std::to_string(bad) + " wrong counts, max |c| " + fmt("%.4f", max_abs) +
               ", max G_M " + sci(max_green) + ", max residual " + sci(max_residual);
  out.record = {{"two_zero_exact", exact}, {"pairs", pairs}, {"wrong_counts", bad}, {"max_abs", max_abs},
                {"max_green", max_green}};
  out.files.emplace_back("percrit_12_0.csv", csv);
}

// Deviations this small are rounding noise, so "decreasing" is checked up to this floor.
inline constexpr double kDeviationFloor = 1e-12;

inline void harmonic_potential(const SuiteContext&, CriterionOutcome& out) {
  std::vector<double> dev;
  Json rows = Json::array();
  for (std::size_t n : {8u, 10u, 12u}) {
    const auto rep = percrit_equidistribution_test(n, 0, {Complex(3.0)});
    dev.push_back(rep.deviation[0]);
    rows.push_back({{"n", n}, {"mean_log", rep.mean_log[0]}, {"green", rep.green[0]}, {"deviation", rep.deviation[0]}});
  }
  const bool monotone = dev[1] <= dev[0] + kDeviationFloor && dev[2] <= dev[1] + kDeviationFloor;
  out.pass = dev[2] < 0.05 && monotone;
  out.detail = "deviation at n = 8, 10, 12: " + sci(dev[0]) + ", " + sci(dev[1]) + ", " + sci(dev[2]) +
               "; non-increasing up to " + sci(kDeviationFloor) + ": " + (monotone ? "yes" : "no");
  out.record = {{"rows", rows}};
}

inline void parameter_heights(const SuiteContext&, CriterionOutcome& out) {
  double worst = 0.0;
  for (long c : {0L, -1L, -2L}) worst = std::max(worst, std::fabs(mandelbrot_param_height(BigRat(c), 1e-10).height.value));
  const BigRat half = BigRat::parse("1/2");
  const ParamHeight h = mandelbrot_param_height(half, 1e-10);
  const double gm = mandelbrot_green(Complex(0.5), 1e-12).value;
  const bool finite_exact = h.finite.size() == 1 && *h.finite[0].prime == 2 && *h.finite[0].log_p_multiple == BigRat(1);
  const double gap = std::fabs(h.height.value - (std::log(2.0) + gm));
  out.pass = worst <= 1e-8 && finite_exact && gap <= h.height.error + 1e-12;
  out.detail = "max |h_M| at 0, -1, -2 = " + sci(worst) + "; h_M(1/2) = " + fmt("%.12f", h.height.value) +
               ", log 2 + G_M(1/2) = " + fmt("%.12f", std::log(2.0) + gm) + ", 2-adic term " +
               (finite_exact ? "exactly 1 * log 2" : "NOT exact");
  out.record = {{"max_critically_finite", worst}, {"half", h.height.value}, {"archimedean", h.archimedean},
                {"finite_exact", finite_exact}};
}

inline void branner_hubbard(const SuiteContext& ctx, CriterionOutcome& out) {
  CounterRng rng(ctx.seed, 17);
  std::vector<CubicParam> qs;
  std::vector<double> m(10000);
  for (std::size_t i = 0; i < m.size(); ++i) {
    m[i] = std::pow(10.0, 3.0 + 3.0 * rng.uniform());
    const Complex big = std::polar(m[i], 2.0 * std::numbers::pi * rng.uniform());
    const Complex small = std::polar(m[i] * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    qs.push_back(rng.uniform() < 0.5 ? CubicParam{big, small} : CubicParam{small, big});
  }
  std::vector<double> gap(qs.size());
  parallel_for(qs.size(), [&](std::size_t i) { gap[i] = std::fabs(cubic_green(qs[i]).value - std::log(m[i])); },
               ctx.threads);
  const double sup = *std::max_element(gap.begin(), gap.end());
  const bool golden = ctx.seed != 42 || std::fabs(sup - kBrannerHubbardGolden) <= kBrannerHubbardGoldenTol;
  out.pass = sup < 5.0 && golden;
  out.detail = "sup |G - log max(|a|,|c|)| over 10^4 samples = " + fmt("%.6f", sup) + " (limit 5, golden " +
               fmt("%.6f", kBrannerHubbardGolden) + (golden ? "" : ", DRIFTED") + ")";
  out.record = {{"sup", sup}, {"golden", kBrannerHubbardGolden}};
}

inline void per1_asymptotics(const SuiteContext& ctx, CriterionOutcome& out) {
  const Complex kappa(4.0);
  const double expected = std::log(4.0 / 6.0) / 3.0 + std::log(4.0 / 3.0) / 6.0;
  CounterRng rng(ctx.seed, 18);
  double asym = 0.0;
  bool symmetric = true;
  for (int i = 0; i < 20; ++i) {
    const Complex s = std::polar(1e3, 2.0 * std::numbers::pi * rng.uniform());
    const auto g = per1_greens({s, kappa});
    asym = std::max(asym, std::fabs(g.plus.value - std::log(1e3) - expected));
    const auto inv = per1_greens({1.0 / s, kappa});
    symmetric = symmetric && g.minus.value == inv.plus.value && g.minus.error == inv.plus.error &&
                inv.minus.value == per1_greens({1.0 / (1.0 / s), kappa}).plus.value;
  }
  // Literal claim: G+(s) <= G+(1) + 1e-6 on the closed unit disk.
  const double at_one = per1_greens({1.0, kappa}).plus.value;
  double disk_max = per1_greens({Complex(0.0, 1.0), kappa}).plus.value;
  Complex argmax(0.0, 1.0);
  std::vector<Complex> disk;
  for (int i = 0; i < 500; ++i)
    disk.push_back(std::polar(std::sqrt(rng.uniform()) * 0.999 + 1e-3, 2.0 * std::numbers::pi * rng.uniform()));
  std::vector<double> g(disk.size());
  parallel_for(disk.size(), [&](std::size_t i) { g[i] = per1_greens({disk[i], kappa}).plus.value; }, ctx.threads);
  for (std::size_t i = 0; i < disk.size(); ++i)
    if (g[i] > disk_max) {
      disk_max = g[i];
      argmax = disk[i];
    }
  const bool bounded = disk_max <= at_one + 1e-6;
  // Maximum-principle bound that does hold: the disk is dominated by the unit circle.
  std::vector<double> circle(4096);
  parallel_for(circle.size(),
               [&](std::size_t k) {
                 circle[k] = per1_greens({std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) / 4096.0), kappa})
                                 .plus.value;
               },
               ctx.threads);
  const double circle_max = *std::max_element(circle.begin(), circle.end());
  const bool circle_bound = disk_max <= circle_max + 1e-3;
  out.pass = asym < 0.05 && symmetric && bounded;
  out.detail = "asymptotic gap " + sci(asym) + " (limit 0.05); G-(s) = G+(1/s) bit-identical: " +
               (symmetric ? "yes" : "no") + "; boundedness by G+(1) = " + sci(at_one) + ": " +
               (bounded ? "holds" : "FALSE, G+(" + complex_str(argmax) + ") = " + fmt("%.4f", disk_max)) +
               "; bound by max over |s| = 1 (" + fmt("%.4f", circle_max) + "): " + (circle_bound ? "holds" : "fails");
  out.record = {{"asymptotic_gap", asym},       {"symmetric", symmetric},   {"green_at_one", at_one},
                {"disk_max", disk_max},         {"disk_argmax", complex_json(argmax)},
                {"circle_max", circle_max},     {"circle_bound_holds", circle_bound}};
}

inline void box_dimensions(const SuiteContext& ctx, CriterionOutcome& out) {
  const auto disk = indicator_grid({-1.25, 1.25, -1.25, 1.25}, 2048, 2048, [](Complex z) { return std::abs(z) <= 1.0; });
  const double disk_dim = boundary_box_dimension(disk).estimate;
  std::vector<double> est;
  Json rows = Json::array();
  for (std::size_t w : {512u, 1024u, 2048u}) {
    LocusSpec s;
    s.width = s.height = w;
    const LocusGrid g = locus_grid(s, ctx.threads);
    const BoxDimension b = boundary_box_dimension(g);
    est.push_back(b.estimate);
    rows.push_back({{"resolution", w}, {"estimate", b.estimate}, {"counts", b.counts}, {"boundary", g.boundary_count()}});
    if (w == 512) out.files.emplace_back("mandelbrot_512.pgm", locus_pgm(g));
  }
  const bool nondecreasing = est[0] <= est[1] && est[1] <= est[2];
  out.pass = std::fabs(disk_dim - 1.0) <= 0.05 && est[2] > 1.3 && nondecreasing;
  out.detail = "disk " + fmt("%.4f", disk_dim) + " (1 +- 0.05); boundary of M at 512/1024/2048: " + fmt("%.4f", est[0]) +
               " / " + fmt("%.4f", est[1]) + " / " + fmt("%.4f", est[2]) + " (> 1.3, nondecreasing: " +
               (nondecreasing ? "yes" : "no") + "; the true value 2 is out of reach at these resolutions)";
  out.record = {{"disk", disk_dim}, {"mandelbrot", rows}};
}

}  // namespace detail

// Criteria 1-19. Criterion 20 (two selftest runs compared byte for byte) needs a separate
// process and lives in the acceptance binary.
inline const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {1, "product formula", 1, detail::product_formula},
      {2, "power-map Green exactness", 1, detail::power_green},
      {3, "Chebyshev Green value", 1, detail::chebyshev_green},
      {4, "Green functional equation", 10, detail::green_functional_equation},
      {5, "power-map height is naive height", 5, detail::power_height},
      {6, "global vs adelic height", 60, detail::height_agreement},
      {7, "height functional equation", 30, detail::height_functional_equation},
      {8, "preperiodicity", 60, detail::preperiodicity},
      {9, "backward tree of z^2", 5, detail::squaring_tree},
      {10, "arcsine law", 5, detail::arcsine_law},
      {11, "base-point independence", 10, detail::base_point_independence},
      {12, "periodic-point equidistribution", 10, detail::periodic_equidistribution},
      {13, "Lyapunov exponents", 30, detail::lyapunov_exponents},
      {14, "Percrit roots", 120, detail::percrit_counts},
      {15, "harmonic-measure potential", 120, detail::harmonic_potential},
      {16, "adelic Mandelbrot heights", 10, detail::parameter_heights},
      {17, "Branner-Hubbard growth", 60, detail::branner_hubbard},
      {18, "Per1(4) asymptotics", 30, detail::per1_asymptotics},
      {19, "box dimension", 300, detail::box_dimensions},
  };
  return list;
}

inline CriterionOutcome run_criterion(const Criterion& c, const SuiteContext& ctx) {
  CriterionOutcome out;
  out.id = c.id;
  out.name = c.name;
  out.limit_seconds = c.limit_seconds;
  const auto t0 = std::chrono::steady_clock::now();
  try {
    c.run(ctx, out);
  } catch (const std::exception& e) {
    out.pass = false;
    out.detail = std::string("error: ") + e.what();
  }
  out.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return out;
}

inline std::string outcome_line(const CriterionOutcome& o) {
  char head[160];
  std::snprintf(head, sizeof head, "%s %2d %-34s %7.2f s / %4.0f s  ", o.passed() ? "PASS" : "FAIL", o.id,
                o.name.c_str(), o.seconds, o.limit_seconds);
  return head + o.detail + (o.in_time() ? "" : " [over time limit]");
}

// Artifact of one criterion: everything but the timing.
inline Json outcome_json(const CriterionOutcome& o) {
  return Json{{"id", o.id}, {"name", o.name}, {"pass", o.pass}, {"detail", o.detail}, {"record", o.record}};
}

inline std::vector<int> parse_criteria_ids(const std::string& s) {
  std::vector<int> ids;
  if (s == "all") {
    for (const auto& c : criteria()) ids.push_back(c.id);
    return ids;
  }
  for (const auto& item : split(s, ';')) {
    const int id = static_cast<int>(parse_real(item, "criteria"));
    if (id < 1 || id > static_cast<int>(criteria().size()) || std::to_string(id) != item)
      throw ConfigError("criteria: no criterion '" + item + "'");
    ids.push_back(id);
  }
  return ids;
}

}  // namespace arithdyn::app
