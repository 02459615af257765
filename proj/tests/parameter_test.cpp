#include <gtest/gtest.h>

#include <cmath>
#include <complex>
#include <numbers>

#include "arithdyn/parameter/families.hpp"
#include "arithdyn/parameter/locus.hpp"
#include "arithdyn/parameter/quadratic.hpp"

using namespace arithdyn;

namespace {

// 2^-n log|f_c^n(c)| with plain long double iteration; accurate once the orbit is huge.
double escape_oracle(Complex c, int n) {
  std::complex<long double> z(c.real(), c.imag()), cc = z;
  long double scale = 1;
  for (int k = 0; k < n; ++k) {
    z = z * z + cc;
    scale /= 2;
  }
  return static_cast<double>(scale * std::log(std::abs(z)));
}

bool contains(const std::vector<Complex>& v, Complex c, double tol) {
  for (const auto& z : v)
    if (std::abs(z - c) < tol) return true;
  return false;
}

}  // namespace

TEST(MandelbrotGreen, VanishesOnSuperattractingParameters) {
  EXPECT_EQ(mandelbrot_green(0.0).value, 0.0);
  EXPECT_EQ(mandelbrot_green(-1.0).value, 0.0);
  EXPECT_EQ(mandelbrot_green(-2.0).value, 0.0);
  EXPECT_LE(mandelbrot_green(-1.0).error, 1e-12);
}

TEST(MandelbrotGreen, MatchesDirectEscapeAtFive) {
  const GreenValue g = mandelbrot_green(5.0, 1e-13);
  EXPECT_NEAR(g.value, escape_oracle(5.0, 7), 1e-12);
  EXPECT_LT(std::fabs(g.value - std::log(5.0)), 0.35);
}

TEST(MandelbrotGreen, EqualsTwiceTheCriticalGreen) {
  for (Complex c : {Complex(0.3, 0.5), Complex(-0.75, 0.2), Complex(1.0, 1.0), Complex(-2.5, 0.0), Complex(0.26, 0.0)}) {
    const GreenValue gm = mandelbrot_green(c, 1e-12);
    const GreenValue g0 = green_poly(quadratic_poly(c), Complex(0.0), 1e-12);
    EXPECT_NEAR(gm.value, 2.0 * g0.value, gm.error + 2.0 * g0.error + 1e-14) << c;
  }
}

TEST(MandelbrotGreen, RealParametersPastTheCuspEscape) {
  // Near the cusp the orbit needs ~pi / sqrt(c - 1/4) steps to escape, so the tolerance has
  // to sit far below 2^-100 to see G > 0.
  for (double c = 0.251; c <= 2.0; c += 0.0173) EXPECT_GT(mandelbrot_green(c, 1e-250).value, 0.0) << c;
  for (double c = -2.0; c <= 0.25; c += 0.0173) EXPECT_LE(mandelbrot_green(c, 1e-6).value, 1e-6) << c;
}

TEST(Percrit, ExactRecursionCoefficients) {
  const PolyZ p3 = critical_orbit_poly(3);
  EXPECT_EQ(p3, PolyZ({BigInt(0), BigInt(1), BigInt(1), BigInt(2), BigInt(1)}));
  EXPECT_EQ(percrit_poly(3, 1), PolyZ({BigInt(0), BigInt(0), BigInt(1), BigInt(2), BigInt(1)}));
  EXPECT_EQ(percrit_poly(8, 0).degree(), 128u);
}

TEST(Percrit, SmallCases) {
  EXPECT_EQ(percrit_roots(1, 0).roots, std::vector<Complex>{Complex(0.0)});
  const auto r2 = percrit_roots(2, 0);
  ASSERT_EQ(r2.roots.size(), 2u);
  EXPECT_TRUE(contains(r2.roots, 0.0, 1e-14));
  EXPECT_TRUE(contains(r2.roots, -1.0, 1e-14));
  const auto r3 = percrit_roots(3, 0);
  ASSERT_EQ(r3.roots.size(), 4u);
  EXPECT_TRUE(contains(r3.roots, 0.0, 1e-12));
  EXPECT_TRUE(contains(r3.roots, Complex(-1.754877666246693, 0.0), 1e-12));
  EXPECT_TRUE(contains(r3.roots, Complex(-0.122561166876654, 0.744861766619744), 1e-12));
  EXPECT_TRUE(contains(r3.roots, Complex(-0.122561166876654, -0.744861766619744), 1e-12));
  for (const auto& c : r3.roots) {
    EXPECT_LE(std::abs(c), 4.0);
    EXPECT_LE(mandelbrot_green(c, 1e-8).value, 1e-8);
  }
}

TEST(Percrit, RepeatedRootsCarryMultiplicity) {
  // f^3(0) - f(0) = c^2 (1 + c)^2.
  const auto r = percrit_roots(3, 1);
  ASSERT_EQ(r.clusters.size(), 2u);
  for (const auto& [c, m] : r.clusters) EXPECT_EQ(m, 2u) << c;
  // c = 0 is a root of multiplicity k + 1.
  const auto r53 = percrit_roots(5, 3);
  EXPECT_EQ(r53.roots.size(), 16u);
  std::size_t at_zero = 0;
  for (const auto& [c, m] : r53.clusters)
    if (std::abs(c) < 1e-9) at_zero = m;
  EXPECT_EQ(at_zero, 4u);
}

TEST(Percrit, AgreesWithGenericSolverOnExactPolynomial) {
  const PolyZ exact = percrit_poly(5, 0);
  std::vector<Complex> coeffs;
  for (const auto& a : exact.coeffs()) coeffs.emplace_back(a.get_d());
  const auto generic = poly_roots(PolyC(coeffs), 1e-12).roots;
  const auto ours = percrit_roots(5, 0).roots;
  ASSERT_EQ(generic.size(), ours.size());
  for (const auto& c : generic) EXPECT_TRUE(contains(ours, c, 1e-6)) << c;
}

TEST(Percrit, CountBoundAndMembershipUpToTen) {
  for (std::size_t n = 1; n <= 10; ++n) {
    const auto r = percrit_roots(n, 0);
    EXPECT_EQ(r.roots.size(), std::size_t{1} << (n - 1));
    EXPECT_LE(r.residual, 1e-6);
    for (const auto& c : r.roots) {
      EXPECT_LE(std::abs(c), 4.0);
      EXPECT_LE(mandelbrot_green(c, 1e-4).value, 1e-3);
    }
  }
}

TEST(Percrit, PreperiodicRootsAreRootsOfTheExactPolynomial) {
  const PolyZ exact = percrit_poly(7, 3);
  for (const auto& c : percrit_roots(7, 3).roots) EXPECT_LE(relative_residual(exact, c), 1e-6);
}

TEST(Percrit, CapacityIsEnforced) {
  EXPECT_THROW(percrit_roots(14, 0), ResourceError);
  EXPECT_THROW(percrit_roots(3, 3), DomainError);
}

TEST(Equidistribution, PotentialMatchesGreenOffTheSet) {
  const auto rep = percrit_equidistribution_test(8, 0, {Complex(3.0), Complex(0.0, 2.0)});
  EXPECT_LT(rep.max_deviation, 0.05);
  const auto far = percrit_equidistribution_test(4, 0, {Complex(100.0)});
  // Roots in |c| <= 4 keep the mean within -log(1 - 4/100) of log 100; the centroid -1/2
  // actually puts it near log 100 + 1/200, which is G_M(100).
  EXPECT_NEAR(far.mean_log[0], std::log(100.0), -std::log(1.0 - 4.0 / 100.0));
  EXPECT_NEAR(far.mean_log[0], far.green[0], 1e-10);
  EXPECT_THROW(percrit_equidistribution_test(4, 0, {Complex(-0.5)}), DomainError);
}

TEST(ParamHeight, VanishesAtCriticallyFiniteParameters) {
  for (long c : {0L, -1L, -2L}) EXPECT_LE(mandelbrot_param_height(BigRat(c)).height.value, 1e-8);
}

TEST(ParamHeight, HalfHasExactTwoAdicTerm) {
  const auto h = mandelbrot_param_height(BigRat(BigInt(1), BigInt(2)));
  ASSERT_EQ(h.finite.size(), 1u);
  EXPECT_EQ(*h.finite[0].prime, 2);
  EXPECT_EQ(*h.finite[0].log_p_multiple, BigRat(1));
  EXPECT_GT(h.archimedean, 0.0);
  EXPECT_NEAR(h.height.value, std::log(2.0) + mandelbrot_green(0.5).value, 1e-12);
}

TEST(ParamHeight, IntegersHaveNoFiniteTerms) {
  const auto h = mandelbrot_param_height(BigRat(5));
  EXPECT_TRUE(h.finite.empty());
  EXPECT_DOUBLE_EQ(h.height.value, mandelbrot_green(5.0, 1e-10).value);
}

TEST(ParamHeight, SixthSumsBothPrimes) {
  // 1/6 < 1/4 lies in M, so only log 6 remains.
  const auto h = mandelbrot_param_height(BigRat(BigInt(1), BigInt(6)));
  EXPECT_EQ(h.finite.size(), 2u);
  EXPECT_NEAR(h.height.value, std::log(6.0), 1e-8);
}

TEST(Cubic, CriticalPointsAreZeroAndC) {
  const CubicParam q{Complex(1.5, -0.5), Complex(0.3, 0.7)};
  const PolyC dp = cubic_poly(q).derivative();
  EXPECT_LT(std::abs(dp(Complex(0.0))), 1e-15);
  EXPECT_LT(std::abs(dp(q.c)), 1e-14);
  EXPECT_NEAR(std::abs(cubic_poly(q)(Complex(0.0)) - q.a * q.a * q.a), 0.0, 1e-15);
}

TEST(Cubic, OriginIsConnected) {
  const auto g = cubic_green({Complex(0.0), Complex(0.0)});
  EXPECT_EQ(g.value, 0.0);
}

TEST(Cubic, GreenGrowsLikeLogOfTheLargerCoordinate) {
  CounterRng rng(7);
  for (int i = 0; i < 300; ++i) {
    const double m = std::pow(10.0, 3.0 + 3.0 * rng.uniform());
    const Complex big = std::polar(m, 2.0 * std::numbers::pi * rng.uniform());
    const Complex small = std::polar(m * rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    const CubicParam q = rng.uniform() < 0.5 ? CubicParam{big, small} : CubicParam{small, big};
    const auto g = cubic_green(q);
    EXPECT_LT(std::fabs(g.value - std::log(m)), 5.0);
    EXPECT_GT(g.value, 0.0);
  }
}

TEST(Per1, CriticalPointsAreSAndInverse) {
  const Per1Param q{Complex(0.6, 0.8) * 1.7, Complex(4.0)};
  const PolyC dp = per1_poly(q).derivative();
  EXPECT_LT(std::abs(dp(q.s)), 1e-13);
  EXPECT_LT(std::abs(dp(1.0 / q.s)), 1e-13);
  EXPECT_NEAR(std::abs(dp(Complex(0.0)) - q.kappa), 0.0, 1e-15);
}

TEST(Per1, MinusIsPlusAtTheInverseBitForBit) {
  for (Complex s : {Complex(2.0, 1.0), Complex(0.3, -0.1), Complex(-7.0, 0.5)}) {
    const auto a = per1_greens({s, 4.0});
    const auto b = per1_greens({1.0 / s, 4.0});
    EXPECT_EQ(a.minus.value, b.plus.value);
    EXPECT_EQ(a.minus.error, b.plus.error);
  }
}

TEST(Per1, AsymptoticConstant) {
  const double expected = std::log(4.0 / 6.0) / 3.0 + std::log(4.0 / 3.0) / 6.0;
  for (int k = 0; k < 8; ++k) {
    const Complex s = std::polar(1e3, 0.7 * k + 0.1);
    EXPECT_NEAR(per1_greens({s, 4.0}).plus.value - std::log(1e3), expected, 0.05);
  }
}

TEST(Per1, PlusGreenAtOneIsNotTheDiskMaximum) {
  // f_1 has a bounded critical orbit, but f_i(i) = 8i/3 escapes.
  EXPECT_EQ(per1_greens({1.0, 4.0}).plus.value, 0.0);
  EXPECT_GT(per1_greens({Complex(0.0, 1.0), 4.0}).plus.value, 0.1);
}

TEST(Per1, PlusGreenOnTheDiskIsBoundedByTheCircle) {
  // f_s^n(s) is a polynomial in s, so by the maximum principle G+ on |s| <= 1 is bounded
  // by its maximum on |s| = 1. The circle is sampled finely; 1e-3 absorbs the sampling gap.
  double circle = 0.0;
  for (int k = 0; k < 4096; ++k)
    circle = std::max(circle, per1_greens({std::polar(1.0, 2.0 * std::numbers::pi * k / 4096.0), 4.0}).plus.value);
  CounterRng rng(3);
  for (int i = 0; i < 500; ++i) {
    const Complex s = std::polar(std::sqrt(rng.uniform()) * 0.999 + 1e-3, 2.0 * std::numbers::pi * rng.uniform());
    EXPECT_LE(per1_greens({s, 4.0}).plus.value, circle + 1e-3) << s;
  }
}

TEST(Locus, CardioidZoomIsInterior) {
  LocusSpec s;
  s.box = {-0.3, 0.0, -0.15, 0.15};
  s.width = s.height = 48;
  const auto g = locus_grid(s);
  EXPECT_EQ(g.count(PixelState::interior), 48u * 48u);
  for (std::size_t idx : {std::size_t{0}, std::size_t{47}, std::size_t{48 * 47}, std::size_t{48 * 48 - 1}})
    EXPECT_EQ(mandelbrot_green(g.pixel(idx % 48, idx / 48), 1e-6).value, 0.0);
}

TEST(Locus, MandelbrotAreaAtDepth500) {
  LocusSpec s;
  const auto g = locus_grid(s);
  const double area = g.area(PixelState::interior);
  EXPECT_GT(area, 1.4);
  EXPECT_LT(area, 1.7);
  EXPECT_GT(g.count(PixelState::undecided), 0u);
}

TEST(Locus, EscapedPixelsCarryTheParameterGreen) {
  LocusSpec s;
  s.width = s.height = 16;
  const auto g = locus_grid(s);
  for (std::size_t j = 0; j < 16; ++j)
    for (std::size_t i = 0; i < 16; ++i) {
      const std::size_t k = g.index(i, j);
      if (g.state[k] != PixelState::escaped) continue;
      EXPECT_NEAR(g.value[k], mandelbrot_green(g.pixel(i, j), 1e-12).value, 1e-9);
    }
}

TEST(Locus, Per1WithAttractingFixedPointAlwaysCapturesOneCritical) {
  LocusSpec s;
  s.family = LocusFamily::per1;
  s.kappa = 0.5;
  s.box = {-3.0, 3.0, -3.0, 3.0};
  s.width = s.height = 64;
  const auto g = locus_grid(s);
  for (double f : g.floor) EXPECT_EQ(f, 0.0);
  EXPECT_GT(g.count(PixelState::escaped), 1000u);
}

TEST(Locus, CubicSliceIsCompact) {
  LocusSpec s;
  s.family = LocusFamily::cubic_slice;
  s.fixed_c = 0.5;
  s.box = {-3.0, 3.0, -3.0, 3.0};
  s.width = s.height = 64;
  const auto g = locus_grid(s);
  EXPECT_EQ(g.state[0], PixelState::escaped);
  EXPECT_NE(g.state[g.index(32, 32)], PixelState::escaped);
}

TEST(Locus, DeterministicAcrossThreadCounts) {
  LocusSpec s;
  s.width = s.height = 96;
  const auto a = locus_grid(s, 1), b = locus_grid(s, 3);
  EXPECT_EQ(a.value, b.value);
  EXPECT_EQ(a.boundary, b.boundary);
  EXPECT_EQ(locus_pgm(a), locus_pgm(b));
}

TEST(Locus, ExportFormats) {
  LocusSpec s;
  s.width = 4;
  s.height = 3;
  const auto g = locus_grid(s);
  const std::string pgm = locus_pgm(g);
  EXPECT_EQ(pgm.rfind("P5\n4 3\n65535\n", 0), 0u);
  EXPECT_EQ(pgm.size(), std::string("P5\n4 3\n65535\n").size() + 24);
  const std::string csv = locus_csv(g);
  EXPECT_EQ(std::count(csv.begin(), csv.end(), '\n'), 13);
  EXPECT_THROW(locus_grid(LocusSpec{LocusFamily::quadratic, {0, 0, 0, 1}}), DomainError);
}

TEST(BoxDimension, DiskBoundaryIsACurve) {
  const auto g = indicator_grid({-1.25, 1.25, -1.25, 1.25}, 2048, 2048, [](Complex z) { return std::abs(z) <= 1.0; });
  EXPECT_NEAR(boundary_box_dimension(g).estimate, 1.0, 0.05);
}

TEST(BoxDimension, ChebyshevJuliaSetIsASegment) {
  LocusSpec s;
  s.family = LocusFamily::julia;
  s.box = {-2.5, 2.5, -2.5, 2.5};
  s.width = s.height = 1024;
  const auto g = locus_grid(s);
  EXPECT_EQ(g.count(PixelState::interior), 0u);
  EXPECT_NEAR(boundary_box_dimension(g).estimate, 1.0, 0.05);
}

TEST(BoxDimension, RejectsEmptyBoundary) {
  const auto g = indicator_grid({-1, 1, -1, 1}, 32, 32, [](Complex) { return false; });
  EXPECT_THROW(boundary_box_dimension(g), DomainError);
}
