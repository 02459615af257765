#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "arithdyn/equilibrium/cloud.hpp"
#include "arithdyn/equilibrium/stats.hpp"
#include "arithdyn/green/green.hpp"

using namespace arithdyn;

namespace {

RationalMapC quad(long c) { return RationalMapC(RationalMapQ::quadratic(BigRat(c))); }

PointCloud roots_of_unity(std::size_t n) {
  std::vector<Complex> pts;
  for (std::size_t k = 0; k < n; ++k) pts.push_back(std::polar(1.0, 2 * std::numbers::pi * k / n));
  return PointCloud::uniform(std::move(pts), Provenance::parameter);
}

std::vector<double> sorted_real_parts(const PointCloud& c) {
  std::vector<double> x;
  for (const auto& z : c.points) x.push_back(z.real());
  std::sort(x.begin(), x.end());
  return x;
}

}  // namespace

TEST(BackwardCloud, SquaringTreeIsRootsOfUnity) {
  const PointCloud c = backward_cloud(RationalMapC(RationalMapQ::power(2)), 1.0, 12, 0, 42);
  ASSERT_EQ(c.size(), 4096u);
  auto t = angle_fractions(c);
  std::sort(t.begin(), t.end());
  for (std::size_t k = 0; k < t.size(); ++k) EXPECT_NEAR(t[k], k / 4096.0, 1e-12);
  EXPECT_LT(star_discrepancy(angle_fractions(c)), 1e-3);
  double sum = 0.0;
  for (double w : c.weights) sum += w;
  EXPECT_NEAR(sum, 1.0, 1e-12);
}

TEST(BackwardCloud, ChebyshevTreeMatchesCosineOracle) {
  // Preimages of 2 cos t under z^2 - 2 are 2 cos((t + 2 pi k) / 2); from 0 = 2 cos(pi/2).
  const PointCloud c = backward_cloud(quad(-2), 0.0, 12, 0, 42);
  ASSERT_EQ(c.size(), 4096u);
  std::vector<double> want;
  for (int k = 0; k < 4096; ++k) want.push_back(2 * std::cos((std::numbers::pi / 2 + 2 * std::numbers::pi * k) / 4096));
  std::sort(want.begin(), want.end());
  const auto got = sorted_real_parts(c);
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_NEAR(got[i], want[i], 1e-7);
  for (const auto& z : c.points) EXPECT_LT(std::fabs(z.imag()), 1e-7);
  EXPECT_LT(ks_distance(got, arcsine_cdf), 0.02);
}

TEST(BackwardCloud, LattesCloudFillsTheSphere) {
  const PointCloud c = backward_cloud(RationalMapC(RationalMapQ::lattes()), 2.0, 8, 4096, 42);
  ASSERT_EQ(c.size(), 4096u);
  EXPECT_LT(covering_radius(c), 0.1);
}

TEST(BackwardCloud, ExceptionalPointRejected) {
  EXPECT_THROW(backward_cloud(RationalMapC(RationalMapQ::power(2)), 0.0, 4, 0, 1), DomainError);
  EXPECT_THROW(backward_cloud(RationalMapC(RationalMapQ::power(2)), Complex(kInfinity, 0), 4, 0, 1), DomainError);
}

TEST(BackwardCloud, PullbackInvariance) {
  const RationalMapC f = quad(1);
  const PointCloud deep = backward_cloud(f, 0.5, 7, 0, 1), shallow = backward_cloud(f, 0.5, 6, 0, 1);
  std::vector<Complex> pulled;
  for (const auto& z : shallow.points)
    for (const auto& w : preimages(f, to_point(z))) pulled.push_back(chart_value(w));
  ASSERT_EQ(pulled.size(), deep.size());
  std::vector<char> used(pulled.size(), 0);
  for (const auto& z : deep.points) {
    std::size_t best = 0;
    double dist = HUGE_VAL;
    for (std::size_t j = 0; j < pulled.size(); ++j)
      if (!used[j] && std::abs(pulled[j] - z) < dist) dist = std::abs(pulled[j] - z), best = j;
    used[best] = 1;
    EXPECT_LT(dist, 1e-9);
  }
}

TEST(BackwardCloud, ConvergesToUnitCircleForSquaring) {
  const RationalMapC f(RationalMapQ::power(2));
  double prev = HUGE_VAL;
  for (std::size_t depth : {2u, 4u, 6u, 8u}) {
    const PointCloud c = backward_cloud(f, 3.0, depth, 0, 1);
    double worst = 0.0;
    for (const auto& z : c.points) worst = std::max(worst, std::fabs(std::abs(z) - 1.0));
    EXPECT_LT(worst, prev);
    // |z|^(2^n) = 3 gives ||z| - 1| <= 2 log 3 / 2^n.
    EXPECT_LE(worst, 2.0 * std::log(3.0) / std::pow(2.0, depth));
    prev = worst;
  }
}

TEST(BackwardCloud, DeterministicAndThreadIndependent) {
  const RationalMapC f(RationalMapQ::lattes());
  const PointCloud a = backward_cloud(f, 2.0, 6, 300, 9, 1), b = backward_cloud(f, 2.0, 6, 300, 9, 4);
  EXPECT_EQ(a.points, b.points);
  EXPECT_EQ(cloud_binary(a), cloud_binary(b));
  const PointCloud c = backward_cloud(f, 2.0, 6, 300, 10, 1);
  EXPECT_NE(a.points, c.points);
}

TEST(PeriodicCloud, Squaring) {
  const PointCloud c = periodic_cloud(RationalMapC(RationalMapQ::power(2)), 10);
  ASSERT_EQ(c.size(), 1023u);
  for (const auto& z : c.points) EXPECT_LT(std::abs(std::pow(z, 1023) - 1.0), 1e-8);
}

TEST(PeriodicCloud, ChebyshevPeriodEight) {
  // 2^8 + 1 fixed points of f^8: infinity (superattracting), z = 2 and 255 points
  // 2 cos(2 pi k / (2^8 +- 1)) inside (-2, 2), all repelling.
  const PointCloud c = periodic_cloud(quad(-2), 8);
  ASSERT_EQ(c.size(), 256u);
  int inside = 0;
  for (const auto& z : c.points) {
    EXPECT_LT(std::fabs(z.imag()), 1e-8);
    if (std::fabs(z.real()) < 2.0 - 1e-9) ++inside;
  }
  EXPECT_EQ(inside, 255);
  std::vector<double> x = sorted_real_parts(c);
  EXPECT_LT(ks_distance(x, arcsine_cdf), 0.02);
}

TEST(PeriodicCloud, AllRepellingForZSquaredPlusOne) {
  for (std::size_t n = 1; n <= 8; ++n) {
    const auto pts = periodic_points(quad(1), n);
    std::size_t repelling = 0;
    for (const auto& p : pts)
      if (chordal_distance(p.location, ProjPointC::infinity()) > 1e-6) {
        EXPECT_GT(std::abs(p.multiplier), 1.0);
        ++repelling;
      }
    EXPECT_EQ(periodic_cloud(quad(1), n).size(), repelling);
    EXPECT_EQ(repelling, std::size_t{1} << n);
  }
}

TEST(Potential, RootsOfUnity) {
  const PointCloud c = roots_of_unity(4096);
  EXPECT_NEAR(potential(c, 2.0), std::log(2.0), 1e-6);
  EXPECT_NEAR(potential(c, 0.5), 0.0, 1e-3);
  EXPECT_THROW(potential(c, 1.0), DomainError);
}

TEST(Potential, ArcsineCloudMatchesGreenFunction) {
  const PointCloud c = backward_cloud(quad(-2), 0.0, 12, 0, 42);
  const double g = green_poly(PolyC{Complex(-2), Complex(0), Complex(1)}, 3.0).value;
  EXPECT_NEAR(potential(c, 3.0), std::log((3 + std::sqrt(5.0)) / 2), 1e-2);
  EXPECT_NEAR(potential(c, 3.0), g, 1e-2);
}

TEST(Potential, HarmonicOffTheSupport) {
  const PointCloud c = backward_cloud(quad(-1), 0.3, 10, 0, 1);
  for (Complex centre : {Complex(3, 0), Complex(0, 2.5), Complex(-2.2, -1.4)}) {
    double mean = 0.0;
    const int m = 64;
    for (int k = 0; k < m; ++k) mean += potential(c, centre + std::polar(0.1, 2 * std::numbers::pi * k / m)) / m;
    EXPECT_NEAR(mean, potential(c, centre), 1e-3);
  }
}

TEST(CompareClouds, Examples) {
  const RationalMapC cheb = quad(-2);
  const auto ring = probe_ring(3.0, 20);
  const PointCloud a = backward_cloud(cheb, 0.0, 12, 0, 1), b = backward_cloud(cheb, 5.0, 12, 0, 1);
  EXPECT_LT(compare_clouds(a, b, ring), 0.02);
  EXPECT_EQ(compare_clouds(a, a, ring), 0.0);
  const RationalMapC sq(RationalMapQ::power(2));
  EXPECT_LT(compare_clouds(backward_cloud(sq, 1.0, 10, 0, 1), periodic_cloud(sq, 10), ring), 1e-3);
}

TEST(Lyapunov, KnownValuesAndLowerBound) {
  struct Case {
    RationalMapC f;
    double expect;  // negative: only the lower bound is checked
  };
  const std::vector<Case> cases{{RationalMapC(RationalMapQ::power(2)), std::log(2.0)},
                                {quad(-2), std::log(2.0)},
                                {RationalMapC(RationalMapQ::lattes()), -1.0},
                                {quad(1), -1.0},
                                {RationalMapC(RationalMapQ::power(3)), std::log(3.0)}};
  for (const auto& c : cases) {
    const PointCloud cloud = backward_cloud(c.f, Complex(0.3, 0.2), 30, 2048, 42);
    const LyapunovEstimate e = lyapunov(c.f, cloud, 5, 20, 42);
    if (c.expect > 0) EXPECT_NEAR(e.value, c.expect, 1e-2);
    EXPECT_GE(e.value, std::log(static_cast<double>(c.f.degree())) / 2 - 3 * e.standard_error);
    EXPECT_EQ(e.samples, cloud.size());
  }
}

TEST(Lyapunov, NearCriticalStartsAreResampled) {
  // Atoms of the tree from the critical point 0 all return to it after 6 steps.
  const RationalMapC f = quad(-1);
  const PointCloud tree = backward_cloud(f, 0.0, 6, 0, 1);
  std::vector<Complex> pts = tree.points;
  pts.push_back(0.0);
  const PointCloud mixed = PointCloud::uniform(pts, Provenance::backward);
  const LyapunovEstimate e = lyapunov(f, mixed, 0, 3, 7);
  EXPECT_GE(e.resampled, 1u);
}

TEST(Stats, DiscrepancyAndKs) {
  EXPECT_NEAR(star_discrepancy({0.5}), 0.5, 1e-15);
  EXPECT_NEAR(star_discrepancy({0.125, 0.375, 0.625, 0.875}), 0.125, 1e-15);
  EXPECT_NEAR(ks_distance({0.0}, [](double x) { return 0.5 + x / 2; }), 0.5, 1e-15);
  EXPECT_NEAR(arcsine_cdf(0.0), 0.5, 1e-15);
  EXPECT_NEAR(arcsine_cdf(1.0), 2.0 / 3.0, 1e-15);
}

TEST(Export, CsvAndBinary) {
  const PointCloud c = PointCloud::uniform({Complex(0.5, -1), Complex(kInfinity, 0)}, Provenance::periodic);
  EXPECT_EQ(cloud_csv(c), "re,im,weight\n0.5,-1,0.5\ninf,0,0.5\n");
  const std::string b = cloud_binary(c);
  ASSERT_EQ(b.size(), 48u);
  double v;
  std::memcpy(&v, b.data(), 8);
  EXPECT_EQ(v, 0.5);
  std::memcpy(&v, b.data() + 24, 8);
  EXPECT_TRUE(std::isinf(v));
}
