#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "arithdyn/numeric/bigrat.hpp"
#include "arithdyn/numeric/factor.hpp"
#include "arithdyn/numeric/hompoly.hpp"
#include "arithdyn/numeric/linalg.hpp"
#include "arithdyn/numeric/poly.hpp"
#include "arithdyn/numeric/roots.hpp"
#include "arithdyn/random.hpp"

using namespace arithdyn;

namespace {

BigRat random_rational(CounterRng& rng) {
  const long a = static_cast<long>(rng.below(2000001)) - 1000000;
  const long b = static_cast<long>(rng.below(1000000)) + 1;
  return BigRat(BigInt(a == 0 ? 1 : a), BigInt(b));
}

// Trial division up to sqrt(n); the independent oracle for factor_integer.
bool is_prime_by_trial(unsigned long long n) {
  if (n < 2) return false;
  for (unsigned long long k = 2; k * k <= n; ++k)
    if (n % k == 0) return false;
  return true;
}

}  // namespace

TEST(BigRat, NormalizesSignAndGcd) {
  EXPECT_EQ(rat_normalize(6, -4), BigRat(BigInt(-3), BigInt(2)));
  EXPECT_EQ(rat_normalize(6, -4).str(), "-3/2");
  const BigRat z = rat_normalize(0, 7);
  EXPECT_EQ(z.num(), 0);
  EXPECT_EQ(z.den(), 1);
  EXPECT_EQ(rat_normalize(35, 14).str(), "5/2");
}

TEST(BigRat, ZeroDenominatorIsDomainError) {
  EXPECT_THROW(rat_normalize(1, 0), DomainError);
  EXPECT_THROW(BigRat::parse("3/0"), DomainError);
  EXPECT_THROW(BigRat(1) / BigRat(0), DomainError);
}

TEST(BigRat, ParseAndArithmetic) {
  EXPECT_EQ(BigRat::parse("-6/4"), BigRat(BigInt(-3), BigInt(2)));
  EXPECT_EQ(BigRat::parse("1/2") + BigRat::parse("1/3"), BigRat::parse("5/6"));
  EXPECT_EQ(BigRat::parse("1/2") * BigRat::parse("-4"), BigRat(-2));
  EXPECT_LT(BigRat::parse("1/3"), BigRat::parse("1/2"));
  EXPECT_THROW(BigRat::parse("x"), DomainError);
}

TEST(PadicValuation, Examples) {
  EXPECT_EQ(padic_valuation(BigRat(12), 2), 2);
  EXPECT_EQ(padic_valuation(BigRat::parse("3/2"), 2), -1);
  EXPECT_EQ(padic_valuation(BigRat::parse("5/7"), 3), 0);
  EXPECT_EQ(padic_valuation(BigRat(0), 5), std::nullopt);
}

TEST(PadicValuation, RejectsNonPrime) {
  EXPECT_THROW(padic_valuation(BigRat(12), 4), DomainError);
  EXPECT_THROW(padic_valuation(BigRat(12), 1), DomainError);
}

TEST(PadicValuation, AdditiveOnRandomPairs) {
  CounterRng rng(7);
  for (int i = 0; i < 300; ++i) {
    const BigRat x = random_rational(rng), y = random_rational(rng);
    for (long p : {2, 3, 5, 7, 101}) {
      EXPECT_EQ(*padic_valuation(x * y, p), *padic_valuation(x, p) + *padic_valuation(y, p));
    }
  }
}

TEST(ProductFormula, ExactOnRandomRationals) {
  CounterRng rng(42);
  for (int i = 0; i < 1000; ++i) {
    const BigRat x = random_rational(rng);
    BigRat prod = abs(x);
    for (const BigInt& p : prime_divisors(BigInt(x.num() * x.den()))) prod *= padic_abs(x, p);
    ASSERT_EQ(prod, BigRat(1)) << x;
  }
}

TEST(FactorInteger, Examples) {
  EXPECT_TRUE(factor_integer(1).empty());
  const std::vector<BigInt> f360{2, 2, 2, 3, 3, 5};
  EXPECT_EQ(factor_integer(360), f360);
  ASSERT_TRUE(is_prime_by_trial(1000000007ull));
  EXPECT_EQ(factor_integer(1000000007), std::vector<BigInt>{BigInt(1000000007)});
  EXPECT_THROW(factor_integer(0), DomainError);
}

TEST(FactorInteger, SplitsProductsOfLargePrimes) {
  // Both factors exceed the trial-division range, so rho has to do the work.
  const BigInt p = 1000000007, q = 1000000009;
  ASSERT_TRUE(is_prime_by_trial(1000000009ull));
  const std::vector<BigInt> expected{p, p, q};
  EXPECT_EQ(factor_integer(BigInt(p * p * q)), expected);
  const BigInt m61 = (BigInt(1) << 61) - 1;
  EXPECT_EQ(factor_integer(BigInt(m61 * 6)), (std::vector<BigInt>{2, 3, m61}));
}

TEST(FactorInteger, ProductRecoversInput) {
  CounterRng rng(3);
  for (int i = 0; i < 200; ++i) {
    const BigInt n = BigInt(static_cast<unsigned long>(rng.below(1ull << 40) + 1));
    const auto f = factor_integer(n);
    BigInt prod = 1;
    for (const auto& p : f) {
      prod *= p;
      EXPECT_TRUE(is_probable_prime(p));
    }
    EXPECT_EQ(prod, n);
    EXPECT_TRUE(std::is_sorted(f.begin(), f.end()));
  }
}

TEST(Linalg, BareissMatchesCofactorExpansion) {
  Matrix<BigInt> m{{2, -1, 3}, {0, 4, 5}, {1, 1, -2}};
  // 2(4*-2 - 5*1) - (-1)(0*-2 - 5*1) + 3(0*1 - 4*1) = -26 - 5 - 12
  EXPECT_EQ(determinant(m), -43);
  Matrix<BigInt> swap_needed{{0, 1}, {1, 0}};
  EXPECT_EQ(determinant(swap_needed), -1);
}

TEST(HomPoly, EvaluationAndPartials) {
  // x^2 y - 3 x y^2 + 2 y^3
  HomPolyZ f{BigInt(2), BigInt(-3), BigInt(1), BigInt(0)};
  EXPECT_EQ(f(BigInt(2), BigInt(1)), 0);
  EXPECT_EQ(f(BigInt(3), BigInt(2)), 9 * 2 - 3 * 3 * 4 + 2 * 8);
  // Euler: x f_x + y f_y = 3 f
  const BigInt x = 5, y = -7;
  EXPECT_EQ(x * f.dx()(x, y) + y * f.dy()(x, y), 3 * f(x, y));
}

TEST(PolyRoots, QuadraticExamples) {
  auto r = poly_roots(PolyC{Complex(-1), Complex(0), Complex(1)});
  ASSERT_EQ(r.roots.size(), 2u);
  EXPECT_NEAR(std::abs(r.roots[0] - Complex(-1)), 0.0, 1e-12);
  EXPECT_NEAR(std::abs(r.roots[1] - Complex(1)), 0.0, 1e-12);

  auto s = poly_roots(PolyC{Complex(1), Complex(0), Complex(1)});
  ASSERT_EQ(s.roots.size(), 2u);
  std::vector<Complex> want{Complex(0, -1), Complex(0, 1)};
  for (const auto& w : want) {
    const double best = std::min(std::abs(s.roots[0] - w), std::abs(s.roots[1] - w));
    EXPECT_LT(best, 1e-12);
  }
}

TEST(PolyRoots, ZeroRootsAndMultiplicity) {
  // z^3 (z - 2)^2
  auto r = poly_roots(PolyC{Complex(0), Complex(0), Complex(0), Complex(4), Complex(-4), Complex(1)});
  ASSERT_EQ(r.roots.size(), 5u);
  int near_zero = 0, near_two = 0;
  for (const auto& z : r.roots) {
    if (std::abs(z) < 1e-10) ++near_zero;
    if (std::abs(z - 2.0) < 1e-6) ++near_two;
  }
  EXPECT_EQ(near_zero, 3);
  EXPECT_EQ(near_two, 2);
}

TEST(PolyRoots, RejectsConstants) { EXPECT_THROW(poly_roots(PolyC{Complex(3)}), DomainError); }

TEST(PolyRoots, RoundTripsRandomRootSets) {
  CounterRng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t n = 1 + rng.below(64);
    std::vector<Complex> roots(n);
    for (auto& z : roots) z = std::polar(0.2 + rng.uniform(), 2.0 * std::numbers::pi * rng.uniform());
    const auto found = poly_roots(poly_from_roots(roots), 1e-10).roots;
    ASSERT_EQ(found.size(), n);
    std::vector<char> used(n, 0);
    for (const auto& z : roots) {
      double best = HUGE_VAL;
      std::size_t arg = 0;
      for (std::size_t j = 0; j < n; ++j)
        if (!used[j] && std::abs(found[j] - z) < best) best = std::abs(found[j] - z), arg = j;
      used[arg] = 1;
      EXPECT_LT(best, 1e-6) << "trial " << trial << " degree " << n;
    }
  }
}

TEST(PolyRoots, DeterministicAndSorted) {
  const PolyC p{Complex(3, 1), Complex(-2), Complex(0, 5), Complex(1)};
  const auto a = poly_roots(p), b = poly_roots(p);
  ASSERT_EQ(a.roots, b.roots);
  for (std::size_t i = 1; i < a.roots.size(); ++i) EXPECT_LE(a.roots[i - 1].real(), a.roots[i].real());
}

TEST(PolyRoots, CriticalOrbitPolynomialOfDegree1024) {
  // c -> f_c^11(0) through the recursion z <- z^2 + c, dz <- 2 z dz + 1; its
  // coefficients overflow doubles, so only the evaluator form is usable.
  auto eval = [](const Complex& c) {
    Complex z = 0, dz = 0;
    for (int k = 0; k < 11; ++k) {
      if (std::abs(z) > 1e100) {
        // Far outside: z/dz halves with every further squaring.
        return NewtonStep{z / dz * std::ldexp(1.0, -(11 - k)), 1.0};
      }
      dz = 2.0 * z * dz + 1.0;
      z = z * z + c;
    }
    return NewtonStep{z / dz, std::abs(z)};
  };
  const auto rs = aberth_roots(1024, 2.0, eval, RootOptions{1e-10});
  ASSERT_EQ(rs.roots.size(), 1024u);
  for (const auto& c : rs.roots) EXPECT_LE(std::abs(c), 4.0);
}
