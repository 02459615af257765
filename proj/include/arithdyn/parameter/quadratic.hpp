#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <string>
#include <utility>
#include <vector>

#include "arithdyn/dynamics/periodic.hpp"
#include "arithdyn/green/height.hpp"
#include "arithdyn/numeric/factor.hpp"
#include "arithdyn/numeric/roots.hpp"
#include "arithdyn/parallel.hpp"

namespace arithdyn {

// z -> z^2 + c.
inline PolyC quadratic_poly(Complex c) { return PolyC{c, Complex(0.0), Complex(1.0)}; }

// G_M(c) = G_{f_c}(c). Zero (up to the returned error) exactly on the Mandelbrot set.
inline GreenValue mandelbrot_green(Complex c, double tol = 1e-12, std::size_t max_depth = 1000000) {
  return green_poly(quadratic_poly(c), c, tol, max_depth);
}

// f_c^n(0) as an integer polynomial in c: p_0 = 0, p_{m+1} = p_m^2 + c.
inline PolyZ critical_orbit_poly(std::size_t n) {
  PolyZ p;
  const PolyZ c = PolyZ::monomial(1);
  for (std::size_t m = 0; m < n; ++m) p = p * p + c;
  return p;
}

// f_c^n(0) - f_c^k(0), degree 2^(n-1).
inline PolyZ percrit_poly(std::size_t n, std::size_t k) {
  if (k >= n) throw DomainError("percrit: need 0 <= k < n");
  return critical_orbit_poly(n) - critical_orbit_poly(k);
}

namespace detail {

// Complex number m 2^e, renormalised so |m| stays near 1.
struct ScaledComplex {
  Complex m{0.0};
  long e = 0;

  void add(Complex x, long ex) {
    if (m == Complex(0.0)) {
      m = x;
      e = ex;
    } else if (ex > e) {
      m = shifted(m, e - ex) + x;
      e = ex;
    } else {
      m += shifted(x, ex - e);
    }
    const double big = std::max(std::fabs(m.real()), std::fabs(m.imag()));
    if (big == 0.0) return;
    int shift = 0;
    std::frexp(big, &shift);
    m = shifted(m, -shift);
    e += shift;
  }

  static Complex shifted(Complex x, long k) {
    const int s = static_cast<int>(std::clamp(k, -4000L, 4000L));
    return {std::ldexp(x.real(), s), std::ldexp(x.imag(), s)};
  }

  friend double ratio(const ScaledComplex& a, const ScaledComplex& b) {
    if (a.m == Complex(0.0)) return 0.0;
    return std::abs(a.m) / std::abs(b.m) * std::ldexp(1.0, static_cast<int>(std::clamp(a.e - b.e, -4000L, 4000L)));
  }
};

}  // namespace detail

// Smallness of an integer polynomial at c: the smaller of the backward error
// |p(c)| / sum_i |a_i| |c|^i and the scaled Newton correction |p(c) / p'(c)| / max(1, |c|).
// The first is meaningless at a root near 0, the second at a multiple root; values carry a
// binary exponent, so coefficients far outside the double range are fine.
inline double relative_residual(const PolyZ& p, Complex c) {
  if (p.is_zero()) return 0.0;
  detail::ScaledComplex v, dv, s;
  const double ac = std::abs(c);
  for (std::size_t i = p.degree() + 1; i-- > 0;) {
    dv.m *= c;
    if (v.m != Complex(0.0)) dv.add(v.m, v.e);
    v.m *= c;
    s.m *= ac;
    const BigInt& a = p.coeffs()[i];
    if (sgn(a) == 0) continue;
    long ex = 0;
    const double mant = mpz_get_d_2exp(&ex, a.get_mpz_t());
    v.add(Complex(mant), ex);
    s.add(Complex(std::fabs(mant)), ex);
  }
  const double backward = ratio(v, s);
  if (dv.m == Complex(0.0)) return backward;
  return std::min(backward, ratio(v, dv) / std::max(1.0, ac));
}

struct PercritRoots {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t degree = 0;
  std::vector<Complex> roots;                            // with multiplicity, sorted
  std::vector<std::pair<Complex, std::size_t>> clusters;  // distinct roots and multiplicities
  double residual = 0.0;  // largest relative residual of the exact polynomial at a root
};

namespace detail {

// Newton data for f_c^a(0) + sign f_c^b(0), by running the critical orbit and its
// c-derivative. Past |z| = 1e100 the z^2 term dominates and the Newton ratio halves per step.
inline NewtonStep critical_orbit_step(std::size_t a, std::size_t b, double sign, Complex c) {
  Complex z(0.0), dz(0.0), zb(0.0), dzb(0.0);
  for (std::size_t m = 1; m <= a; ++m) {
    dz = 2.0 * z * dz + 1.0;
    z = z * z + c;
    if (m == b) {
      zb = z;
      dzb = dz;
    }
    if (m < a && std::abs(z) > 1e100) return {z / dz * std::ldexp(1.0, -static_cast<int>(a - m)), 1.0};
  }
  const Complex v = z + sign * zb, dv = dz + sign * dzb;
  return {dv == Complex(0.0) ? Complex(0.0) : v / dv, std::abs(v) / (1.0 + std::abs(dv) * std::max(1.0, std::abs(c)))};
}

// Exterior Riemann map of the Mandelbrot set, first terms of its Laurent series.
inline Complex mandelbrot_psi(Complex w) { return w - 0.5 + 1.0 / (8.0 * w) - 1.0 / (4.0 * w * w) + 15.0 / (128.0 * w * w * w); }

// Roots of f_c^a(0) + sign f_c^b(0) (degree 2^(a-1)), started on an equipotential.
inline std::vector<Complex> critical_orbit_roots(std::size_t a, std::size_t b, double sign) {
  const std::size_t D = std::size_t{1} << (a - 1);
  std::vector<Complex> init(D);
  const double r = 1.0 + 2.0 / static_cast<double>(D + 8);
  for (std::size_t j = 0; j < D; ++j)
    init[j] = mandelbrot_psi(std::polar(r, 2.0 * std::numbers::pi * (static_cast<double>(j) + 0.5) / static_cast<double>(D)));
  RootOptions opt;
  opt.tol = 1e-6;
  opt.max_rounds = 4000;
  return aberth_refine(std::move(init), [&](const Complex& c) { return critical_orbit_step(a, b, sign, c); }, opt).roots;
}

}  // namespace detail

inline constexpr double kPercritClusterRadius = 1e-9;

// Roots of f_c^n(0) = f_c^k(0) with multiplicity. For k >= 1 the polynomial factors as
// p_{n-k}^2 prod_{j=1}^{k-1} (p_{n-j} + p_{k-j}) (from p_m - p_l = (p_{m-1} - p_{l-1})(p_{m-1} + p_{l-1})),
// and each factor is solved separately so the repeated roots come out as repeated entries.
// Every root is then checked against the exact integer polynomial.
inline PercritRoots percrit_roots(std::size_t n, std::size_t k, std::size_t capacity = kRootCapacity,
                                  double residual_tol = 1e-6) {
  if (n == 0 || k >= n) throw DomainError("percrit: need 0 <= k < n");
  if (n > 40 || (std::size_t{1} << (n - 1)) > capacity)
    throw ResourceError("percrit: degree 2^" + std::to_string(n - 1) + " exceeds root capacity " + std::to_string(capacity));
  PercritRoots out;
  out.n = n;
  out.k = k;
  out.degree = std::size_t{1} << (n - 1);
  struct Factor {
    std::size_t a, b;
    double sign;
    std::size_t times;
  };
  std::vector<Factor> factors;
  if (k == 0) {
    factors.push_back({n, 0, 0.0, 1});
  } else {
    factors.push_back({n - k, 0, 0.0, 2});
    for (std::size_t j = 1; j < k; ++j) factors.push_back({n - j, k - j, 1.0, 1});
  }
  for (const auto& f : factors) {
    const auto r = detail::critical_orbit_roots(f.a, f.b, f.sign);
    for (std::size_t t = 0; t < f.times; ++t) out.roots.insert(out.roots.end(), r.begin(), r.end());
  }
  sort_roots(out.roots);

  const PolyZ exact = percrit_poly(n, k);
  std::vector<double> res(out.roots.size());
  parallel_for(out.roots.size(), [&](std::size_t i) { res[i] = relative_residual(exact, out.roots[i]); });
  for (double r : res) out.residual = std::max(out.residual, r);
  if (!(out.residual <= residual_tol))
    throw NumericError("percrit: residual " + std::to_string(out.residual) + " at a root exceeds " +
                           std::to_string(residual_tol),
                       out.residual, out.residual);

  std::vector<char> used(out.roots.size(), 0);
  for (std::size_t i = 0; i < out.roots.size(); ++i) {
    if (used[i]) continue;
    std::size_t mult = 0;
    const double radius = kPercritClusterRadius * std::max(1.0, std::abs(out.roots[i]));
    for (std::size_t j = i; j < out.roots.size() && out.roots[j].real() - out.roots[i].real() <= radius; ++j)
      if (!used[j] && std::abs(out.roots[j] - out.roots[i]) <= radius) {
        used[j] = 1;
        ++mult;
      }
    out.clusters.emplace_back(out.roots[i], mult);
  }
  return out;
}

// "re,im,multiplicity" rows, one per distinct root.
inline std::string percrit_csv(const PercritRoots& r) {
  std::string s = "re,im,multiplicity\n";
  char buf[96];
  for (const auto& [c, m] : r.clusters) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%zu\n", c.real(), c.imag(), m);
    s += buf;
  }
  return s;
}

struct EquidistributionReport {
  std::size_t n = 0;
  std::size_t k = 0;
  std::size_t roots = 0;
  std::vector<Complex> probes;
  std::vector<double> mean_log;  // mean over roots of log|c - c0|
  std::vector<double> green;     // G_M(c0)
  std::vector<double> deviation;
  double max_deviation = 0.0;
};

// The harmonic measure of M has logarithmic potential G_M (M has capacity 1), so the
// mean of log|c - c0| over Percrit roots should approach G_M(c0) off M.
inline EquidistributionReport percrit_equidistribution_test(std::size_t n, std::size_t k,
                                                            const std::vector<Complex>& probes) {
  EquidistributionReport rep;
  rep.n = n;
  rep.k = k;
  for (const auto& c0 : probes) {
    const double g = mandelbrot_green(c0, 1e-12).value;
    if (!(g > 0.1)) throw DomainError("equidistribution probe must satisfy G_M > 0.1");
    rep.green.push_back(g);
  }
  const PercritRoots pr = percrit_roots(n, k);
  rep.roots = pr.roots.size();
  rep.probes = probes;
  for (std::size_t i = 0; i < probes.size(); ++i) {
    double s = 0.0;
    for (const auto& c : pr.roots) s += std::log(std::abs(c - probes[i]));
    const double mean = s / static_cast<double>(pr.roots.size());
    rep.mean_log.push_back(mean);
    rep.deviation.push_back(std::fabs(mean - rep.green[i]));
    rep.max_deviation = std::max(rep.max_deviation, rep.deviation.back());
  }
  return rep;
}

struct ParamHeight {
  HeightValue height;
  double archimedean = 0.0;
  std::vector<GreenValue> finite;  // one per prime dividing the denominator of c
};

// h_M(c) = G_M(c) + sum_p G_{M_p}(c) with G_{M_p}(c) = log+ |c|_p. The p-adic terms come from
// the p-adic Green function of f_c at c and are checked against v_p(denominator) exactly.
inline ParamHeight mandelbrot_param_height(const BigRat& c, double tol = 1e-10) {
  ParamHeight out;
  const GreenValue arch = mandelbrot_green(Complex(c.to_double()), tol);
  out.archimedean = arch.value;
  out.height.value = arch.value;
  out.height.error = arch.error;
  out.height.depth = arch.depth;
  out.height.method = HeightMethod::adelic_sum;
  if (c.den() != 1) {
    const RationalMapQ f = RationalMapQ::quadratic(c);
    for (const BigInt& p : prime_divisors(c.den())) {
      GreenValue g = green_padic_affine(f, p, ProjPointQ(c));
      const BigRat expected(BigInt(valuation(c.den(), p)));
      if (!(*g.log_p_multiple == expected))
        throw NumericError("param_height: p-adic Green value " + g.log_p_multiple->str() + " log " + p.get_str() +
                               " differs from log+|c|_p",
                           g.value, HUGE_VAL);
      out.height.value += g.value;
      out.height.error += g.error;
      out.finite.push_back(std::move(g));
    }
  }
  return out;
}

}  // namespace arithdyn
