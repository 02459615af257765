#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>

#include "arithdyn/dynamics/rational_map.hpp"

namespace arithdyn {

// A Green function value with a certified error radius. `prime` is empty at the
// archimedean place; at a prime the value is exactly log_p_multiple * log p.
struct GreenValue {
  double value = 0.0;
  double error = 0.0;
  std::size_t depth = 0;
  std::optional<BigInt> prime;
  std::optional<BigRat> log_p_multiple;
};

inline constexpr std::size_t kGreenMaxDepth = 4096;

namespace detail {

inline double log_bound_spread(const LiftBounds& b) {
  return std::max(std::fabs(std::log(b.c1)), std::fabs(std::log(b.c2)));
}

// Telescoped sum for a sup-norm-normalised starting vector.
inline GreenValue green_unit(const RationalMapC& f, LiftC v, double tol, std::size_t max_depth) {
  const double d = static_cast<double>(f.degree());
  const double spread = log_bound_spread(f.bounds());
  GreenValue g;
  double sum = 0.0, abs_sum = 0.0, weight = 1.0;
  for (std::size_t n = 1; n <= max_depth; ++n) {
    const LiftC w = f(v);
    const double norm = w.sup_norm();
    weight /= d;
    const double term = weight * std::log(norm);
    sum += term;
    abs_sum += std::fabs(term);
    v = {w.x / norm, w.y / norm};
    const double tail = spread * weight / (d - 1.0);
    const double rounding = 8.0 * std::numeric_limits<double>::epsilon() * (abs_sum + static_cast<double>(n));
    g.value = sum;
    g.error = tail + rounding;
    g.depth = n;
    if (g.error <= tol) return g;
  }
  throw NumericError("green_arch: tolerance " + std::to_string(tol) + " not reached at depth " +
                         std::to_string(max_depth),
                     g.value, g.error);
}

}  // namespace detail

// G_F(v) = lim d^-n log ||F^n(v)|| for an arbitrary nonzero lift v.
inline GreenValue green_arch(const RationalMapC& f, const LiftC& v, double tol = 1e-12,
                             std::size_t max_depth = kGreenMaxDepth) {
  if (!(tol > 0)) throw DomainError("green_arch: tolerance must be positive");
  const double n = v.sup_norm();
  if (!(n > 0) || !std::isfinite(n)) throw DomainError("green_arch: lift must be a finite nonzero vector");
  GreenValue g = detail::green_unit(f, {v.x / n, v.y / n}, tol, max_depth);
  g.value += std::log(n);
  return g;
}

inline GreenValue green_arch(const RationalMapC& f, const ProjPointC& pt, double tol = 1e-12,
                             std::size_t max_depth = kGreenMaxDepth) {
  return detail::green_unit(f, pt.lift(), tol, max_depth);
}

// Integer lift (x, y); log ||(x, y)|| is taken exactly from the big integers.
inline GreenValue green_arch(const RationalMapC& f, const BigInt& x, const BigInt& y, double tol = 1e-12,
                             std::size_t max_depth = kGreenMaxDepth) {
  if (sgn(x) == 0 && sgn(y) == 0) throw DomainError("green_arch: zero vector");
  const BigInt m = std::max(abs(x), abs(y));
  GreenValue g = detail::green_unit(f, {Complex(ratio_to_double(x, m)), Complex(ratio_to_double(y, m))}, tol, max_depth);
  g.value += log_abs(m);
  return g;
}

// Escape radius for a_0 + ... + a_d z^d: beyond it |f(z)| >= 2|z| and the lower terms are
// at most half the leading one.
inline double escape_radius(const PolyC& f) {
  const std::size_t d = f.degree();
  const double lead = std::abs(f.leading());
  double s = 0.0;
  for (std::size_t i = 0; i < d; ++i) s += std::abs(f[i]);
  double r = std::max({1.0, (s + 2.0) / lead, 2.0 * s / lead});
  bool quadratic_family = d == 2 && f[1] == Complex(0.0) && f[2] == Complex(1.0);
  if (quadratic_family) r = std::max(r, std::sqrt(std::abs(f[0])) + 3.0);
  return r;
}

// G_f(z) = lim d^-n log+ |f^n(z)| for a polynomial of degree d >= 2 (leading coefficient
// arbitrary). Past the escape radius G(w) = log|w| + log|a_d|/(d-1) + O(|w|^-1), so the
// orbit is followed until that remainder is below tol. An orbit that stays below the
// radius for k steps gives 0 <= G(z) <= d^-k B_R.
inline GreenValue green_poly(const PolyC& f, Complex z, double tol = 1e-12, std::size_t max_depth = 1000000) {
  if (!(tol > 0)) throw DomainError("green_poly: tolerance must be positive");
  if (f.is_zero() || f.degree() < 2) throw DomainError("green_poly: degree must be at least 2");
  const std::size_t deg = f.degree();
  const double d = static_cast<double>(deg);
  const double lead = std::abs(f.leading());
  const double log_lead = std::log(lead) / (d - 1.0);
  double s = 0.0;
  for (std::size_t i = 0; i < deg; ++i) s += std::abs(f[i]);
  const double radius = escape_radius(f);
  const double bound_inside = std::max(0.0, std::log(radius) + log_lead + 2.0 / (2.0 * d - 1.0));
  GreenValue g;
  double scale = 1.0;  // d^-n
  for (std::size_t n = 0; n <= max_depth; ++n) {
    const double az = std::abs(z);
    if (az >= radius) {
      // Escaped: refine until the remainder is small or the next step would overflow.
      double best_val = 0.0, best_err = HUGE_VAL;
      for (;;) {
        const double a = std::abs(z);
        const double eta = s / (lead * a);
        best_val = scale * (std::log(a) + log_lead);
        best_err = scale * 4.0 * eta / (2.0 * d - 1.0) + 8.0 * std::numeric_limits<double>::epsilon() * best_val;
        g.depth = n;
        if (best_err <= tol / 16.0 || d * std::log(a) + std::log(lead) + 1.0 > 600.0) break;
        z = f(z);
        scale /= d;
        ++n;
      }
      g.value = best_val;
      g.error = best_err;
      return g;
    }
    if (scale * bound_inside <= tol) {
      g.value = 0.0;
      g.error = scale * bound_inside;
      g.depth = n;
      return g;
    }
    if (n == max_depth) break;
    z = f(z);
    scale /= d;
  }
  throw UndecidedError("green_poly: orbit neither escaped nor stayed bounded long enough within depth " +
                           std::to_string(max_depth),
                       0.0, scale * bound_inside);
}

namespace detail {

inline void require_prime(const BigInt& p, const char* who) {
  if (p < 2 || !is_probable_prime(p)) throw DomainError(std::string(who) + ": " + p.get_str() + " is not prime");
}

inline long valuation_mod(const BigInt& a, const BigInt& p, long cap) {
  if (sgn(a) == 0) return cap;
  return std::min(cap, valuation(a, p));
}

}  // namespace detail

// p-adic Green function of the integer lift at a primitive integer vector:
// -log p * sum_{k < depth} e_k / d^(k+1), e_k the p-valuation of the gcd extracted at step k.
// Each e_k <= v_p(Res), so the iteration runs modulo p^(1 + depth v_p(Res)) and loses
// e_k digits of p-adic precision per step; the tail is at most v_p(Res) log p / ((d-1) d^depth).
inline GreenValue green_padic(const RationalMapQ& f, const BigInt& p, const ProjPointQ& x, std::size_t depth = 64) {
  detail::require_prime(p, "green_padic");
  if (depth == 0) throw DomainError("green_padic: depth must be at least 1");
  GreenValue g;
  g.prime = p;
  const long vres = valuation(f.resultant(), p);
  const double logp = log_abs(p);
  if (vres == 0) {
    g.depth = 1;
    g.log_p_multiple = BigRat(0);
    return g;
  }
  long prec = 1 + static_cast<long>(depth) * vres;
  BigInt modulus = pow(p, static_cast<unsigned long>(prec));
  auto reduce = [&](BigInt a) {
    mpz_mod(a.get_mpz_t(), a.get_mpz_t(), modulus.get_mpz_t());
    return a;
  };
  BigInt vx = reduce(x.x()), vy = reduce(x.y());
  const BigInt d = BigInt(static_cast<unsigned long>(f.degree()));
  BigInt weight_den = 1;
  BigRat sum(0);
  for (std::size_t k = 0; k < depth; ++k) {
    const BigInt a = reduce(f.p()(vx, vy)), b = reduce(f.q()(vx, vy));
    const long e = std::min(detail::valuation_mod(a, p, prec), detail::valuation_mod(b, p, prec));
    if (e >= prec) throw NumericError("green_padic: p-adic precision exhausted", 0.0, HUGE_VAL);
    weight_den *= d;
    if (e > 0) {
      sum += BigRat(BigInt(e), weight_den);
      const BigInt pe = pow(p, static_cast<unsigned long>(e));
      prec -= e;
      modulus = pow(p, static_cast<unsigned long>(prec));
      vx = reduce(BigInt(a / pe));
      vy = reduce(BigInt(b / pe));
    } else {
      vx = a;
      vy = b;
    }
  }
  g.log_p_multiple = -sum;
  g.value = -sum.to_double() * logp;
  g.error = static_cast<double>(vres) * logp / ((static_cast<double>(f.degree()) - 1.0) *
                                                std::pow(static_cast<double>(f.degree()), static_cast<double>(depth)));
  g.depth = depth;
  return g;
}

// Green function of a polynomial map at a finite rational point, in the affine
// normalisation G(z) = lim d^-n log+ |f^n(z)|_p. The map's lift is (sum P_i x^i y^(d-i), q y^d);
// dividing it by q and dehomogenising at y gives
// G(x/y) = G_F(x, y) - log|y|_p - (1 - d^-n)/(d-1) log|q|_p at truncation depth n.
inline GreenValue green_padic_affine(const RationalMapQ& f, const BigInt& p, const ProjPointQ& x,
                                     std::size_t depth = 64) {
  if (!f.is_polynomial()) throw DomainError("green_padic_affine: map is not a polynomial");
  if (x.is_infinity()) throw DomainError("green_padic_affine: point at infinity");
  detail::require_prime(p, "green_padic_affine");
  const long vq = valuation(f.q()[0], p);
  const long vy = valuation(x.y(), p);
  GreenValue g;
  if (valuation(f.resultant(), p) == 0) {
    g.prime = p;
    g.log_p_multiple = BigRat(0);
    g.depth = 1;
  } else {
    g = green_padic(f, p, x, depth);
  }
  const BigInt d = BigInt(static_cast<unsigned long>(f.degree()));
  const BigInt dn = pow(d, static_cast<unsigned long>(g.depth));
  const BigRat lift_shift = BigRat(BigInt(vq)) * BigRat(BigInt(dn - 1), BigInt(dn * (d - 1)));
  const BigRat m = *g.log_p_multiple + BigRat(BigInt(vy)) + lift_shift;
  const double logp = log_abs(p);
  g.log_p_multiple = m;
  g.value = m.to_double() * logp;
  g.error += std::fabs(static_cast<double>(vq)) * logp /
             ((static_cast<double>(f.degree()) - 1.0) *
              std::pow(static_cast<double>(f.degree()), static_cast<double>(g.depth)));
  return g;
}

}  // namespace arithdyn
