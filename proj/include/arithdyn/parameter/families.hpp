#pragma once

#include <algorithm>
#include <complex>

#include "arithdyn/green/green.hpp"

namespace arithdyn {

// P_{c,a}(z) = z^3/3 - c z^2/2 + a^3: critical points 0 and c, P(0) = a^3.
struct CubicParam {
  Complex c;
  Complex a;
};

inline PolyC cubic_poly(const CubicParam& q) {
  return PolyC{q.a * q.a * q.a, Complex(0.0), -0.5 * q.c, Complex(1.0 / 3.0)};
}

struct CubicGreens {
  GreenValue at_zero;  // G_P(0)
  GreenValue at_c;     // G_P(c)
  double value = 0.0;  // G(c, a) = max of the two
  double error = 0.0;
};

inline CubicGreens cubic_green(const CubicParam& q, double tol = 1e-10, std::size_t max_depth = 1000000) {
  const PolyC p = cubic_poly(q);
  CubicGreens g;
  g.at_zero = green_poly(p, Complex(0.0), tol, max_depth);
  g.at_c = green_poly(p, q.c, tol, max_depth);
  g.value = std::max(g.at_zero.value, g.at_c.value);
  g.error = std::max(g.at_zero.error, g.at_c.error);
  return g;
}

// f_s(z) = kappa (z - (s + 1/s) z^2 / 2 + z^3 / 3): fixed point 0 of multiplier kappa,
// critical points s and 1/s.
struct Per1Param {
  Complex s;
  Complex kappa;
};

inline PolyC per1_poly(const Per1Param& q) {
  if (q.s == Complex(0.0) || q.kappa == Complex(0.0)) throw DomainError("per1: s and kappa must be nonzero");
  return PolyC{Complex(0.0), q.kappa, -0.5 * q.kappa * (q.s + 1.0 / q.s), q.kappa / 3.0};
}

struct Per1Greens {
  GreenValue plus;   // G_{f_s}(s)
  GreenValue minus;  // G_{f_s}(1/s), computed as G+(1/s)
};

namespace detail {

inline GreenValue per1_plus(const Per1Param& q, double tol, std::size_t max_depth) {
  return green_poly(per1_poly(q), q.s, tol, max_depth);
}

}  // namespace detail

// G-(s) is evaluated literally as G+(1/s), so per1_greens({s, k}).minus and
// per1_greens({1/s, k}).plus run the same computation on the same bits.
inline Per1Greens per1_greens(const Per1Param& q, double tol = 1e-10, std::size_t max_depth = 1000000) {
  if (q.s == Complex(0.0)) throw DomainError("per1: s must be nonzero");
  Per1Greens g;
  g.plus = detail::per1_plus(q, tol, max_depth);
  g.minus = detail::per1_plus({1.0 / q.s, q.kappa}, tol, max_depth);
  return g;
}

}  // namespace arithdyn
