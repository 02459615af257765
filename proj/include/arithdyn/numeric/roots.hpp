#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numbers>
#include <vector>

#include "arithdyn/error.hpp"
#include "arithdyn/numeric/poly.hpp"
#include "arithdyn/random.hpp"

namespace arithdyn {

// One evaluation of the target polynomial at z: the Newton correction p(z)/p'(z)
// and a scale-free residual |p(z)| / sum_i |a_i| |z|^i (or the evaluator's analogue).
struct NewtonStep {
  Complex ratio;
  double residual;
};

struct RootOptions {
  double tol = 1e-10;           // accepted relative residual
  int max_rounds = 2000;        // Aberth sweeps before giving up
  std::uint64_t seed = 0xab3e7;  // perturbation of the initial circle
};

struct RootSet {
  std::vector<Complex> roots;  // sorted by (real, imag)
  double residual = 0.0;       // max relative residual over roots
  int rounds = 0;
};

inline void sort_roots(std::vector<Complex>& roots) {
  std::sort(roots.begin(), roots.end(), [](const Complex& a, const Complex& b) {
    return a.real() < b.real() || (a.real() == b.real() && a.imag() < b.imag());
  });
}

// Simultaneous Aberth-Ehrlich iteration from the given starting points, one per root
// of a polynomial known only through `eval(z) -> NewtonStep`.
template <class Eval>
RootSet aberth_refine(std::vector<Complex> z, Eval&& eval, const RootOptions& opt = {}) {
  RootSet out;
  const std::size_t n = z.size();
  if (n == 0) return out;
  std::vector<char> done(n, 0);
  std::vector<double> resid(n, HUGE_VAL);
  std::vector<double> last_step(n, HUGE_VAL);
  const double step_eps = 8.0 * std::numeric_limits<double>::epsilon();
  const double resid_eps = 16.0 * std::numeric_limits<double>::epsilon();
  std::size_t remaining = n;
  int round = 0;
  for (; round < opt.max_rounds && remaining > 0; ++round) {
    for (std::size_t i = 0; i < n; ++i) {
      if (done[i]) continue;
      NewtonStep st = eval(z[i]);
      resid[i] = st.residual;
      if (st.ratio == Complex(0.0) || st.residual <= resid_eps) {
        done[i] = 1;
        --remaining;
        continue;
      }
      if (!std::isfinite(st.ratio.real()) || !std::isfinite(st.ratio.imag()))
        st.ratio = z[i] / static_cast<double>(n);
      Complex s(0.0);
      for (std::size_t j = 0; j < n; ++j) {
        if (j == i) continue;
        const Complex diff = z[i] - z[j];
        if (diff == Complex(0.0)) continue;
        s += std::conj(diff) / std::norm(diff);
      }
      const Complex denom = 1.0 - st.ratio * s;
      const Complex w = (std::abs(denom) > 1e-300) ? st.ratio / denom : st.ratio;
      z[i] -= w;
      const double step = std::abs(w);
      const double scale = std::max(std::abs(z[i]), 1e-300);
      // Converged: the step reached rounding level, or it is already small and has
      // stopped shrinking while the residual is already acceptable (the noise floor of a
      // multiple root).
      if (step <= step_eps * scale ||
          (step <= 1e-7 * std::max(scale, 1.0) && step >= 0.5 * last_step[i] && st.residual <= opt.tol)) {
        done[i] = 1;
        --remaining;
        resid[i] = eval(z[i]).residual;
      }
      last_step[i] = step;
    }
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i) worst = std::max(worst, done[i] ? resid[i] : eval(z[i]).residual);
  out.roots = std::move(z);
  out.residual = worst;
  out.rounds = round;
  if (!(worst <= opt.tol))
    throw NumericError("aberth: residual " + std::to_string(worst) + " above tolerance after " +
                           std::to_string(round) + " rounds",
                       worst, worst);
  sort_roots(out.roots);
  return out;
}

// Aberth iteration started on a randomly rotated, slightly perturbed circle.
template <class Eval>
RootSet aberth_roots(std::size_t degree, double radius, Eval&& eval, const RootOptions& opt = {}) {
  CounterRng rng(opt.seed);
  const double phase = 2.0 * std::numbers::pi * rng.uniform();
  std::vector<Complex> z(degree);
  for (std::size_t k = 0; k < degree; ++k) {
    const double theta =
        phase + 2.0 * std::numbers::pi * (static_cast<double>(k) + 0.25 * rng.uniform()) / static_cast<double>(degree);
    z[k] = std::polar(radius * (1.0 + 0.01 * (rng.uniform() - 0.5)), theta);
  }
  return aberth_refine(std::move(z), std::forward<Eval>(eval), opt);
}

// Newton step for an explicit coefficient vector. For |z| > 1 the reversed
// polynomial is used so nothing overflows at high degree.
inline NewtonStep horner_step(const PolyC& p, const Complex& z) {
  const auto& a = p.coeffs();
  const std::size_t n = p.degree();
  if (std::abs(z) <= 1.0) {
    Complex v = a[n], dv(0.0);
    double scale = std::abs(a[n]);
    const double az = std::abs(z);
    for (std::size_t k = n; k-- > 0;) {
      dv = dv * z + v;
      v = v * z + a[k];
      scale = scale * az + std::abs(a[k]);
    }
    return {dv == Complex(0.0) ? Complex(0.0) : v / dv, scale > 0 ? std::abs(v) / scale : 0.0};
  }
  const Complex w = 1.0 / z;
  Complex q = a[0], dq(0.0);
  double scale = std::abs(a[0]);
  const double aw = std::abs(w);
  for (std::size_t k = 1; k <= n; ++k) {
    dq = dq * w + q;
    q = q * w + a[k];
    scale = scale * aw + std::abs(a[k]);
  }
  const Complex denom = static_cast<double>(n) * q - w * dq;
  return {denom == Complex(0.0) ? Complex(0.0) : z * q / denom, scale > 0 ? std::abs(q) / scale : 0.0};
}

// Fujiwara's bound on the moduli of the roots.
inline double root_bound(const PolyC& p) {
  const auto& a = p.coeffs();
  const std::size_t n = p.degree();
  const double lead = std::abs(a[n]);
  double b = 0.0;
  for (std::size_t k = 1; k <= n; ++k) {
    double t = std::pow(std::abs(a[n - k]) / lead, 1.0 / static_cast<double>(k));
    if (k == n) t = std::pow(std::abs(a[0]) / (2.0 * lead), 1.0 / static_cast<double>(n));
    b = std::max(b, t);
  }
  return 2.0 * b;
}

// All complex roots of p, with multiplicity. Deterministic for a fixed seed.
inline RootSet poly_roots(const PolyC& p, double tol = 1e-10, RootOptions opt = {}) {
  if (p.is_zero() || p.degree() < 1) throw DomainError("poly_roots: degree must be at least 1");
  opt.tol = tol;
  // Zero roots are split off exactly; they would otherwise stall on the circle start.
  std::size_t zeros = 0;
  while (p.coeffs()[zeros] == Complex(0.0)) ++zeros;
  std::vector<Complex> rest(p.coeffs().begin() + static_cast<std::ptrdiff_t>(zeros), p.coeffs().end());
  const PolyC q(std::move(rest));
  RootSet rs;
  if (q.degree() > 0) {
    // Geometric mean of the root moduli; the Fujiwara bound when that degenerates.
    double radius = std::pow(std::abs(q.coeffs()[0]) / std::abs(q.leading()), 1.0 / q.degree());
    if (!(radius > 0) || !std::isfinite(radius)) radius = root_bound(q);
    rs = aberth_roots(q.degree(), radius, [&](const Complex& z) { return horner_step(q, z); }, opt);
  }
  rs.roots.insert(rs.roots.end(), zeros, Complex(0.0));
  sort_roots(rs.roots);
  return rs;
}

}  // namespace arithdyn
