#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "arithdyn/dynamics/rational_map.hpp"
#include "arithdyn/numeric/roots.hpp"
#include "arithdyn/random.hpp"

namespace arithdyn {

// ||lambda| - 1| below this counts as neutral.
inline constexpr double kNeutralThreshold = 1e-8;

// Largest number of fixed points of f^n we attempt to isolate at once.
inline constexpr std::size_t kRootCapacity = 4097;

enum class Stability { attracting, neutral, repelling };

inline const char* to_string(Stability s) {
  switch (s) {
    case Stability::attracting: return "attracting";
    case Stability::neutral: return "neutral";
    case Stability::repelling: return "repelling";
  }
  return "?";
}

inline Stability classify_multiplier(Complex m) {
  const double a = std::abs(m);
  if (std::fabs(a - 1.0) < kNeutralThreshold) return Stability::neutral;
  return a < 1.0 ? Stability::attracting : Stability::repelling;
}

struct PeriodicPoint {
  ProjPointC location;
  std::size_t period = 1;
  Complex multiplier;
  Stability stability = Stability::neutral;
};

namespace detail {

// Forms are solved in the chart (x, y) = U (u, 1) with U a fixed unitary rotation, so a
// root at infinity becomes an ordinary finite root and the degree never drops.
inline constexpr Complex kChartShift{0.5477225575, 0.2367006302};

inline LiftC chart_point(Complex u) {
  const double s = 1.0 / std::sqrt(1.0 + std::norm(kChartShift));
  return {(u + kChartShift) * s, (1.0 - std::conj(kChartShift) * u) * s};
}

inline LiftC chart_tangent() {
  const double s = 1.0 / std::sqrt(1.0 + std::norm(kChartShift));
  return {Complex(s), -std::conj(kChartShift) * s};
}

// Inverse of chart_point on P^1.
inline Complex chart_coordinate(const LiftC& v) { return (v.x - kChartShift * v.y) / (std::conj(kChartShift) * v.x + v.y); }

template <class Eval>
std::vector<ProjPointC> projective_roots(std::size_t degree, Eval&& eval, double tol) {
  RootOptions opt;
  opt.tol = tol;
  const RootSet rs = aberth_roots(degree, 1.0, std::forward<Eval>(eval), opt);
  std::vector<ProjPointC> out;
  out.reserve(rs.roots.size());
  for (const Complex& u : rs.roots) out.emplace_back(chart_point(u));
  return out;
}

template <class Eval>
std::vector<ProjPointC> projective_roots_from(std::vector<Complex> init, Eval&& eval, double tol) {
  RootOptions opt;
  opt.tol = tol;
  const RootSet rs = aberth_refine(std::move(init), std::forward<Eval>(eval), opt);
  std::vector<ProjPointC> out;
  out.reserve(rs.roots.size());
  for (const Complex& u : rs.roots) out.emplace_back(chart_point(u));
  return out;
}

// Order by affine coordinate (real, imag), infinity last.
inline void sort_points(std::vector<ProjPointC>& pts) {
  std::stable_sort(pts.begin(), pts.end(), [](const ProjPointC& a, const ProjPointC& b) {
    if (a.is_infinity() != b.is_infinity()) return b.is_infinity();
    if (a.is_infinity()) return false;
    const Complex za = a.affine(), zb = b.affine();
    return za.real() < zb.real() || (za.real() == zb.real() && za.imag() < zb.imag());
  });
}

}  // namespace detail

// All roots of a binary form, with multiplicity, as points of P^1.
inline std::vector<ProjPointC> form_roots(const HomPolyC& h, double tol = 1e-10) {
  if (h.is_zero()) throw DomainError("form_roots: zero form");
  const std::size_t D = h.degree();
  if (D == 0) return {};
  const HomPolyC hx = h.dx(), hy = h.dy();
  double l1 = 0.0;
  for (const auto& c : h.coeffs()) l1 += std::abs(c);
  const LiftC t = detail::chart_tangent();
  auto pts = detail::projective_roots(
      D,
      [&](const Complex& u) {
        const LiftC v = detail::chart_point(u);
        const Complex val = h(v.x, v.y);
        const Complex der = hx(v.x, v.y) * t.x + hy(v.x, v.y) * t.y;
        const double scale = l1 * std::pow(v.sup_norm(), static_cast<double>(D));
        return NewtonStep{der == Complex(0.0) ? Complex(0.0) : val / der, std::abs(val) / scale};
      },
      tol);
  detail::sort_points(pts);
  return pts;
}

// Roots of the Wronskian P_x Q_y - P_y Q_x: the 2d - 2 critical points with multiplicity.
inline std::vector<ProjPointC> critical_points(const RationalMapC& f, double tol = 1e-10) {
  return form_roots(f.wronskian(), tol);
}

// The d preimages of y under f, with multiplicity: roots of b P - a Q for y = [a:b].
inline std::vector<ProjPointC> preimages(const RationalMapC& f, const ProjPointC& y, double tol = 1e-10) {
  return form_roots(y.y() * f.p() - y.x() * f.q(), tol);
}

// Derivative of f at `from` (a point in its sup-norm chart) measured in the chart of
// the point `to_chart_of`. Uses f'(z) = det DF(v) den_s(v)^2 / (d den_t(F v)^2).
inline Complex chart_derivative(const RationalMapC& f, const ProjPointC& from, const ProjPointC& to_chart_of) {
  const LiftC v = from.lift();
  const auto j = f.jacobian(v);
  const Complex det = j[0] * j[3] - j[1] * j[2];
  const LiftC image = f(v);
  const bool src_finite = from.in_finite_chart();
  const bool dst_finite = to_chart_of.in_finite_chart();
  const Complex den_t = dst_finite ? image.y : image.x;
  const Complex deriv = det / (static_cast<double>(f.degree()) * den_t * den_t);
  return src_finite == dst_finite ? deriv : -deriv;
}

// Multiplier (f^n)'(p) in the chart of p, chaining one-step chart derivatives along the
// orbit. The result is independent of the chart choices along the way.
inline Complex cycle_multiplier(const RationalMapC& f, const ProjPointC& p, std::size_t n) {
  Complex m(1.0);
  ProjPointC cur = p;
  for (std::size_t k = 0; k < n; ++k) {
    const ProjPointC next = (k + 1 == n) ? p : f.apply(cur);
    m *= chart_derivative(f, cur, next);
    cur = (k + 1 == n) ? p : next;
  }
  return m;
}

// All fixed points of f^n, counted with multiplicity (d^n + 1 of them), as roots of
// x Y_n - y X_n with (X_n, Y_n) = F^n(x, y). F^n is never expanded: the evaluator runs
// the lift and its tangent forward, rescaling both by the same factor each step.
inline std::vector<PeriodicPoint> periodic_points(const RationalMapC& f, std::size_t n, double tol = 1e-8,
                                                  std::size_t capacity = kRootCapacity) {
  if (n == 0) throw DomainError("periodic_points: period must be at least 1");
  double count = std::pow(static_cast<double>(f.degree()), static_cast<double>(n)) + 1.0;
  if (count > static_cast<double>(capacity))
    throw ResourceError("periodic_points: d^n + 1 = " + std::to_string(static_cast<long long>(count)) +
                        " exceeds root capacity " + std::to_string(capacity));
  const std::size_t D = static_cast<std::size_t>(count);
  const LiftC t0 = detail::chart_tangent();
  auto eval = [&](const Complex& u) {
    const LiftC v0 = detail::chart_point(u);
    LiftC v = v0, t = t0;
    for (std::size_t k = 0; k < n; ++k) {
      const auto j = f.jacobian(v);
      const LiftC nv = f(v);
      LiftC nt{j[0] * t.x + j[1] * t.y, j[2] * t.x + j[3] * t.y};
      const double s = nv.sup_norm();
      v = {nv.x / s, nv.y / s};
      t = {nt.x / s, nt.y / s};
    }
    const Complex h = v0.x * v.y - v0.y * v.x;
    const Complex dh = t0.x * v.y + v0.x * t.y - t0.y * v.x - v0.y * t.x;
    return NewtonStep{dh == Complex(0.0) ? Complex(0.0) : h / dh, std::abs(h) / v0.sup_norm()};
  };
  // Start from the n-th preimages of a generic point: they accumulate on the Julia set,
  // where all but the few non-repelling periodic points live. From a plain circle the
  // iteration crawls, because f^n flattens everything outside the Julia set.
  std::vector<ProjPointC> level{ProjPointC::finite(Complex(0.4142135, 0.2718281))};
  for (std::size_t k = 0; k < n; ++k) {
    std::vector<ProjPointC> next;
    next.reserve(level.size() * f.degree());
    for (const auto& y : level)
      for (const auto& x : preimages(f, y)) next.push_back(x);
    level = std::move(next);
  }
  CounterRng rng(0x9e7d);
  std::vector<Complex> init;
  init.reserve(D);
  for (const auto& x : level) {
    const Complex u = detail::chart_coordinate(x.lift());
    init.push_back(u + 1e-6 * std::max(1.0, std::abs(u)) * std::polar(1.0, 6.283185307179586 * rng.uniform()));
  }
  init.push_back(Complex(-3.1, 2.3));
  // Root residuals are chordal-scale quantities; the fixed-point check below uses tol.
  auto locs = detail::projective_roots_from(std::move(init), eval, 1e-9);
  detail::sort_points(locs);
  std::vector<PeriodicPoint> out;
  out.reserve(D);
  for (const auto& p : locs) {
    ProjPointC img = p;
    for (std::size_t k = 0; k < n; ++k) img = f.apply(img);
    if (chordal_distance(img, p) > tol)
      throw NumericError("periodic_points: f^n(p) misses p by " + std::to_string(chordal_distance(img, p)),
                         chordal_distance(img, p), tol);
    PeriodicPoint pp;
    pp.location = p;
    pp.period = n;
    pp.multiplier = cycle_multiplier(f, p, n);
    pp.stability = classify_multiplier(pp.multiplier);
    out.push_back(pp);
  }
  return out;
}

}  // namespace arithdyn
