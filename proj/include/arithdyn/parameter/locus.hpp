#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "arithdyn/parallel.hpp"
#include "arithdyn/parameter/families.hpp"
#include "arithdyn/parameter/quadratic.hpp"

namespace arithdyn {

// quadratic: pixel = c of z^2 + c. cubic_slice: pixel = a of P_{c,a} with c fixed.
// per1: pixel = s of f_s. julia: pixel = z in the dynamical plane of a fixed polynomial.
enum class LocusFamily { quadratic, cubic_slice, per1, julia };

inline const char* to_string(LocusFamily f) {
  switch (f) {
    case LocusFamily::quadratic: return "quadratic";
    case LocusFamily::cubic_slice: return "cubic-slice";
    case LocusFamily::per1: return "per1";
    case LocusFamily::julia: return "julia";
  }
  return "?";
}

struct Box {
  double re_min = -2.5;
  double re_max = 1.5;
  double im_min = -2.0;
  double im_max = 2.0;
};

struct LocusSpec {
  LocusFamily family = LocusFamily::quadratic;
  Box box;
  std::size_t width = 512;
  std::size_t height = 512;
  std::size_t max_depth = 500;
  Complex kappa{4.0};  // per1
  Complex fixed_c{0.0};  // cubic_slice
  PolyC julia_map = PolyC{Complex(-2.0), Complex(0.0), Complex(1.0)};
};

enum class PixelState : std::uint8_t { escaped, interior, undecided };

inline const char* to_string(PixelState s) {
  switch (s) {
    case PixelState::escaped: return "escaped";
    case PixelState::interior: return "interior";
    case PixelState::undecided: return "undecided";
  }
  return "?";
}

// Row-major, row 0 at im_max. `value` is the largest critical Green value of the pixel,
// `floor` the smallest. Interior means every tracked orbit stayed bounded and settled on
// an attracting cycle; bounded orbits that did not settle are undecided.
struct LocusGrid {
  LocusSpec spec;
  std::vector<double> value;
  std::vector<double> floor;
  std::vector<PixelState> state;
  std::vector<std::uint8_t> boundary;

  std::size_t index(std::size_t i, std::size_t j) const { return j * spec.width + i; }
  double pixel_width() const { return (spec.box.re_max - spec.box.re_min) / static_cast<double>(spec.width); }
  double pixel_height() const { return (spec.box.im_max - spec.box.im_min) / static_cast<double>(spec.height); }
  Complex pixel(std::size_t i, std::size_t j) const {
    return {spec.box.re_min + (static_cast<double>(i) + 0.5) * pixel_width(),
            spec.box.im_max - (static_cast<double>(j) + 0.5) * pixel_height()};
  }
  std::size_t count(PixelState s) const { return static_cast<std::size_t>(std::count(state.begin(), state.end(), s)); }
  double area(PixelState s) const { return static_cast<double>(count(s)) * pixel_width() * pixel_height(); }
  std::size_t boundary_count() const { return static_cast<std::size_t>(std::count(boundary.begin(), boundary.end(), 1)); }
};

namespace detail {

struct OrbitOutcome {
  bool escaped = false;
  bool attracted = false;
  double green = 0.0;
  double gradient = 0.0;  // |grad G| in the pixel variable, 0 when not tracked
};

// Follows z under f. With `track`, dz follows d/dt of the orbit for a pixel variable t
// entering as z_{n+1} = f(z_n) + t * dparam. Escaped orbits give
// G = d^-n (log|z_n| + log|a_d| / (d-1)), read off once |z_n| is far past the escape radius.
inline OrbitOutcome follow_orbit(const PolyC& f, const PolyC& df, Complex z, Complex dz, Complex dparam, bool track,
                                 std::size_t max_depth) {
  OrbitOutcome out;
  const double d = static_cast<double>(f.degree());
  const double radius = escape_radius(f);
  const double far = 1e10 * radius;
  const double log_lead = std::log(std::abs(f.leading())) / (d - 1.0);
  double scale = 1.0;
  for (std::size_t n = 0; n < max_depth; ++n) {
    const double a = std::abs(z);
    if (a > radius) {
      while (std::abs(z) <= far) {
        if (track) dz = df(z) * dz + dparam;
        z = f(z);
        scale /= d;
      }
      out.escaped = true;
      out.green = scale * (std::log(std::abs(z)) + log_lead);
      if (track) out.gradient = scale * std::abs(dz) / std::abs(z);
      return out;
    }
    if (track) dz = df(z) * dz + dparam;
    z = f(z);
    scale /= d;
  }
  // Still bounded: take the period p <= 64 of the closest return of the orbit tail, solve
  // f^p(w) = w by Newton from the tail, and accept an attracting cycle near the tail.
  const Complex w0 = z;
  std::size_t period = 0;
  double best = HUGE_VAL;
  for (std::size_t p = 1; p <= 64; ++p) {
    z = f(z);
    const double gap = std::abs(z - w0);
    if (gap < 0.999 * best) {
      best = gap;
      period = p;
    }
  }
  Complex w = w0;
  for (int it = 0; it < 40; ++it) {
    Complex v = w, lambda(1.0);
    for (std::size_t k = 0; k < period; ++k) {
      lambda *= df(v);
      v = f(v);
    }
    if (lambda == Complex(1.0)) break;
    const Complex step = (v - w) / (lambda - 1.0);
    w -= step;
    if (!std::isfinite(std::abs(w)) || std::abs(w - w0) > 0.1 * std::max(1.0, std::abs(w0))) break;
    if (std::abs(step) <= 1e-13 * std::max(1.0, std::abs(w))) {
      Complex m(1.0);
      Complex u = w;
      for (std::size_t k = 0; k < period; ++k) {
        m *= df(u);
        u = f(u);
      }
      out.attracted = std::abs(m) < 1.0;
      break;
    }
  }
  return out;
}

}  // namespace detail

inline LocusGrid locus_grid(const LocusSpec& spec, unsigned threads = 0) {
  const Box& b = spec.box;
  if (!(b.re_max > b.re_min) || !(b.im_max > b.im_min) || spec.width < 2 || spec.height < 2)
    throw DomainError("locus_grid: box must be nondegenerate and at least 2x2 pixels");
  if (spec.family == LocusFamily::julia && spec.julia_map.degree() < 2)
    throw DomainError("locus_grid: julia map must have degree at least 2");
  LocusGrid g;
  g.spec = spec;
  const std::size_t N = spec.width * spec.height;
  g.value.assign(N, 0.0);
  g.floor.assign(N, 0.0);
  g.state.assign(N, PixelState::undecided);
  g.boundary.assign(N, 0);
  std::vector<double> gradient(N, 0.0);
  const PolyC julia_df = spec.julia_map.derivative();

  parallel_for(
      spec.height,
      [&](std::size_t j) {
        for (std::size_t i = 0; i < spec.width; ++i) {
          const std::size_t idx = g.index(i, j);
          const Complex t = g.pixel(i, j);
          std::vector<detail::OrbitOutcome> orbits;
          switch (spec.family) {
            case LocusFamily::quadratic: {
              const PolyC f = quadratic_poly(t);
              orbits.push_back(detail::follow_orbit(f, f.derivative(), t, Complex(1.0), Complex(1.0), true, spec.max_depth));
              break;
            }
            case LocusFamily::julia:
              orbits.push_back(detail::follow_orbit(spec.julia_map, julia_df, t, Complex(1.0), Complex(0.0), true,
                                                    spec.max_depth));
              break;
            case LocusFamily::cubic_slice: {
              const PolyC f = cubic_poly({spec.fixed_c, t});
              const PolyC df = f.derivative();
              orbits.push_back(detail::follow_orbit(f, df, Complex(0.0), {}, {}, false, spec.max_depth));
              orbits.push_back(detail::follow_orbit(f, df, spec.fixed_c, {}, {}, false, spec.max_depth));
              break;
            }
            case LocusFamily::per1: {
              if (t == Complex(0.0)) continue;
              const PolyC f = per1_poly({t, spec.kappa});
              const PolyC df = f.derivative();
              orbits.push_back(detail::follow_orbit(f, df, t, {}, {}, false, spec.max_depth));
              orbits.push_back(detail::follow_orbit(f, df, 1.0 / t, {}, {}, false, spec.max_depth));
              break;
            }
          }
          bool escaped = false, attracted = true;
          double hi = 0.0, lo = HUGE_VAL, grad = 0.0;
          for (const auto& o : orbits) {
            escaped = escaped || o.escaped;
            attracted = attracted && (o.escaped || o.attracted);
            if (o.green >= hi) {
              hi = o.green;
              grad = o.gradient;
            }
            lo = std::min(lo, o.green);
          }
          g.value[idx] = hi;
          g.floor[idx] = lo;
          gradient[idx] = grad;
          g.state[idx] = escaped ? PixelState::escaped : (attracted ? PixelState::interior : PixelState::undecided);
        }
      },
      threads);

  // Boundary: undecided pixels, bounded pixels next to an escaped one, and escaped pixels
  // whose distance estimate sinh(G) / |grad G| (within a factor 2 of the true distance to
  // the bounded set) is below half the pixel diagonal.
  const double half_diag = 0.5 * std::hypot(g.pixel_width(), g.pixel_height());
  for (std::size_t j = 0; j < spec.height; ++j)
    for (std::size_t i = 0; i < spec.width; ++i) {
      const std::size_t idx = g.index(i, j);
      if (g.state[idx] == PixelState::undecided) {
        g.boundary[idx] = 1;
      } else if (g.state[idx] == PixelState::escaped) {
        if (gradient[idx] > 0 && std::sinh(g.value[idx]) / gradient[idx] < half_diag) g.boundary[idx] = 1;
      } else {
        const bool l = i > 0 && g.state[idx - 1] == PixelState::escaped;
        const bool r = i + 1 < spec.width && g.state[idx + 1] == PixelState::escaped;
        const bool u = j > 0 && g.state[idx - spec.width] == PixelState::escaped;
        const bool dn = j + 1 < spec.height && g.state[idx + spec.width] == PixelState::escaped;
        if (l || r || u || dn) g.boundary[idx] = 1;
      }
    }
  return g;
}

// Grid of a plain set: inside pixels are interior, the rest escaped with value 1; the
// boundary is the inside pixels with an outside 4-neighbour.
inline LocusGrid indicator_grid(const Box& box, std::size_t width, std::size_t height,
                                const std::function<bool(Complex)>& inside) {
  LocusGrid g;
  g.spec.box = box;
  g.spec.width = width;
  g.spec.height = height;
  const std::size_t N = width * height;
  g.value.assign(N, 1.0);
  g.floor.assign(N, 1.0);
  g.state.assign(N, PixelState::escaped);
  g.boundary.assign(N, 0);
  for (std::size_t j = 0; j < height; ++j)
    for (std::size_t i = 0; i < width; ++i)
      if (inside(g.pixel(i, j))) {
        g.state[g.index(i, j)] = PixelState::interior;
        g.value[g.index(i, j)] = g.floor[g.index(i, j)] = 0.0;
      }
  for (std::size_t j = 0; j < height; ++j)
    for (std::size_t i = 0; i < width; ++i) {
      const std::size_t idx = g.index(i, j);
      if (g.state[idx] != PixelState::interior) continue;
      const bool edge = (i > 0 && g.state[idx - 1] == PixelState::escaped) ||
                        (i + 1 < width && g.state[idx + 1] == PixelState::escaped) ||
                        (j > 0 && g.state[idx - width] == PixelState::escaped) ||
                        (j + 1 < height && g.state[idx + width] == PixelState::escaped);
      g.boundary[idx] = edge ? 1 : 0;
    }
  return g;
}

struct BoxDimension {
  double estimate = 0.0;
  std::vector<std::size_t> scales;  // box side in pixels
  std::vector<std::size_t> counts;  // boxes meeting a boundary pixel
  double residual = 0.0;            // rms of the log-log fit
};

struct LineFit {
  double slope = 0.0;
  double intercept = 0.0;
  double rms = 0.0;
};

inline LineFit linear_fit(const std::vector<double>& x, const std::vector<double>& y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    sxy += x[i] * y[i];
  }
  LineFit f;
  f.slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
  f.intercept = (sy - f.slope * sx) / n;
  double ss = 0;
  for (std::size_t i = 0; i < x.size(); ++i) ss += std::pow(y[i] - f.intercept - f.slope * x[i], 2);
  f.rms = std::sqrt(ss / n);
  return f;
}

inline const std::vector<std::size_t> kDefaultBoxScales{2, 4, 8, 16, 32, 64};

// Least-squares slope of log N(s) against log(1/s), N(s) the number of s x s pixel boxes
// that contain a boundary pixel.
inline BoxDimension boundary_box_dimension(const LocusGrid& g,
                                           const std::vector<std::size_t>& scales = kDefaultBoxScales) {
  if (scales.size() < 2) throw DomainError("box dimension needs at least two scales");
  if (g.boundary_count() < 64) throw DomainError("box dimension: fewer than 64 boundary pixels");
  BoxDimension out;
  std::vector<double> xs, ys;
  for (std::size_t s : scales) {
    if (s == 0 || s > std::min(g.spec.width, g.spec.height)) throw DomainError("box scale out of range");
    const std::size_t bw = (g.spec.width + s - 1) / s, bh = (g.spec.height + s - 1) / s;
    std::vector<std::uint8_t> hit(bw * bh, 0);
    for (std::size_t j = 0; j < g.spec.height; ++j)
      for (std::size_t i = 0; i < g.spec.width; ++i)
        if (g.boundary[g.index(i, j)]) hit[(j / s) * bw + i / s] = 1;
    const auto n = static_cast<std::size_t>(std::count(hit.begin(), hit.end(), 1));
    out.scales.push_back(s);
    out.counts.push_back(n);
    xs.push_back(-std::log(static_cast<double>(s)));
    ys.push_back(std::log(static_cast<double>(n)));
  }
  const auto fit = linear_fit(xs, ys);
  out.estimate = fit.slope;
  out.residual = fit.rms;
  return out;
}

// Binary PGM, 16-bit big-endian samples: min(G / g_max, 1) * 65535, bounded pixels 0.
inline std::string locus_pgm(const LocusGrid& g, double g_max = 4.0) {
  std::string s = "P5\n" + std::to_string(g.spec.width) + " " + std::to_string(g.spec.height) + "\n65535\n";
  s.reserve(s.size() + 2 * g.value.size());
  for (std::size_t k = 0; k < g.value.size(); ++k) {
    const double v = g.state[k] == PixelState::escaped ? std::clamp(g.value[k] / g_max, 0.0, 1.0) : 0.0;
    const auto q = static_cast<std::uint16_t>(std::lround(v * 65535.0));
    s.push_back(static_cast<char>(q >> 8));
    s.push_back(static_cast<char>(q & 0xff));
  }
  return s;
}

inline std::string locus_csv(const LocusGrid& g) {
  std::string s = "re,im,value,floor,state,boundary\n";
  char buf[160];
  for (std::size_t j = 0; j < g.spec.height; ++j)
    for (std::size_t i = 0; i < g.spec.width; ++i) {
      const std::size_t k = g.index(i, j);
      const Complex t = g.pixel(i, j);
      std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%s,%d\n", t.real(), t.imag(), g.value[k], g.floor[k],
                    to_string(g.state[k]), static_cast<int>(g.boundary[k]));
      s += buf;
    }
  return s;
}

}  // namespace arithdyn
