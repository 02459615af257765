#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <functional>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

#include "arithdyn/equilibrium/cloud.hpp"

namespace arithdyn {

// Star discrepancy of samples in [0, 1) against the uniform law (exact, via sorting).
inline double star_discrepancy(std::vector<double> x) {
  if (x.empty()) throw DomainError("star_discrepancy: no samples");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double k = static_cast<double>(i);
    d = std::max({d, (k + 1.0) / n - x[i], x[i] - k / n});
  }
  return d;
}

// Kolmogorov-Smirnov distance sup |F_n - F| for a continuous CDF F.
inline double ks_distance(std::vector<double> x, const std::function<double(double)>& cdf) {
  if (x.empty()) throw DomainError("ks_distance: no samples");
  std::sort(x.begin(), x.end());
  const double n = static_cast<double>(x.size());
  double d = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double f = cdf(x[i]);
    d = std::max({d, (static_cast<double>(i) + 1.0) / n - f, f - static_cast<double>(i) / n});
  }
  return d;
}

// Distribution function of the equilibrium measure of z^2 - 2, dx / (pi sqrt(4 - x^2)) on [-2, 2].
inline double arcsine_cdf(double x) {
  if (x <= -2.0) return 0.0;
  if (x >= 2.0) return 1.0;
  return 0.5 + std::asin(x / 2.0) / std::numbers::pi;
}

// Angles arg(z) / 2 pi in [0, 1).
inline std::vector<double> angle_fractions(const PointCloud& c) {
  std::vector<double> out;
  out.reserve(c.size());
  for (const auto& z : c.points) {
    double t = std::arg(z) / (2.0 * std::numbers::pi);
    if (t < 0) t += 1.0;
    if (t >= 1.0) t -= 1.0;
    out.push_back(t);
  }
  return out;
}

// Quasi-uniform points on P^1 (Fibonacci lattice on the sphere, then stereographic).
inline std::vector<ProjPointC> sphere_probes(std::size_t count) {
  std::vector<ProjPointC> out;
  out.reserve(count);
  const double golden = std::numbers::pi * (3.0 - std::sqrt(5.0));
  for (std::size_t i = 0; i < count; ++i) {
    const double zc = 1.0 - (2.0 * static_cast<double>(i) + 1.0) / static_cast<double>(count);
    const double r = std::sqrt(std::max(0.0, 1.0 - zc * zc));
    const double phi = golden * static_cast<double>(i);
    const Complex xy = std::polar(r, phi);
    // (X, Y, Z) -> [X + iY : 1 - Z], or [1 + Z : X - iY] near the north pole.
    out.push_back(zc < 0 ? ProjPointC(xy, Complex(1.0 - zc)) : ProjPointC(Complex(1.0 + zc), std::conj(xy)));
  }
  return out;
}

// Largest chordal distance (sphere of diameter 1) from a probe to its nearest atom.
inline double covering_radius(const PointCloud& c, std::size_t probes = 4000) {
  std::vector<ProjPointC> atoms;
  atoms.reserve(c.size());
  for (const auto& z : c.points) atoms.push_back(to_point(z));
  double worst = 0.0;
  for (const auto& p : sphere_probes(probes)) {
    double best = HUGE_VAL;
    for (const auto& a : atoms) best = std::min(best, chordal_distance(p, a));
    worst = std::max(worst, best);
  }
  return worst;
}

// "re,im,weight" lines, full round-trip precision; infinity as "inf,0".
inline std::string cloud_csv(const PointCloud& c) {
  std::ostringstream os;
  os.precision(17);
  os << "re,im,weight\n";
  for (std::size_t i = 0; i < c.size(); ++i) {
    if (is_infinite(c.points[i]))
      os << "inf,0";
    else
      os << c.points[i].real() << ',' << c.points[i].imag();
    os << ',' << c.weights[i] << '\n';
  }
  return os.str();
}

// Little-endian f64 triples (re, im, weight); infinity as (+inf, 0).
inline std::string cloud_binary(const PointCloud& c) {
  std::string out;
  out.reserve(24 * c.size());
  auto put = [&](double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((bits >> (8 * b)) & 0xff));
  };
  for (std::size_t i = 0; i < c.size(); ++i) {
    const bool inf = is_infinite(c.points[i]);
    put(inf ? kInfinity : c.points[i].real());
    put(inf ? 0.0 : c.points[i].imag());
    put(c.weights[i]);
  }
  return out;
}

}  // namespace arithdyn
