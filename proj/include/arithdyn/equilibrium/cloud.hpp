#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "arithdyn/dynamics/periodic.hpp"
#include "arithdyn/parallel.hpp"
#include "arithdyn/random.hpp"

namespace arithdyn {

enum class Provenance { backward, periodic, parameter };

inline const char* to_string(Provenance p) {
  switch (p) {
    case Provenance::backward: return "backward";
    case Provenance::periodic: return "periodic";
    case Provenance::parameter: return "parameter";
  }
  return "?";
}

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

// Affine coordinate of a point; infinity is stored as (inf, 0).
inline Complex chart_value(const ProjPointC& p) { return p.is_infinity() ? Complex(kInfinity, 0.0) : p.affine(); }

inline bool is_infinite(const Complex& z) { return std::isinf(z.real()) || std::isinf(z.imag()); }

inline ProjPointC to_point(const Complex& z) { return is_infinite(z) ? ProjPointC::infinity() : ProjPointC::finite(z); }

// Atoms of a discrete probability measure on P^1.
struct PointCloud {
  std::vector<Complex> points;
  std::vector<double> weights;
  Provenance provenance = Provenance::backward;

  std::size_t size() const noexcept { return points.size(); }

  static PointCloud uniform(std::vector<Complex> pts, Provenance prov) {
    if (pts.empty()) throw DomainError("point cloud must have at least one atom");
    PointCloud c;
    c.weights.assign(pts.size(), 1.0 / static_cast<double>(pts.size()));
    c.points = std::move(pts);
    c.provenance = prov;
    return c;
  }
};

inline constexpr std::size_t kMaxTreeSize = std::size_t{1} << 24;

// Atoms of d^-n (f^n)^* delta_{z0}: the full preimage tree when width is 0 or at least
// d^depth, otherwise `width` branches, each choosing uniformly among the d preimages at
// every step with its own random stream.
inline PointCloud backward_cloud(const RationalMapC& f, Complex z0, std::size_t depth, std::size_t width,
                                 std::uint64_t seed, unsigned threads = 0) {
  const ProjPointC start = to_point(z0);
  const auto first = preimages(f, start);
  bool stuck = true;
  for (const auto& w : first) stuck = stuck && chordal_distance(w, start) < 1e-6;
  if (stuck) throw DomainError("backward_cloud: starting point is totally invariant (exceptional)");

  const double d = static_cast<double>(f.degree());
  const double tree = std::pow(d, static_cast<double>(depth));
  if (width == 0 || static_cast<double>(width) >= tree) {
    if (tree > static_cast<double>(kMaxTreeSize))
      throw ResourceError("backward_cloud: full tree of " + std::to_string(tree) + " atoms exceeds " +
                          std::to_string(kMaxTreeSize));
    std::vector<ProjPointC> level{start};
    for (std::size_t k = 0; k < depth; ++k) {
      std::vector<ProjPointC> next(level.size() * f.degree());
      parallel_for(
          level.size(),
          [&](std::size_t i) {
            const auto pre = preimages(f, level[i]);
            for (std::size_t j = 0; j < pre.size(); ++j) next[i * f.degree() + j] = pre[j];
          },
          threads);
      level = std::move(next);
    }
    std::vector<Complex> pts(level.size());
    for (std::size_t i = 0; i < level.size(); ++i) pts[i] = chart_value(level[i]);
    return PointCloud::uniform(std::move(pts), Provenance::backward);
  }
  std::vector<Complex> pts(width);
  parallel_for(
      width,
      [&](std::size_t b) {
        CounterRng rng(seed, b);
        ProjPointC cur = start;
        for (std::size_t k = 0; k < depth; ++k) {
          const auto pre = preimages(f, cur);
          cur = pre[rng.below(pre.size())];
        }
        pts[b] = chart_value(cur);
      },
      threads);
  return PointCloud::uniform(std::move(pts), Provenance::backward);
}

// Repelling fixed points of f^n (all periods dividing n), uniform weights.
inline PointCloud periodic_cloud(const RationalMapC& f, std::size_t n) {
  std::vector<Complex> pts;
  for (const auto& p : periodic_points(f, n))
    if (p.stability == Stability::repelling) pts.push_back(chart_value(p.location));
  return PointCloud::uniform(std::move(pts), Provenance::periodic);
}

// Logarithmic potential: sum_i w_i log|w - z_i|.
inline double potential(const PointCloud& cloud, Complex w) {
  double s = 0.0;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    const Complex z = cloud.points[i];
    if (is_infinite(z)) throw DomainError("potential: cloud has an atom at infinity");
    if (chordal_distance(z, w) <= 1e-6) throw DomainError("potential: probe within 1e-6 of an atom");
    s += cloud.weights[i] * std::log(std::abs(w - z));
  }
  return s;
}

// `count` equally spaced points on |w| = radius.
inline std::vector<Complex> probe_ring(double radius, std::size_t count, double phase = 0.1) {
  std::vector<Complex> out(count);
  for (std::size_t k = 0; k < count; ++k)
    out[k] = std::polar(radius, phase + 2.0 * std::numbers::pi * static_cast<double>(k) / static_cast<double>(count));
  return out;
}

inline double compare_clouds(const PointCloud& a, const PointCloud& b, const std::vector<Complex>& probes) {
  double worst = 0.0;
  for (const auto& w : probes) worst = std::max(worst, std::fabs(potential(a, w) - potential(b, w)));
  return worst;
}

struct LyapunovEstimate {
  double value = 0.0;
  double standard_error = 0.0;
  std::size_t samples = 0;
  std::size_t resampled = 0;  // starts replaced after a near-critical hit
};

// Spherical derivative |f'(z)| (1 + |z|^2) / (1 + |f(z)|^2) in lift form
// |det DF(v)| |v|^2 / (d |F(v)|^2), valid at infinity too.
inline double spherical_derivative(const RationalMapC& f, const LiftC& v) {
  const auto j = f.jacobian(v);
  const LiftC w = f(v);
  const double nv = std::norm(v.x) + std::norm(v.y);
  const double nw = std::norm(w.x) + std::norm(w.y);
  return std::abs(j[0] * j[3] - j[1] * j[2]) * nv / (static_cast<double>(f.degree()) * nw);
}

// Mean over cloud atoms of (1/n_avg) sum log ||df|| along the forward orbit, after n_burn
// steps. Orbits that come within 1e-12 of a critical point are restarted from a random atom.
inline LyapunovEstimate lyapunov(const RationalMapC& f, const PointCloud& cloud, std::size_t n_burn,
                                 std::size_t n_avg, std::uint64_t seed) {
  if (n_avg == 0) throw DomainError("lyapunov: n_avg must be positive");
  const auto crit = critical_points(f);
  CounterRng rng(seed);
  LyapunovEstimate out;
  double sum = 0.0, sum_sq = 0.0;
  const std::size_t max_restarts = 100 * cloud.size() + 100;
  for (std::size_t i = 0; i < cloud.size(); ++i) {
    Complex start = cloud.points[i];
    for (;;) {
      ProjPointC cur = to_point(start);
      bool hit = false;
      double acc = 0.0;
      for (std::size_t k = 0; k < n_burn + n_avg && !hit; ++k) {
        for (const auto& c : crit)
          if (chordal_distance(cur, c) < 1e-12) hit = true;
        if (hit) break;
        if (k >= n_burn) acc += std::log(spherical_derivative(f, cur.lift()));
        cur = f.apply(cur);
      }
      if (!hit) {
        const double avg = acc / static_cast<double>(n_avg);
        sum += avg;
        sum_sq += avg * avg;
        break;
      }
      if (++out.resampled > max_restarts) throw NumericError("lyapunov: too many near-critical orbits", 0.0, HUGE_VAL);
      start = cloud.points[rng.below(cloud.size())];
    }
  }
  const double n = static_cast<double>(cloud.size());
  out.samples = cloud.size();
  out.value = sum / n;
  const double var = n > 1 ? std::max(0.0, (sum_sq - n * out.value * out.value) / (n - 1.0)) : 0.0;
  out.standard_error = std::sqrt(var / n);
  return out;
}

}  // namespace arithdyn
