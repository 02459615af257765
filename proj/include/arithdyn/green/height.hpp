#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <numeric>
#include <string>
#include <vector>

#include "arithdyn/dynamics/orbit.hpp"
#include "arithdyn/green/green.hpp"

namespace arithdyn {

// log max(|x|, |y|) on the coprime representative.
inline double naive_height(const ProjPointQ& x) { return std::max(log_abs(x.x()), log_abs(x.y())); }

enum class HeightMethod { global_iteration, adelic_sum };

inline const char* to_string(HeightMethod m) {
  return m == HeightMethod::global_iteration ? "global-iteration" : "adelic-sum";
}

struct HeightValue {
  double value = 0.0;
  double error = 0.0;
  std::size_t depth = 0;
  HeightMethod method = HeightMethod::global_iteration;
};

// Bounds lower <= h(f(x)) - d h(x) <= upper for every x in P^1(Q). With v a primitive
// integer lift, the archimedean part log||F(v)|| - d log||v|| lies in [log c1, log c2] and
// the gcd removed from F(v) divides Res, which costs at most log|Res|.
struct HeightConstant {
  double lower = 0.0;
  double upper = 0.0;
  double c = 0.0;  // max(|lower|, |upper|)
};

inline HeightConstant height_constant(const RationalMapQ& f) {
  HeightConstant h;
  h.lower = std::log(f.bounds().c1) - log_abs(f.resultant());
  h.upper = std::log(f.bounds().c2);
  h.c = std::max(std::fabs(h.lower), std::fabs(h.upper));
  return h;
}

// Above this naive height every point has positive canonical height.
inline double wandering_cutoff(const RationalMapQ& f) {
  return 2.0 * height_constant(f).c / (static_cast<double>(f.degree()) - 1.0) + 1.0;
}

// d^-n h(f^n(x)), shifted to the centre of its certified bracket
// [lower, upper] / ((d-1) d^n).
inline HeightValue canonical_height_global(const RationalMapQ& f, const ProjPointQ& x, double tol = 1e-6,
                                           std::size_t digit_budget = kDefaultDigitBudget) {
  if (!(tol > 0)) throw DomainError("canonical_height_global: tolerance must be positive");
  const HeightConstant hc = height_constant(f);
  const double d = static_cast<double>(f.degree());
  ProjPointQ cur = x;
  double scale = 1.0;
  HeightValue h;
  for (std::size_t n = 0;; ++n) {
    const double s = scale / (d - 1.0);
    h.value = scale * naive_height(cur) + 0.5 * (hc.lower + hc.upper) * s;
    h.error = 0.5 * (hc.upper - hc.lower) * s + 8.0 * std::numeric_limits<double>::epsilon() * std::fabs(h.value);
    h.depth = n;
    if (h.error <= tol) return h;
    const std::size_t digits = std::max(decimal_digits(cur.x()), decimal_digits(cur.y()));
    if (digits * f.degree() > digit_budget)
      throw NumericError("canonical_height_global: digit budget exhausted at depth " + std::to_string(n) +
                             " with error " + std::to_string(h.error),
                         h.value, h.error);
    cur = f.apply(cur);
    scale /= d;
  }
}

// Sum of local Green functions of the content-normalised lift at the primitive integer
// vector of x. Primes of good reduction contribute exactly 0, so only bad primes are visited.
inline HeightValue canonical_height_adelic(const RationalMapQ& f, const ProjPointQ& x, double tol = 1e-10) {
  if (!(tol > 0)) throw DomainError("canonical_height_adelic: tolerance must be positive");
  const auto primes = f.bad_primes();
  const double share = tol / static_cast<double>(primes.size() + 1);
  const RationalMapC fc(f);
  const GreenValue arch = green_arch(fc, x.x(), x.y(), share);
  HeightValue h;
  h.method = HeightMethod::adelic_sum;
  h.value = arch.value;
  h.error = arch.error;
  h.depth = arch.depth;
  const double d = static_cast<double>(f.degree());
  for (const BigInt& p : primes) {
    const double v = static_cast<double>(valuation(f.resultant(), p)) * log_abs(p) / (d - 1.0);
    const auto depth = static_cast<std::size_t>(std::max(1.0, std::ceil(std::log(v / share) / std::log(d))));
    const GreenValue g = green_padic(f, p, x, std::min(depth, kGreenMaxDepth));
    h.value += g.value;
    h.error += g.error;
    h.depth = std::max(h.depth, g.depth);
  }
  return h;
}

enum class Verdict { preperiodic, wandering };

inline const char* to_string(Verdict v) { return v == Verdict::preperiodic ? "preperiodic" : "wandering"; }

// Preperiodic: f^tail(x) = f^(tail+period)(x), with `orbit` = x, ..., f^(tail+period)(x).
// Wandering: the last orbit point has naive height above the cutoff, and
// h_f(x) >= height_lower_bound > 0.
struct PreperiodicityCertificate {
  Verdict verdict = Verdict::wandering;
  std::size_t tail = 0;
  std::size_t period = 0;
  std::vector<ProjPointQ> orbit;
  double height_lower_bound = 0.0;
};

namespace detail {

inline PreperiodicityCertificate classify_orbit(const RationalMapQ& f, const ProjPointQ& x, double cutoff,
                                                double c_over) {
  PreperiodicityCertificate cert;
  std::map<ProjPointQ, std::size_t> seen;
  ProjPointQ cur = x;
  const double d = static_cast<double>(f.degree());
  for (std::size_t k = 0;; ++k) {
    cert.orbit.push_back(cur);
    if (auto it = seen.find(cur); it != seen.end()) {
      cert.verdict = Verdict::preperiodic;
      cert.tail = it->second;
      cert.period = k - it->second;
      return cert;
    }
    const double h = naive_height(cur);
    if (h > cutoff) {
      cert.verdict = Verdict::wandering;
      cert.tail = k;
      cert.height_lower_bound = (h - c_over) / std::pow(d, static_cast<double>(k));
      return cert;
    }
    seen.emplace(cur, k);
    cur = f.apply(cur);
  }
}

}  // namespace detail

// Always terminates: below the cutoff there are finitely many points, above it h_f > 0.
inline PreperiodicityCertificate is_preperiodic(const RationalMapQ& f, const ProjPointQ& x) {
  const double c_over = height_constant(f).c / (static_cast<double>(f.degree()) - 1.0);
  return detail::classify_orbit(f, x, wandering_cutoff(f), c_over);
}

inline constexpr std::size_t kDefaultEnumerationBudget = 20000000;

// Every point of naive height <= bound, ordered by max(|a|, |b|), then by value with
// infinity first.
inline std::vector<ProjPointQ> points_of_bounded_height(double bound,
                                                        std::size_t budget = kDefaultEnumerationBudget) {
  if (!(bound >= 0)) throw DomainError("height bound must be nonnegative");
  const double m_max = std::floor(std::exp(bound) * (1.0 + 1e-12));
  // About (12/pi^2) N^2 points.
  if (m_max > 1e9 || 1.3 * m_max * m_max > static_cast<double>(budget))
    throw ResourceError("points_of_bounded_height: about " + std::to_string(1.3 * m_max * m_max) +
                        " candidates exceed the enumeration budget of " + std::to_string(budget));
  const long n = static_cast<long>(m_max);
  std::vector<ProjPointQ> out;
  out.push_back(ProjPointQ::infinity());
  for (long m = 1; m <= n; ++m) {
    std::vector<ProjPointQ> ring;
    for (long a = -m; a <= m; ++a)
      if (std::gcd(a, m) == 1) ring.emplace_back(BigInt(a), BigInt(m));
    for (long b = 1; b < m; ++b)
      if (std::gcd(m, b) == 1) {
        ring.emplace_back(BigInt(-m), BigInt(b));
        ring.emplace_back(BigInt(m), BigInt(b));
      }
    std::sort(ring.begin(), ring.end(), [](const ProjPointQ& p, const ProjPointQ& q) { return p.affine() < q.affine(); });
    out.insert(out.end(), ring.begin(), ring.end());
  }
  return out;
}

// All preperiodic points of naive height <= bound.
inline std::vector<ProjPointQ> preperiodic_search(const RationalMapQ& f, double bound,
                                                  std::size_t budget = kDefaultEnumerationBudget) {
  const double cutoff = wandering_cutoff(f);
  const double c_over = height_constant(f).c / (static_cast<double>(f.degree()) - 1.0);
  std::vector<ProjPointQ> out;
  for (const auto& x : points_of_bounded_height(bound, budget))
    if (detail::classify_orbit(f, x, cutoff, c_over).verdict == Verdict::preperiodic) out.push_back(x);
  return out;
}

}  // namespace arithdyn
