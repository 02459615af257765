#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <vector>

#include "arithdyn/dynamics/rational_map.hpp"

namespace arithdyn {

// Exact orbits stop once a coordinate would exceed this many decimal digits. With d = 2
// heights double every step, so depth ~20 is the practical horizon from small points.
inline constexpr std::size_t kDefaultDigitBudget = 1000000;

// [x, f(x), ..., f^n(x)], exact.
inline std::vector<ProjPointQ> iterate_orbit(const RationalMapQ& f, const ProjPointQ& x, std::size_t n,
                                             std::size_t digit_budget = kDefaultDigitBudget) {
  std::vector<ProjPointQ> orbit;
  orbit.reserve(n + 1);
  orbit.push_back(x);
  for (std::size_t k = 0; k < n; ++k) {
    const ProjPointQ& cur = orbit.back();
    // The image has at most d times the digits of the current point plus those of the
    // coefficients; checking before the multiplication keeps memory bounded.
    const std::size_t digits = std::max(decimal_digits(cur.x()), decimal_digits(cur.y()));
    if (digits * f.degree() > digit_budget) {
      const double h = std::max(log_abs(cur.x()), log_abs(cur.y()));
      throw ResourceError("iterate_orbit: digit budget of " + std::to_string(digit_budget) + " exceeded at step " +
                              std::to_string(k),
                          h);
    }
    orbit.push_back(f.apply(cur));
  }
  return orbit;
}

}  // namespace arithdyn
