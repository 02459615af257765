#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "arithdyn/numeric/bigrat.hpp"

namespace arithdyn {

using Complex = std::complex<double>;

// Dense univariate polynomial, lowest degree first. The zero polynomial has no
// coefficients and degree 0; otherwise the last coefficient is nonzero.
template <class T>
class Poly {
 public:
  Poly() = default;
  explicit Poly(std::vector<T> coeffs) : c_(std::move(coeffs)) { trim(); }
  Poly(std::initializer_list<T> coeffs) : c_(coeffs) { trim(); }

  static Poly monomial(std::size_t k, T coeff = T(1)) {
    std::vector<T> c(k + 1, T{});
    c[k] = std::move(coeff);
    return Poly(std::move(c));
  }

  const std::vector<T>& coeffs() const noexcept { return c_; }
  bool is_zero() const noexcept { return c_.empty(); }
  std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
  const T& leading() const { return c_.back(); }
  T operator[](std::size_t i) const { return i < c_.size() ? c_[i] : T{}; }

  template <class U>
  U operator()(const U& x) const {
    U acc{};
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }

  Poly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * T(static_cast<long>(i));
    return Poly(std::move(d));
  }

  friend Poly operator+(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] + b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator-(const Poly& a, const Poly& b) {
    std::vector<T> r(std::max(a.c_.size(), b.c_.size()), T{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) r[i] = r[i] + a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) r[i] = r[i] - b.c_[i];
    return Poly(std::move(r));
  }
  friend Poly operator*(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T{});
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i] == T{}) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    }
    return Poly(std::move(r));
  }
  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }

 private:
  void trim() {
    while (!c_.empty() && c_.back() == T{}) c_.pop_back();
  }

  std::vector<T> c_;
};

using PolyZ = Poly<BigInt>;
using PolyQ = Poly<BigRat>;
using PolyC = Poly<Complex>;

// Monic polynomial with the given roots.
inline PolyC poly_from_roots(std::span<const Complex> roots) {
  std::vector<Complex> c{Complex(1.0)};
  for (const Complex& r : roots) {
    c.push_back(Complex(0.0));
    for (std::size_t i = c.size() - 1; i > 0; --i) c[i] = c[i - 1] - r * c[i];
    c[0] = -r * c[0];
  }
  return PolyC(std::move(c));
}

inline PolyC to_complex(const PolyQ& p) {
  std::vector<Complex> c;
  c.reserve(p.coeffs().size());
  for (const auto& a : p.coeffs()) c.emplace_back(a.to_double());
  return PolyC(std::move(c));
}

}  // namespace arithdyn
