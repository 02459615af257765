#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "arithdyn/numeric/poly.hpp"

namespace arithdyn {

// Binary form of fixed degree D: sum_i c[i] x^i y^(D-i). Unlike Poly, the degree is
// part of the value; a form may have zero top or bottom coefficients.
template <class T>
class HomPoly {
 public:
  HomPoly() = default;
  explicit HomPoly(std::vector<T> coeffs) : c_(std::move(coeffs)) {}
  HomPoly(std::initializer_list<T> coeffs) : c_(coeffs) {}

  static HomPoly zero(std::size_t degree) { return HomPoly(std::vector<T>(degree + 1, T{})); }

  std::size_t degree() const noexcept { return c_.empty() ? 0 : c_.size() - 1; }
  const std::vector<T>& coeffs() const noexcept { return c_; }
  std::vector<T>& coeffs() noexcept { return c_; }
  const T& operator[](std::size_t i) const { return c_[i]; }

  bool is_zero() const {
    for (const auto& a : c_)
      if (!(a == T{})) return false;
    return true;
  }

  template <class U>
  U operator()(const U& x, const U& y) const {
    // Horner in x with y-powers folded in: ((c_D x + c_{D-1} y) x + c_{D-2} y^2) ...
    const std::size_t D = degree();
    U acc = U(c_[D]);
    U ypow = U(1);
    for (std::size_t k = 1; k <= D; ++k) {
      ypow = ypow * y;
      acc = acc * x + U(c_[D - k]) * ypow;
    }
    return acc;
  }

  HomPoly dx() const {
    const std::size_t D = degree();
    if (D == 0) return HomPoly{T{}};
    std::vector<T> r(D);
    for (std::size_t i = 1; i <= D; ++i) r[i - 1] = c_[i] * T(static_cast<long>(i));
    return HomPoly(std::move(r));
  }

  HomPoly dy() const {
    const std::size_t D = degree();
    if (D == 0) return HomPoly{T{}};
    std::vector<T> r(D);
    for (std::size_t i = 0; i < D; ++i) r[i] = c_[i] * T(static_cast<long>(D - i));
    return HomPoly(std::move(r));
  }

  // Dehomogenisation p(z) = F(z, 1).
  Poly<T> affine() const { return Poly<T>(c_); }

  friend HomPoly operator*(const HomPoly& a, const HomPoly& b) {
    std::vector<T> r(a.c_.size() + b.c_.size() - 1, T{});
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) r[i + j] += a.c_[i] * b.c_[j];
    return HomPoly(std::move(r));
  }
  friend HomPoly operator-(const HomPoly& a, const HomPoly& b) {
    HomPoly r = a;
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] - b.c_[i];
    return r;
  }
  friend HomPoly operator+(const HomPoly& a, const HomPoly& b) {
    HomPoly r = a;
    for (std::size_t i = 0; i < b.c_.size(); ++i) r.c_[i] = r.c_[i] + b.c_[i];
    return r;
  }
  friend HomPoly operator*(const T& s, const HomPoly& a) {
    HomPoly r = a;
    for (auto& v : r.c_) v = s * v;
    return r;
  }
  friend bool operator==(const HomPoly& a, const HomPoly& b) { return a.c_ == b.c_; }

  template <class U, class Conv>
  HomPoly<U> map(Conv&& conv) const {
    std::vector<U> r;
    r.reserve(c_.size());
    for (const auto& a : c_) r.push_back(conv(a));
    return HomPoly<U>(std::move(r));
  }

 private:
  std::vector<T> c_;
};

using HomPolyZ = HomPoly<BigInt>;
using HomPolyC = HomPoly<Complex>;

}  // namespace arithdyn
