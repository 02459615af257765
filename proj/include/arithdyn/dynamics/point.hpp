#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>
#include <utility>

#include "arithdyn/numeric/bigrat.hpp"
#include "arithdyn/numeric/poly.hpp"

namespace arithdyn {

// Point [x:y] of P^1(Q) with coprime integer coordinates, y > 0 or [1:0].
class ProjPointQ {
 public:
  ProjPointQ() : x_(0), y_(1) {}
  ProjPointQ(BigInt x, BigInt y) : x_(std::move(x)), y_(std::move(y)) { normalize(); }
  explicit ProjPointQ(const BigRat& r) : x_(r.num()), y_(r.den()) {}

  static ProjPointQ infinity() { return ProjPointQ(BigInt(1), BigInt(0)); }

  // "a/b", "a", or "inf".
  static ProjPointQ parse(std::string_view s) {
    if (s == "inf" || s == "infinity" || s == "1/0") return infinity();
    return ProjPointQ(BigRat::parse(s));
  }

  const BigInt& x() const noexcept { return x_; }
  const BigInt& y() const noexcept { return y_; }
  bool is_infinity() const { return sgn(y_) == 0; }
  BigRat affine() const {
    if (is_infinity()) throw DomainError("point at infinity has no affine coordinate");
    return BigRat(x_, y_);
  }

  std::string str() const {
    if (is_infinity()) return "inf";
    return y_ == 1 ? x_.get_str() : x_.get_str() + "/" + y_.get_str();
  }

  friend bool operator==(const ProjPointQ& a, const ProjPointQ& b) { return a.x_ == b.x_ && a.y_ == b.y_; }
  friend bool operator<(const ProjPointQ& a, const ProjPointQ& b) {
    const int c = cmp(a.y_, b.y_);
    return c != 0 ? c < 0 : a.x_ < b.x_;
  }

 private:
  void normalize() {
    if (sgn(x_) == 0 && sgn(y_) == 0) throw DomainError("[0:0] is not a point of P^1");
    const BigInt g = gcd(x_, y_);
    if (g != 1) {
      x_ /= g;
      y_ /= g;
    }
    if (sgn(y_) < 0 || (sgn(y_) == 0 && sgn(x_) < 0)) {
      x_ = -x_;
      y_ = -y_;
    }
  }

  BigInt x_;
  BigInt y_;
};

// Unnormalised homogeneous vector (x, y) in C^2.
struct LiftC {
  Complex x;
  Complex y;

  double sup_norm() const { return std::max(std::abs(x), std::abs(y)); }
};

// Point of P^1(C) stored in its sup-norm chart: the larger coordinate is exactly 1,
// so max(|x|, |y|) = 1.
class ProjPointC {
 public:
  ProjPointC() : x_(0.0), y_(1.0) {}
  ProjPointC(Complex x, Complex y) : x_(x), y_(y) { normalize(); }
  explicit ProjPointC(const LiftC& v) : ProjPointC(v.x, v.y) {}

  static ProjPointC finite(Complex z) { return ProjPointC(z, Complex(1.0)); }
  static ProjPointC infinity() { return ProjPointC(Complex(1.0), Complex(0.0)); }
  static ProjPointC from_q(const ProjPointQ& p) {
    if (p.is_infinity()) return infinity();
    if (abs(p.x()) <= p.y()) return finite(Complex(ratio_to_double(p.x(), p.y())));
    return ProjPointC(Complex(1.0), Complex(ratio_to_double(p.y(), p.x())));
  }

  const Complex& x() const noexcept { return x_; }
  const Complex& y() const noexcept { return y_; }
  LiftC lift() const { return {x_, y_}; }

  bool is_infinity() const { return y_ == Complex(0.0); }
  // True when the point lies in the chart z = x/y (|y| >= |x|).
  bool in_finite_chart() const { return y_ == Complex(1.0); }
  // x/y; infinite when y = 0.
  Complex affine() const {
    if (is_infinity()) return Complex(std::numeric_limits<double>::infinity(), 0.0);
    return x_ / y_;
  }

 private:
  void normalize() {
    if (x_ == Complex(0.0) && y_ == Complex(0.0)) throw DomainError("[0:0] is not a point of P^1");
    if (std::abs(y_) >= std::abs(x_)) {
      x_ /= y_;
      y_ = Complex(1.0);
    } else {
      y_ /= x_;
      x_ = Complex(1.0);
    }
  }

  Complex x_;
  Complex y_;
};

// Chordal distance |x1 y2 - x2 y1| / (|v1| |v2|); the sphere has diameter 1.
inline double chordal_distance(const LiftC& a, const LiftC& b) {
  const double na = std::sqrt(std::norm(a.x) + std::norm(a.y));
  const double nb = std::sqrt(std::norm(b.x) + std::norm(b.y));
  return std::abs(a.x * b.y - b.x * a.y) / (na * nb);
}

inline double chordal_distance(const ProjPointC& a, const ProjPointC& b) {
  return chordal_distance(a.lift(), b.lift());
}

inline double chordal_distance(Complex a, Complex b) {
  return std::abs(a - b) / std::sqrt((1.0 + std::norm(a)) * (1.0 + std::norm(b)));
}

}  // namespace arithdyn
