#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "arithdyn/dynamics/point.hpp"
#include "arithdyn/numeric/factor.hpp"
#include "arithdyn/numeric/hompoly.hpp"
#include "arithdyn/numeric/linalg.hpp"

namespace arithdyn {

namespace detail {

// Sylvester matrix of two binary forms of the same formal degree d, as polynomials
// in x (descending powers).
template <class T>
Matrix<T> sylvester(const HomPoly<T>& a, const HomPoly<T>& b) {
  const std::size_t d = a.degree();
  const std::size_t n = 2 * d;
  Matrix<T> m(n, std::vector<T>(n, T{}));
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t i = 0; i <= d; ++i) {
      m[r][r + i] = a[d - i];
      m[d + r][r + i] = b[d - i];
    }
  return m;
}

// Coefficients (A, B) of degree d-1 forms with A P + B Q = rhs * x^k y^(2d-1-k).
template <class T, class S>
std::vector<S> bezout_cofactors(const HomPoly<T>& p, const HomPoly<T>& q, const S& rhs, std::size_t k) {
  const std::size_t d = p.degree();
  const std::size_t n = 2 * d;
  Matrix<S> m(n, std::vector<S>(n, S{}));
  for (std::size_t row = 0; row < n; ++row)
    for (std::size_t i = 0; i < d; ++i) {
      if (row >= i && row - i <= d) {
        m[row][i] = S(p[row - i]);
        m[row][d + i] = S(q[row - i]);
      }
    }
  std::vector<S> b(n, S{});
  b[k] = rhs;
  return solve_linear(std::move(m), std::move(b));
}

inline double abs_value(const BigRat& r) { return std::fabs(r.to_double()); }
inline double abs_value(const Complex& z) { return std::abs(z); }

// max over both identities of sum |A_i| + sum |B_i|.
template <class T, class S>
double cofactor_norm(const HomPoly<T>& p, const HomPoly<T>& q, const S& res) {
  const std::size_t d = p.degree();
  double worst = 0.0;
  for (std::size_t k : {std::size_t{0}, 2 * d - 1}) {
    double s = 0.0;
    for (const auto& c : bezout_cofactors(p, q, res, k)) s += abs_value(c);
    worst = std::max(worst, s);
  }
  return worst;
}

template <class T>
double l1_norm(const HomPoly<T>& p) {
  double s = 0.0;
  for (const auto& c : p.coeffs()) {
    if constexpr (std::is_same_v<T, BigInt>)
      s += std::fabs(c.get_d());
    else
      s += std::abs(c);
  }
  return s;
}

}  // namespace detail

// Explicit sup-norm constants of a lift: for all (x, y) with max(|x|,|y|) = 1,
// c1 <= ||F(x, y)|| <= c2.
struct LiftBounds {
  double c1 = 0.0;
  double c2 = 0.0;
  double cofactor_norm = 0.0;  // |Res| / c1
};

// Degree-d rational map over Q, stored as a homogeneous lift with integer coefficients.
// P[i] is the coefficient of x^i y^(d-i). By default the lift is content-normalised
// (gcd of all coefficients is 1, overall sign untouched); raw_lift() skips that.
class RationalMapQ {
 public:
  RationalMapQ(HomPolyZ p, HomPolyZ q) : RationalMapQ(std::move(p), std::move(q), true) {}

  static RationalMapQ raw_lift(HomPolyZ p, HomPolyZ q) { return RationalMapQ(std::move(p), std::move(q), false); }

  // From rational coefficients; denominators are cleared before normalisation.
  static RationalMapQ from_rational(const std::vector<BigRat>& p, const std::vector<BigRat>& q) {
    BigInt l = 1;
    for (const auto& c : p) l = lcm(l, c.den());
    for (const auto& c : q) l = lcm(l, c.den());
    auto scale = [&](const std::vector<BigRat>& v) {
      std::vector<BigInt> r;
      for (const auto& c : v) r.push_back(BigInt(c.num() * (l / c.den())));
      return HomPolyZ(std::move(r));
    };
    return RationalMapQ(scale(p), scale(q));
  }

  // z -> z^d.
  static RationalMapQ power(std::size_t d) {
    HomPolyZ p = HomPolyZ::zero(d), q = HomPolyZ::zero(d);
    p.coeffs()[d] = 1;
    q.coeffs()[0] = 1;
    return RationalMapQ(std::move(p), std::move(q));
  }

  // z -> z^2 + c, lift (b x^2 + a y^2, b y^2) for c = a/b.
  static RationalMapQ quadratic(const BigRat& c) {
    return RationalMapQ(HomPolyZ{c.num(), BigInt(0), c.den()}, HomPolyZ{c.den(), BigInt(0), BigInt(0)});
  }

  // Polynomial map with rational coefficients (lowest degree first).
  static RationalMapQ polynomial(const std::vector<BigRat>& coeffs) {
    std::vector<BigRat> q(coeffs.size(), BigRat(0));
    q[0] = BigRat(1);
    return from_rational(coeffs, q);
  }

  // (z^2 + 1)^2 / (4 z (z^2 - 1)).
  static RationalMapQ lattes() {
    return RationalMapQ(HomPolyZ{BigInt(1), BigInt(0), BigInt(2), BigInt(0), BigInt(1)},
                        HomPolyZ{BigInt(0), BigInt(-4), BigInt(0), BigInt(4), BigInt(0)});
  }

  std::size_t degree() const noexcept { return d_; }
  const HomPolyZ& p() const noexcept { return p_; }
  const HomPolyZ& q() const noexcept { return q_; }
  const BigInt& resultant() const noexcept { return res_; }

  // Q = q_0 y^d: the map is a polynomial in the affine coordinate.
  bool is_polynomial() const {
    for (std::size_t i = 1; i <= d_; ++i)
      if (sgn(q_[i]) != 0) return false;
    return true;
  }

  std::pair<BigInt, BigInt> apply_lift(const BigInt& x, const BigInt& y) const { return {p_(x, y), q_(x, y)}; }

  ProjPointQ apply(const ProjPointQ& pt) const {
    auto [a, b] = apply_lift(pt.x(), pt.y());
    return ProjPointQ(std::move(a), std::move(b));
  }

  std::vector<BigInt> bad_primes() const { return prime_divisors(res_); }

  // Computed from exact cofactors; the 1e-12 slack absorbs the final rounding to double.
  const LiftBounds& bounds() const noexcept { return bounds_; }

  friend bool operator==(const RationalMapQ& a, const RationalMapQ& b) { return a.p_ == b.p_ && a.q_ == b.q_; }

 private:
  RationalMapQ(HomPolyZ p, HomPolyZ q, bool normalize) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.coeffs().size() != q_.coeffs().size() || p_.coeffs().empty())
      throw InvalidMapError("P and Q must be forms of the same degree");
    d_ = p_.degree();
    if (d_ < 2) throw InvalidMapError("degree must be at least 2");
    if (normalize) {
      BigInt g = 0;
      for (const auto& c : p_.coeffs()) g = gcd(g, c);
      for (const auto& c : q_.coeffs()) g = gcd(g, c);
      if (sgn(g) == 0) throw InvalidMapError("zero map");
      if (g != 1) {
        for (auto& c : p_.coeffs()) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
        for (auto& c : q_.coeffs()) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
      }
    }
    res_ = determinant(detail::sylvester(p_, q_));
    if (sgn(res_) == 0) throw InvalidMapError("zero resultant: P and Q share a common factor");
    bounds_.cofactor_norm = detail::cofactor_norm(p_, q_, BigRat(res_)) * (1.0 + 1e-12);
    bounds_.c2 = std::max(detail::l1_norm(p_), detail::l1_norm(q_)) * (1.0 + 1e-12);
    bounds_.c1 = std::fabs(res_.get_d()) / bounds_.cofactor_norm;
  }

  HomPolyZ p_;
  HomPolyZ q_;
  std::size_t d_ = 0;
  BigInt res_;
  LiftBounds bounds_;
};

inline ProjPointQ apply(const RationalMapQ& f, const ProjPointQ& x) { return f.apply(x); }
inline BigInt resultant(const RationalMapQ& f) { return f.resultant(); }
inline std::vector<BigInt> bad_primes(const RationalMapQ& f) { return f.bad_primes(); }

// Floating rational map with cached lift bounds.
class RationalMapC {
 public:
  RationalMapC(HomPolyC p, HomPolyC q) : p_(std::move(p)), q_(std::move(q)) {
    if (p_.coeffs().size() != q_.coeffs().size() || p_.coeffs().empty())
      throw InvalidMapError("P and Q must be forms of the same degree");
    d_ = p_.degree();
    if (d_ < 2) throw InvalidMapError("degree must be at least 2");
    res_ = determinant(detail::sylvester(p_, q_));
    if (std::abs(res_) == 0.0) throw InvalidMapError("zero resultant: P and Q share a common factor");
    bounds_.cofactor_norm = detail::cofactor_norm(p_, q_, res_);
    bounds_.c2 = std::max(detail::l1_norm(p_), detail::l1_norm(q_));
    bounds_.c1 = std::abs(res_) / bounds_.cofactor_norm;
    init_derivatives();
  }

  explicit RationalMapC(const RationalMapQ& f)
      : p_(f.p().map<Complex>([](const BigInt& c) { return Complex(c.get_d()); })),
        q_(f.q().map<Complex>([](const BigInt& c) { return Complex(c.get_d()); })),
        d_(f.degree()),
        res_(f.resultant().get_d()),
        bounds_(f.bounds()) {
    init_derivatives();
  }

  // Polynomial a_0 + a_1 z + ... + a_d z^d as the lift (sum a_i x^i y^(d-i), y^d).
  static RationalMapC polynomial(const PolyC& poly) {
    const std::size_t d = poly.degree();
    HomPolyC q = HomPolyC::zero(d);
    q.coeffs()[0] = Complex(1.0);
    std::vector<Complex> c(d + 1, Complex(0.0));
    for (std::size_t i = 0; i <= d; ++i) c[i] = poly[i];
    return RationalMapC(HomPolyC(std::move(c)), std::move(q));
  }

  std::size_t degree() const noexcept { return d_; }
  const HomPolyC& p() const noexcept { return p_; }
  const HomPolyC& q() const noexcept { return q_; }
  Complex resultant() const noexcept { return res_; }
  const LiftBounds& bounds() const noexcept { return bounds_; }

  LiftC operator()(const LiftC& v) const { return {p_(v.x, v.y), q_(v.x, v.y)}; }
  ProjPointC apply(const ProjPointC& pt) const { return ProjPointC((*this)(pt.lift())); }

  // Jacobian [[P_x, P_y], [Q_x, Q_y]] of the lift at v.
  std::array<Complex, 4> jacobian(const LiftC& v) const {
    return {px_(v.x, v.y), py_(v.x, v.y), qx_(v.x, v.y), qy_(v.x, v.y)};
  }

  // Wronskian P_x Q_y - P_y Q_x, a form of degree 2d-2 vanishing at the critical points.
  HomPolyC wronskian() const { return px_ * qy_ - py_ * qx_; }

 private:
  void init_derivatives() {
    px_ = p_.dx();
    py_ = p_.dy();
    qx_ = q_.dx();
    qy_ = q_.dy();
  }

  HomPolyC p_, q_;
  std::size_t d_ = 0;
  Complex res_;
  LiftBounds bounds_;
  HomPolyC px_, py_, qx_, qy_;
};

}  // namespace arithdyn
