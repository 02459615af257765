#pragma once

#include <gmpxx.h>

#include <cmath>
#include <compare>
#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>

#include "arithdyn/error.hpp"

namespace arithdyn {

using BigInt = mpz_class;

inline BigInt abs(const BigInt& a) {
  BigInt r;
  mpz_abs(r.get_mpz_t(), a.get_mpz_t());
  return r;
}

inline BigInt gcd(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_gcd(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt lcm(const BigInt& a, const BigInt& b) {
  BigInt r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

inline BigInt pow(const BigInt& a, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), a.get_mpz_t(), e);
  return r;
}

inline BigInt parse_bigint(std::string_view s) {
  BigInt r;
  std::string str(s);
  if (!str.empty() && str.front() == '+') str.erase(0, 1);
  if (str.empty() || r.set_str(str, 10) != 0) throw DomainError("not an integer: '" + std::string(s) + "'");
  return r;
}

// Natural log of |a| without overflow for huge a. log|0| = -inf.
inline double log_abs(const BigInt& a) {
  if (sgn(a) == 0) return -HUGE_VAL;
  long exp2 = 0;
  const double mant = mpz_get_d_2exp(&exp2, a.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp2) * std::log(2.0);
}

// a / b as a double without intermediate overflow.
inline double ratio_to_double(const BigInt& a, const BigInt& b) {
  if (sgn(a) == 0) return 0.0;
  long ea = 0, eb = 0;
  const double ma = mpz_get_d_2exp(&ea, a.get_mpz_t());
  const double mb = mpz_get_d_2exp(&eb, b.get_mpz_t());
  return std::ldexp(ma / mb, static_cast<int>(ea - eb));
}

// Decimal digit count of |a| (GMP's estimate may exceed the truth by one).
inline std::size_t decimal_digits(const BigInt& a) { return mpz_sizeinbase(a.get_mpz_t(), 10); }

inline bool is_probable_prime(const BigInt& p) {
  return p >= 2 && mpz_probab_prime_p(p.get_mpz_t(), 40) > 0;
}

// Exact rational with a reduced, positive denominator. Zero is 0/1.
class BigRat {
 public:
  BigRat() : num_(0), den_(1) {}
  BigRat(long n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  BigRat(BigInt n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
  BigRat(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  // "a", "-a/b" or "a/b".
  static BigRat parse(std::string_view s) {
    const auto slash = s.find('/');
    if (slash == std::string_view::npos) return BigRat(parse_bigint(s));
    return BigRat(parse_bigint(s.substr(0, slash)), parse_bigint(s.substr(slash + 1)));
  }

  const BigInt& num() const noexcept { return num_; }
  const BigInt& den() const noexcept { return den_; }

  bool is_zero() const { return sgn(num_) == 0; }
  bool is_integer() const { return den_ == 1; }
  int sign() const { return sgn(num_); }

  double to_double() const { return ratio_to_double(num_, den_); }

  std::string str() const { return den_ == 1 ? num_.get_str() : num_.get_str() + "/" + den_.get_str(); }

  friend BigRat operator+(const BigRat& a, const BigRat& b) {
    return BigRat(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend BigRat operator-(const BigRat& a, const BigRat& b) {
    return BigRat(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
  }
  friend BigRat operator*(const BigRat& a, const BigRat& b) {
    return BigRat(a.num_ * b.num_, a.den_ * b.den_);
  }
  friend BigRat operator/(const BigRat& a, const BigRat& b) {
    if (b.is_zero()) throw DomainError("division by zero rational");
    return BigRat(a.num_ * b.den_, a.den_ * b.num_);
  }
  BigRat operator-() const { return BigRat(BigInt(-num_), den_); }
  BigRat& operator+=(const BigRat& o) { return *this = *this + o; }
  BigRat& operator-=(const BigRat& o) { return *this = *this - o; }
  BigRat& operator*=(const BigRat& o) { return *this = *this * o; }
  BigRat& operator/=(const BigRat& o) { return *this = *this / o; }

  friend bool operator==(const BigRat& a, const BigRat& b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const BigRat& a, const BigRat& b) {
    const int c = cmp(a.num_ * b.den_, b.num_ * a.den_);
    return c < 0 ? std::strong_ordering::less : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  friend std::ostream& operator<<(std::ostream& os, const BigRat& r) { return os << r.str(); }

 private:
  void normalize() {
    if (sgn(den_) == 0) throw DomainError("zero denominator");
    if (sgn(den_) < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    const BigInt g = gcd(num_, den_);
    if (g != 1) {
      num_ /= g;
      den_ /= g;
    }
    if (sgn(num_) == 0) den_ = 1;
  }

  BigInt num_;
  BigInt den_;
};

inline BigRat rat_normalize(const BigInt& num, const BigInt& den) { return BigRat(num, den); }

inline BigRat abs(const BigRat& r) { return BigRat(abs(r.num()), r.den()); }

// v_p(n) for an integer n != 0.
inline long valuation(const BigInt& n, const BigInt& p) {
  if (sgn(n) == 0) throw DomainError("valuation of zero integer is infinite");
  BigInt rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

// p-adic valuation; std::nullopt stands for +infinity (x = 0).
inline std::optional<long> padic_valuation(const BigRat& x, const BigInt& p) {
  if (!is_probable_prime(p)) throw DomainError("padic_valuation: " + p.get_str() + " is not prime");
  if (x.is_zero()) return std::nullopt;
  return valuation(x.num(), p) - valuation(x.den(), p);
}

// |x|_p = p^(-v_p(x)), exactly.
inline BigRat padic_abs(const BigRat& x, const BigInt& p) {
  const auto v = padic_valuation(x, p);
  if (!v) return BigRat(0);
  const BigInt pe = pow(p, static_cast<unsigned long>(std::labs(*v)));
  return *v >= 0 ? BigRat(BigInt(1), pe) : BigRat(pe);
}

}  // namespace arithdyn
