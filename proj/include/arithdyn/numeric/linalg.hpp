#pragma once

#include <cmath>
#include <cstddef>
#include <type_traits>
#include <utility>
#include <vector>

#include "arithdyn/numeric/poly.hpp"

namespace arithdyn {

template <class T>
using Matrix = std::vector<std::vector<T>>;

// Fraction-free (Bareiss) determinant; every intermediate division is exact.
inline BigInt determinant(Matrix<BigInt> a) {
  const std::size_t n = a.size();
  if (n == 0) return BigInt(1);
  int sign = 1;
  BigInt prev = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (sgn(a[k][k]) == 0) {
      std::size_t r = k + 1;
      while (r < n && sgn(a[r][k]) == 0) ++r;
      if (r == n) return BigInt(0);
      std::swap(a[k], a[r]);
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
      }
    }
    prev = a[k][k];
  }
  return sign > 0 ? a[n - 1][n - 1] : BigInt(-a[n - 1][n - 1]);
}

// Determinant by Gaussian elimination with partial pivoting.
inline Complex determinant(Matrix<Complex> a) {
  const std::size_t n = a.size();
  Complex det(1.0);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    for (std::size_t r = k + 1; r < n; ++r)
      if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    if (a[piv][k] == Complex(0.0)) return Complex(0.0);
    if (piv != k) {
      std::swap(a[k], a[piv]);
      det = -det;
    }
    det *= a[k][k];
    for (std::size_t i = k + 1; i < n; ++i) {
      const Complex f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] -= f * a[k][j];
    }
  }
  return det;
}

// Solves a x = b. T is BigRat (exact) or Complex (partial pivoting).
// Throws DomainError for a singular system.
template <class T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.size();
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t piv = k;
    if constexpr (std::is_same_v<T, Complex>) {
      for (std::size_t r = k + 1; r < n; ++r)
        if (std::abs(a[r][k]) > std::abs(a[piv][k])) piv = r;
    } else {
      while (piv < n && a[piv][k] == T{}) ++piv;
    }
    if (piv == n || a[piv][k] == T{}) throw DomainError("solve_linear: singular matrix");
    std::swap(a[k], a[piv]);
    std::swap(b[k], b[piv]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (a[i][k] == T{}) continue;
      const T f = a[i][k] / a[k][k];
      for (std::size_t j = k; j < n; ++j) a[i][j] = a[i][j] - f * a[k][j];
      b[i] = b[i] - f * b[k];
    }
  }
  std::vector<T> x(n);
  for (std::size_t i = n; i-- > 0;) {
    T s = b[i];
    for (std::size_t j = i + 1; j < n; ++j) s = s - a[i][j] * x[j];
    x[i] = s / a[i][i];
  }
  return x;
}

}  // namespace arithdyn
