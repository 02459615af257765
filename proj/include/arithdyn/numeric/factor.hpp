#pragma once

#include <algorithm>
#include <cstdint>
#include <vector>

#include "arithdyn/numeric/bigrat.hpp"
#include "arithdyn/random.hpp"

namespace arithdyn {

namespace detail {

inline constexpr unsigned long kTrialDivisionLimit = 1000000;

// Brent's variant of Pollard rho. Returns a nontrivial factor of composite n.
inline BigInt pollard_brent(const BigInt& n, std::uint64_t seed) {
  if (mpz_even_p(n.get_mpz_t())) return BigInt(2);
  CounterRng rng(seed, 0x9011a5d);
  for (int attempt = 0; attempt < 64; ++attempt) {
    const BigInt c = BigInt(static_cast<unsigned long>(rng() % 1000003 + 1));
    BigInt y = BigInt(static_cast<unsigned long>(rng() % 1000003 + 2));
    BigInt x, ys, q = 1, g = 1, t;
    const unsigned long m = 128;
    unsigned long r = 1;
    auto step = [&](BigInt& v) {
      v = v * v + c;
      mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
    };
    do {
      x = y;
      for (unsigned long i = 0; i < r; ++i) step(y);
      unsigned long k = 0;
      do {
        ys = y;
        const unsigned long lim = std::min(m, r - k);
        for (unsigned long i = 0; i < lim; ++i) {
          step(y);
          t = abs(BigInt(x - y));
          q *= t;
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        g = gcd(q, n);
        k += m;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1 && r < (1ul << 40));
    if (g == n) {
      do {
        step(ys);
        g = gcd(abs(BigInt(x - ys)), n);
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  throw NumericError("pollard rho failed to split " + n.get_str(), 0.0, 0.0);
}

inline void factor_into(const BigInt& n, std::vector<BigInt>& out, std::uint64_t seed) {
  if (n == 1) return;
  if (is_probable_prime(n)) {
    out.push_back(n);
    return;
  }
  const BigInt f = pollard_brent(n, seed);
  factor_into(f, out, seed + 1);
  factor_into(BigInt(n / f), out, seed + 2);
}

}  // namespace detail

// Prime factorisation with multiplicity, ascending. Trial division below 10^6, then
// Pollard-Brent rho with a fixed seed for whatever cofactor remains.
inline std::vector<BigInt> factor_integer(const BigInt& n) {
  if (sgn(n) <= 0) throw DomainError("factor_integer: n must be positive, got " + n.get_str());
  std::vector<BigInt> out;
  BigInt rest = n;
  auto strip = [&](unsigned long p) {
    while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      out.emplace_back(p);
      mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
    }
  };
  strip(2);
  for (unsigned long p = 3; p <= detail::kTrialDivisionLimit && rest > 1; p += 2) {
    if (rest < BigInt(p) * p) {
      out.push_back(rest);
      rest = 1;
      break;
    }
    strip(p);
  }
  if (rest > 1) detail::factor_into(rest, out, 0x5eed);
  std::sort(out.begin(), out.end());
  return out;
}

// Distinct primes dividing n, ascending.
inline std::vector<BigInt> prime_divisors(const BigInt& n) {
  auto f = factor_integer(abs(n));
  f.erase(std::unique(f.begin(), f.end()), f.end());
  return f;
}

}  // namespace arithdyn
