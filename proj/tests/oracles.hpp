#pragma once

// Independent reference computations for the tests. Each one is written the
// slow, obvious way and shares no code with the library.

#include <cstdint>
#include <map>
#include <numeric>
#include <vector>

namespace oracle {

inline std::int64_t powmod(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  for (std::int64_t i = 0; i < e; ++i) r = r * b % m;
  return r;
}

inline bool prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

/// Smallest g whose powers reach every unit.
inline std::int64_t smallest_generator(std::int64_t q) {
  for (std::int64_t g = 2; g < q; ++g) {
    std::int64_t x = 1, order = 0;
    do {
      x = x * g % q;
      ++order;
    } while (x != 1);
    if (order == q - 1) return g;
  }
  return 1;
}

/// Exponent k with g^k = x, by walking the powers of g.
inline std::int64_t dlog(std::int64_t q, std::int64_t x, std::int64_t g) {
  std::int64_t y = 1;
  for (std::int64_t k = 0; k < q - 1; ++k) {
    if (y == x % q) return k;
    y = y * g % q;
  }
  return -1;
}

/// zeta^2 prod_{i <= (q-1)/2} i^{-8i} by repeated multiplication and a
/// search for the inverse.
inline std::int64_t merel_unit(std::int64_t q) {
  std::int64_t prod = 1;
  for (std::int64_t i = 1; i <= (q - 1) / 2; ++i) {
    for (std::int64_t k = 0; k < 8 * i; ++k) prod = prod * i % q;
  }
  const std::int64_t zeta = q % 3 == 1 ? powmod(2, (q - 1) / 3, q) : 1;
  for (std::int64_t x = 1; x < q; ++x) {
    if (x * prod % q == zeta * zeta % q) return x;
  }
  return 0;
}

/// Truncated product q^shift prod_d prod_{n >= 1} (1 - q^{dn})^{e_d}, expanded
/// factor by factor.
inline std::vector<std::int64_t> eta_product(const std::map<std::int64_t, int>& exps, std::int64_t shift,
                                             std::size_t prec) {
  std::vector<std::int64_t> f(prec, 0);
  if (static_cast<std::size_t>(shift) < prec) f[static_cast<std::size_t>(shift)] = 1;
  for (const auto& [d, e] : exps) {
    for (int rep = 0; rep < e; ++rep) {
      for (std::size_t k = static_cast<std::size_t>(d); k < prec; k += static_cast<std::size_t>(d)) {
        for (std::size_t i = prec; i-- > k;) f[i] -= f[i - k];
      }
    }
  }
  return f;
}

/// Representation counts of a x^2 + b x y + c y^2 over a generous box.
inline std::vector<std::int64_t> theta(std::int64_t a, std::int64_t b, std::int64_t c, std::size_t prec) {
  std::vector<std::int64_t> out(prec, 0);
  const auto box = static_cast<std::int64_t>(prec) + 2;
  for (std::int64_t x = -box; x <= box; ++x) {
    for (std::int64_t y = -box; y <= box; ++y) {
      const std::int64_t v = a * x * x + b * x * y + c * y * y;
      if (v >= 0 && v < static_cast<std::int64_t>(prec)) ++out[static_cast<std::size_t>(v)];
    }
  }
  return out;
}

/// Genus of X_0(M) from the index, elliptic points and cusps.
inline std::int64_t genus_x0(std::int64_t m) {
  std::int64_t mu = m, nu2 = 1, nu3 = 1, cusps = 0;
  std::int64_t n = m;
  std::vector<std::int64_t> primes;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      primes.push_back(p);
      while (n % p == 0) n /= p;
    }
  }
  if (n > 1) primes.push_back(n);
  for (auto p : primes) mu = mu / p * (p + 1);
  for (auto p : primes) {
    nu2 *= p == 2 ? 1 : (p % 4 == 1 ? 2 : 0);
    nu3 *= p == 3 ? 1 : (p % 3 == 1 ? 2 : 0);
  }
  if (m % 4 == 0) nu2 = 0;
  if (m % 9 == 0) nu3 = 0;
  for (std::int64_t d = 1; d <= m; ++d) {
    if (m % d != 0) continue;
    const std::int64_t g = std::gcd(d, m / d);
    std::int64_t phi = 0;
    for (std::int64_t k = 1; k <= g; ++k) phi += std::gcd(k, g) == 1;
    cusps += phi;
  }
  // 12 g = 12 + mu - 3 nu2 - 4 nu3 - 6 cusps
  return (12 + mu - 3 * nu2 - 4 * nu3 - 6 * cusps) / 12;
}

/// sum_{d | n, q !| d} d.
inline std::int64_t sigma_prime_to(std::int64_t n, std::int64_t q) {
  std::int64_t s = 0;
  for (std::int64_t d = 1; d <= n; ++d) {
    if (n % d == 0 && d % q != 0) s += d;
  }
  return s;
}

/// Roots of x^3 + a x^2 + b x + c mod q by trying every residue.
inline std::vector<std::int64_t> cubic_roots(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t q) {
  std::vector<std::int64_t> out;
  for (std::int64_t x = 0; x < q; ++x) {
    const std::int64_t v = ((x * x % q * x + a * x % q * x + b * x + c) % q + q) % q;
    if (v == 0) out.push_back(x);
  }
  return out;
}

inline std::int64_t inverse(std::int64_t a, std::int64_t p) {
  a = ((a % p) + p) % p;
  for (std::int64_t x = 1; x < p; ++x) {
    if (a * x % p == 1) return x;
  }
  return 0;
}

}  // namespace oracle
