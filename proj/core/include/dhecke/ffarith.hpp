#pragma once

// Exact arithmetic in (Z/m), primitive roots and discrete logarithms, and the
// projection of (Z/q)^* onto its quotient of order p.

#include <cstdint>
#include <optional>
#include <vector>

namespace dhecke {

/// An element of Z/modulus with 0 <= value < modulus.
struct Residue {
  std::int64_t value = 0;
  std::int64_t modulus = 1;

  Residue() = default;
  Residue(std::int64_t v, std::int64_t m);

  friend bool operator==(const Residue&, const Residue&) = default;
  Residue operator+(const Residue& o) const;
  Residue operator-(const Residue& o) const;
  Residue operator*(const Residue& o) const;
};

/// Floor-style reduction into [0, m).
std::int64_t mod(std::int64_t a, std::int64_t m);
std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);

/// base^exp mod modulus. Negative exponents go through the inverse and throw
/// NonInvertible when gcd(base, modulus) != 1.
std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t modulus);
Residue pow_mod(const Residue& base, std::int64_t exp);

/// Inverse of a modulo m; throws NonInvertible.
std::int64_t inv_mod(std::int64_t a, std::int64_t m);

/// Extended gcd: returns g and sets s, t with s*a + t*b = g >= 0.
std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t);

bool is_prime(std::int64_t n);
std::vector<std::int64_t> prime_factors(std::int64_t n);
std::vector<std::int64_t> primes_up_to(std::int64_t n);

/// Multiplicative order test: is g a generator of (Z/q)^*.
bool is_primitive_root(std::int64_t g, std::int64_t q);

/// Smallest positive primitive root modulo the prime q.
Residue primitive_root(std::int64_t q);

/// The k-th smallest primitive root (k = 0 is primitive_root(q)).
Residue nth_primitive_root(std::int64_t q, int k);

/// Legendre symbol (a/q) for an odd prime q, in {-1, 0, 1}.
int legendre(std::int64_t a, std::int64_t q);

/// Discrete logarithm of x to the given generator (default: smallest
/// primitive root). Exhaustive scan for q < 10^4, baby-step/giant-step above.
std::int64_t dlog(std::int64_t q, std::int64_t x);
std::int64_t dlog(std::int64_t q, std::int64_t x, const Residue& generator);

/// Class of x in the order-p quotient of (Z/q)^*, as dlog(x) mod p.
struct PLogClass {
  std::int64_t exponent = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  Residue generator;

  bool is_zero() const { return exponent == 0; }
  friend bool operator==(const PLogClass&, const PLogClass&) = default;
};

PLogClass plog(std::int64_t q, std::int64_t p, std::int64_t x);
PLogClass plog(std::int64_t q, std::int64_t p, std::int64_t x, const Residue& generator);

/// a / b in F_p for plog classes sharing (p, q, generator); nullopt when b == 0.
std::optional<std::int64_t> log_ratio(const PLogClass& a, const PLogClass& b);

}  // namespace dhecke
