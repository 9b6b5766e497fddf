#include "dhecke/ffarith.hpp"

#include <cmath>
#include <numeric>
#include <string>
#include <unordered_map>

#include "dhecke/error.hpp"

namespace dhecke {

namespace {

constexpr std::int64_t kExhaustiveDlogLimit = 10000;

void require_modulus(std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::Internal, "modulus must be positive, got " + std::to_string(m));
}

}  // namespace

std::int64_t mod(std::int64_t a, std::int64_t m) {
  std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>((static_cast<unsigned __int128>(a) * b) % m);
}

Residue::Residue(std::int64_t v, std::int64_t m) : value(0), modulus(m) {
  require_modulus(m);
  value = mod(v, m);
}

Residue Residue::operator+(const Residue& o) const {
  if (o.modulus != modulus) throw Error(ErrorCode::RingMismatch, "residue moduli differ");
  return Residue(value + o.value, modulus);
}

Residue Residue::operator-(const Residue& o) const {
  if (o.modulus != modulus) throw Error(ErrorCode::RingMismatch, "residue moduli differ");
  return Residue(value - o.value, modulus);
}

Residue Residue::operator*(const Residue& o) const {
  if (o.modulus != modulus) throw Error(ErrorCode::RingMismatch, "residue moduli differ");
  return Residue(static_cast<std::int64_t>(mul_mod(value, o.value, modulus)), modulus);
}

std::int64_t xgcd(std::int64_t a, std::int64_t b, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, cur_s = 0, old_t = 0, cur_t = 1;
  while (r != 0) {
    std::int64_t quot = old_r / r;
    std::int64_t tmp = old_r - quot * r;
    old_r = r;
    r = tmp;
    tmp = old_s - quot * cur_s;
    old_s = cur_s;
    cur_s = tmp;
    tmp = old_t - quot * cur_t;
    old_t = cur_t;
    cur_t = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  s = old_s;
  t = old_t;
  return old_r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t m) {
  require_modulus(m);
  std::int64_t s = 0, t = 0;
  std::int64_t g = xgcd(mod(a, m), m, s, t);
  if (g != 1) {
    throw Error(ErrorCode::NonInvertible,
                std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  return mod(s, m);
}

std::int64_t pow_mod(std::int64_t base, std::int64_t exp, std::int64_t modulus) {
  require_modulus(modulus);
  if (modulus == 1) return 0;
  std::uint64_t b = static_cast<std::uint64_t>(mod(base, modulus));
  if (exp < 0) {
    b = static_cast<std::uint64_t>(inv_mod(static_cast<std::int64_t>(b), modulus));
    exp = -exp;
  }
  std::uint64_t result = 1;
  auto e = static_cast<std::uint64_t>(exp);
  const auto m = static_cast<std::uint64_t>(modulus);
  while (e) {
    if (e & 1U) result = mul_mod(result, b, m);
    b = mul_mod(b, b, m);
    e >>= 1U;
  }
  return static_cast<std::int64_t>(result);
}

Residue pow_mod(const Residue& base, std::int64_t exp) {
  return Residue(pow_mod(base.value, exp, base.modulus), base.modulus);
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t small : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % small == 0) return n == small;
  }
  // Deterministic Miller-Rabin for 64-bit inputs.
  std::uint64_t d = static_cast<std::uint64_t>(n) - 1;
  int s = 0;
  while ((d & 1U) == 0) {
    d >>= 1U;
    ++s;
  }
  const auto un = static_cast<std::uint64_t>(n);
  for (std::uint64_t a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
    std::uint64_t x = static_cast<std::uint64_t>(pow_mod(static_cast<std::int64_t>(a), static_cast<std::int64_t>(d), n));
    if (x == 1 || x == un - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, un);
      if (x == un - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::int64_t> prime_factors(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 0) n = -n;
  for (std::int64_t f = 2; f * f <= n; ++f) {
    if (n % f == 0) {
      out.push_back(f);
      while (n % f == 0) n /= f;
    }
  }
  if (n > 1) out.push_back(n);
  return out;
}

std::vector<std::int64_t> primes_up_to(std::int64_t n) {
  std::vector<std::int64_t> out;
  if (n < 2) return out;
  std::vector<bool> composite(static_cast<std::size_t>(n) + 1, false);
  for (std::int64_t i = 2; i <= n; ++i) {
    if (composite[static_cast<std::size_t>(i)]) continue;
    out.push_back(i);
    for (std::int64_t j = i * i; j <= n; j += i) composite[static_cast<std::size_t>(j)] = true;
  }
  return out;
}

bool is_primitive_root(std::int64_t g, std::int64_t q) {
  g = mod(g, q);
  if (g == 0) return false;
  if (q == 2) return g == 1;
  for (std::int64_t f : prime_factors(q - 1)) {
    if (pow_mod(g, (q - 1) / f, q) == 1) return false;
  }
  return true;
}

Residue nth_primitive_root(std::int64_t q, int k) {
  if (!is_prime(q)) throw Error(ErrorCode::InvalidPrime, std::to_string(q) + " is not prime");
  if (q == 2) return Residue(1, 2);
  int seen = 0;
  for (std::int64_t g = 2; g < q; ++g) {
    if (is_primitive_root(g, q)) {
      if (seen == k) return Residue(g, q);
      ++seen;
    }
  }
  throw Error(ErrorCode::BadIndex, "fewer than " + std::to_string(k + 1) + " primitive roots modulo " +
                                        std::to_string(q));
}

Residue primitive_root(std::int64_t q) { return nth_primitive_root(q, 0); }

int legendre(std::int64_t a, std::int64_t q) {
  a = mod(a, q);
  if (a == 0) return 0;
  return pow_mod(a, (q - 1) / 2, q) == 1 ? 1 : -1;
}

std::int64_t dlog(std::int64_t q, std::int64_t x, const Residue& generator) {
  x = mod(x, q);
  if (x == 0) throw Error(ErrorCode::ZeroArgument, "discrete log of 0 modulo " + std::to_string(q));
  const std::int64_t order = q - 1;
  const std::int64_t g = generator.value;
  if (q < kExhaustiveDlogLimit) {
    std::int64_t acc = 1;
    for (std::int64_t e = 0; e < order; ++e) {
      if (acc == x) return e;
      acc = static_cast<std::int64_t>(mul_mod(acc, g, q));
    }
    throw Error(ErrorCode::Internal, "generator does not generate (Z/" + std::to_string(q) + ")^*");
  }
  // Baby-step giant-step.
  const auto m = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(order))));
  std::unordered_map<std::int64_t, std::int64_t> baby;
  baby.reserve(static_cast<std::size_t>(m) * 2);
  std::int64_t acc = 1;
  for (std::int64_t j = 0; j < m; ++j) {
    baby.emplace(acc, j);
    acc = static_cast<std::int64_t>(mul_mod(acc, g, q));
  }
  const std::int64_t giant = pow_mod(g, -m, q);
  std::int64_t gamma = x;
  for (std::int64_t i = 0; i <= m; ++i) {
    auto it = baby.find(gamma);
    if (it != baby.end()) return mod(i * m + it->second, order);
    gamma = static_cast<std::int64_t>(mul_mod(gamma, giant, q));
  }
  throw Error(ErrorCode::Internal, "baby-step giant-step failed modulo " + std::to_string(q));
}

std::int64_t dlog(std::int64_t q, std::int64_t x) { return dlog(q, x, primitive_root(q)); }

PLogClass plog(std::int64_t q, std::int64_t p, std::int64_t x, const Residue& generator) {
  if (p <= 0 || (q - 1) % p != 0) {
    throw Error(ErrorCode::IncompatiblePrimes,
                "p = " + std::to_string(p) + " does not divide q - 1 = " + std::to_string(q - 1));
  }
  return PLogClass{dlog(q, x, generator) % p, p, q, generator};
}

PLogClass plog(std::int64_t q, std::int64_t p, std::int64_t x) {
  return plog(q, p, x, primitive_root(q));
}

std::optional<std::int64_t> log_ratio(const PLogClass& a, const PLogClass& b) {
  if (a.p != b.p || a.q != b.q || a.generator != b.generator) {
    throw Error(ErrorCode::IncompatiblePrimes, "log classes from different quotients");
  }
  if (b.exponent == 0) return std::nullopt;
  return static_cast<std::int64_t>(mul_mod(a.exponent, inv_mod(b.exponent, a.p), a.p));
}

}  // namespace dhecke
