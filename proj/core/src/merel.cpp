#include "dhecke/merel.hpp"

#include <string>

#include "dhecke/error.hpp"

namespace dhecke {

namespace {

void require_merel_primes(std::int64_t q, std::int64_t p) {
  if (p < 5) throw Error(ErrorCode::IncompatiblePrimes, "p must be at least 5, got " + std::to_string(p));
  if (!is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not prime");
  if ((q - 1) % p != 0) {
    throw Error(ErrorCode::IncompatiblePrimes,
                std::to_string(p) + " does not divide " + std::to_string(q) + " - 1");
  }
}

}  // namespace

MerelUnit merel_unit(std::int64_t q) {
  if (q == 2 || !is_prime(q)) throw Error(ErrorCode::InvalidPrime, std::to_string(q) + " is not an odd prime");
  const Residue zeta = (q % 3 == 2) ? Residue(1, q) : Residue(pow_mod(2, (q - 1) / 3, q), q);
  Residue value = zeta * zeta;
  for (std::int64_t i = 1; i <= (q - 1) / 2; ++i) {
    // Exponent -8i reduced into [0, q-1) keeps everything word sized.
    value = value * Residue(pow_mod(i, mod(-8 * i, q - 1), q), q);
  }
  return MerelUnit{q, value, zeta};
}

PLogClass merel_class(std::int64_t q, std::int64_t p, const Residue& generator) {
  require_merel_primes(q, p);
  return plog(q, p, merel_unit(q).value.value, generator);
}

PLogClass merel_class(std::int64_t q, std::int64_t p) {
  return merel_class(q, p, primitive_root(q));
}

bool mazur_nonvanishing(std::int64_t q, std::int64_t p) { return !merel_class(q, p).is_zero(); }

}  // namespace dhecke
