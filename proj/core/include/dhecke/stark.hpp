#pragma once

// The cubic fields of discriminant -23 and -31, the root theta of the
// defining polynomial (a unit of norm one), and its reduction at the degree
// one prime above a prime q with Frobenius a transposition.

#include <array>
#include <cstdint>
#include <vector>

#include "dhecke/ffarith.hpp"

namespace dhecke {

/// x^3 + a x^2 + b x + c, stored as {c, b, a}.
struct CubicField {
  std::int64_t disc = 0;
  std::array<std::int64_t, 3> coeffs{};

  std::int64_t evaluate_mod(std::int64_t x, std::int64_t q) const;
};

/// Discriminant of a monic cubic.
std::int64_t cubic_discriminant(const std::array<std::int64_t, 3>& coeffs);

/// x^3 - x - 1 for -23 and x^3 + x - 1 for -31; throws UnsupportedDiscriminant.
CubicField cubic_poly(std::int64_t disc);

/// All roots mod q by a full scan; throws RamifiedPrime when q | disc.
std::vector<Residue> roots_mod_q(const CubicField& field, std::int64_t q);

/// The single root mod q; throws NotTransposition unless there is exactly one.
Residue unit_reduction(const CubicField& field, std::int64_t q);

/// plog of the reduced unit.
PLogClass stark_class(const CubicField& field, std::int64_t q, std::int64_t p);
PLogClass stark_class(const CubicField& field, std::int64_t q, std::int64_t p, const Residue& generator);

}  // namespace dhecke
