#pragma once

#include <cstdint>

#include "dhecke/ffarith.hpp"

namespace dhecke {

/// The Merel unit zeta^2 * prod_{i=1}^{(q-1)/2} i^{-8i} in (Z/q)^*.
struct MerelUnit {
  std::int64_t q = 0;
  Residue value;
  Residue zeta;  // 1 when q = 2 mod 3, else 2^{(q-1)/3}
};

MerelUnit merel_unit(std::int64_t q);

/// Projection of the Merel unit to the order-p quotient of (Z/q)^*.
PLogClass merel_class(std::int64_t q, std::int64_t p);
PLogClass merel_class(std::int64_t q, std::int64_t p, const Residue& generator);

/// Mazur's criterion: the Eisenstein component of S_2(q) mod p has rank one
/// exactly when the Merel class is nonzero.
bool mazur_nonvanishing(std::int64_t q, std::int64_t p);

}  // namespace dhecke
