#include "dhecke/stark.hpp"

#include <string>

#include "dhecke/error.hpp"

namespace dhecke {

std::int64_t CubicField::evaluate_mod(std::int64_t x, std::int64_t q) const {
  std::int64_t acc = 1;
  for (int i = 2; i >= 0; --i) acc = mod(acc * x + coeffs[static_cast<std::size_t>(i)], q);
  return acc;
}

std::int64_t cubic_discriminant(const std::array<std::int64_t, 3>& coeffs) {
  const std::int64_t c = coeffs[0], b = coeffs[1], a = coeffs[2];
  return a * a * b * b - 4 * b * b * b - 4 * a * a * a * c - 27 * c * c + 18 * a * b * c;
}

CubicField cubic_poly(std::int64_t disc) {
  CubicField field;
  field.disc = disc;
  if (disc == -23) {
    field.coeffs = {-1, -1, 0};
  } else if (disc == -31) {
    field.coeffs = {-1, 1, 0};
  } else {
    throw Error(ErrorCode::UnsupportedDiscriminant, "no built-in cubic field of discriminant " + std::to_string(disc));
  }
  if (cubic_discriminant(field.coeffs) != disc) {
    throw Error(ErrorCode::Internal, "defining polynomial has the wrong discriminant");
  }
  return field;
}

std::vector<Residue> roots_mod_q(const CubicField& field, std::int64_t q) {
  if (!is_prime(q)) throw Error(ErrorCode::InvalidPrime, std::to_string(q) + " is not prime");
  if (field.disc % q == 0) {
    throw Error(ErrorCode::RamifiedPrime, std::to_string(q) + " divides " + std::to_string(field.disc));
  }
  std::vector<Residue> out;
  for (std::int64_t x = 0; x < q; ++x) {
    if (field.evaluate_mod(x, q) == 0) out.emplace_back(x, q);
  }
  return out;
}

Residue unit_reduction(const CubicField& field, std::int64_t q) {
  const auto roots = roots_mod_q(field, q);
  if (roots.size() != 1) {
    throw Error(ErrorCode::NotTransposition, "defining polynomial has " + std::to_string(roots.size()) + " roots mod " +
                                                 std::to_string(q));
  }
  return roots.front();
}

PLogClass stark_class(const CubicField& field, std::int64_t q, std::int64_t p) {
  return stark_class(field, q, p, primitive_root(q));
}

PLogClass stark_class(const CubicField& field, std::int64_t q, std::int64_t p, const Residue& generator) {
  return plog(q, p, unit_reduction(field, q).value, generator);
}

}  // namespace dhecke
