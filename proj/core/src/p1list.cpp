#include "dhecke/p1list.hpp"

#include <numeric>
#include <string>

#include "dhecke/error.hpp"
#include "dhecke/ffarith.hpp"

namespace dhecke {

std::int64_t P1List::expected_size(std::int64_t level) {
  std::int64_t n = level;
  for (std::int64_t l : prime_factors(level)) n = n / l * (l + 1);
  return n;
}

P1List::P1List(std::int64_t level) : level_(level) {
  if (level < 1) throw Error(ErrorCode::BadIndex, "level must be positive, got " + std::to_string(level));
  const auto m = static_cast<std::size_t>(level);
  inverse_.assign(m, -1);
  for (std::int64_t x = 0; x < level; ++x) {
    if (std::gcd(x, level) == 1) inverse_[static_cast<std::size_t>(x)] = level == 1 ? 0 : inv_mod(x, level);
  }
  unit_d_index_.assign(m, -1);
  unit_c_index_.assign(m, -1);

  for (std::int64_t x = 0; x < level; ++x) {
    unit_d_index_[static_cast<std::size_t>(x)] = static_cast<std::int32_t>(elements_.size());
    elements_.push_back({x, level == 1 ? 0 : 1});
  }
  for (std::int64_t y = 0; y < level; ++y) {
    if (inverse(y) >= 0) continue;
    unit_c_index_[static_cast<std::size_t>(y)] = static_cast<std::int32_t>(elements_.size());
    elements_.push_back({1, y});
  }
  // Both coordinates non-units: c runs over proper divisors g > 1 of M.
  for (std::int64_t g = 2; g < level; ++g) {
    if (level % g != 0) continue;
    for (std::int64_t y = 0; y < level; ++y) {
      if (inverse(y) >= 0 || std::gcd(g, y) != 1) continue;
      const P1Element e = normalize_nonunits(g, y);
      const std::int64_t key = e.c * level + e.d;
      if (other_index_.emplace(key, static_cast<std::int32_t>(elements_.size())).second) elements_.push_back(e);
    }
  }
  if (static_cast<std::int64_t>(elements_.size()) != expected_size(level)) {
    throw Error(ErrorCode::Internal, "P1 enumeration produced " + std::to_string(elements_.size()) +
                                         " elements at level " + std::to_string(level));
  }
}

P1Element P1List::normalize_nonunits(std::int64_t c, std::int64_t d) const {
  const std::int64_t M = level_;
  const std::int64_t g = std::gcd(c, M);
  const std::int64_t Mg = M / g;
  // Scale so that c becomes g: lambda = (c/g)^{-1} mod M/g, lifted to a unit.
  std::int64_t lambda = Mg == 1 ? 1 : inv_mod(c / g, Mg);
  while (std::gcd(lambda, M) != 1) lambda += Mg;
  const std::int64_t d0 = static_cast<std::int64_t>(mul_mod(static_cast<std::uint64_t>(lambda),
                                                            static_cast<std::uint64_t>(d), static_cast<std::uint64_t>(M)));
  // Remaining freedom: units congruent to 1 mod M/g.
  std::int64_t best = d0;
  for (std::int64_t k = 1; k < g; ++k) {
    const std::int64_t t = 1 + k * Mg;
    if (std::gcd(t, M) != 1) continue;
    const std::int64_t cand = (t % M) * d0 % M;
    if (cand < best) best = cand;
  }
  return {g, best};
}

std::optional<P1Element> P1List::normalize(std::int64_t c, std::int64_t d) const {
  const std::int64_t M = level_;
  if (M == 1) return P1Element{0, 0};
  c = mod(c, M);
  d = mod(d, M);
  if (std::gcd(std::gcd(c, d), M) != 1) return std::nullopt;
  if (const std::int64_t di = inverse(d); di >= 0) return P1Element{c * di % M, 1};
  if (const std::int64_t ci = inverse(c); ci >= 0) return P1Element{1, d * ci % M};
  return normalize_nonunits(c, d);
}

std::optional<std::size_t> P1List::index(std::int64_t c, std::int64_t d) const {
  const std::int64_t M = level_;
  if (M == 1) return 0;
  c %= M;
  if (c < 0) c += M;
  d %= M;
  if (d < 0) d += M;
  if (const std::int64_t di = inverse(d); di >= 0) {
    return static_cast<std::size_t>(unit_d_index_[static_cast<std::size_t>(c * di % M)]);
  }
  if (const std::int64_t ci = inverse(c); ci >= 0) {
    return static_cast<std::size_t>(unit_c_index_[static_cast<std::size_t>(d * ci % M)]);
  }
  if (std::gcd(std::gcd(c, d), M) != 1) return std::nullopt;
  const P1Element e = normalize_nonunits(c, d);
  const auto it = other_index_.find(e.c * M + e.d);
  if (it == other_index_.end()) throw Error(ErrorCode::Internal, "P1 lookup miss");
  return static_cast<std::size_t>(it->second);
}

}  // namespace dhecke
