#pragma once

// The projective line P^1(Z/M): canonical representatives and a fast index.

#include <cstdint>
#include <optional>
#include <unordered_map>
#include <utility>
#include <vector>

namespace dhecke {

struct P1Element {
  std::int64_t c = 0;
  std::int64_t d = 0;
  friend bool operator==(const P1Element&, const P1Element&) = default;
};

/// Canonical forms: (x : 1) when d is a unit, (1 : y) when only c is a unit,
/// otherwise (g : y) with g = gcd(c, M) and y minimal under the remaining
/// scalars.
class P1List {
 public:
  explicit P1List(std::int64_t level);

  std::int64_t level() const { return level_; }
  std::size_t size() const { return elements_.size(); }
  const P1Element& operator[](std::size_t i) const { return elements_[i]; }
  const std::vector<P1Element>& elements() const { return elements_; }

  /// Canonical representative; nullopt when gcd(c, d, M) != 1.
  std::optional<P1Element> normalize(std::int64_t c, std::int64_t d) const;

  /// Index of (c : d); nullopt when gcd(c, d, M) != 1.
  std::optional<std::size_t> index(std::int64_t c, std::int64_t d) const;

  /// M * prod_{l | M} (1 + 1/l).
  static std::int64_t expected_size(std::int64_t level);

 private:
  std::int64_t inverse(std::int64_t x) const { return inverse_[static_cast<std::size_t>(x)]; }
  P1Element normalize_nonunits(std::int64_t c, std::int64_t d) const;

  std::int64_t level_;
  std::vector<P1Element> elements_;
  std::vector<std::int64_t> inverse_;      // -1 for non-units
  std::vector<std::int32_t> unit_d_index_;  // (x : 1) -> index
  std::vector<std::int32_t> unit_c_index_;  // (1 : y), y a non-unit -> index
  std::unordered_map<std::int64_t, std::int32_t> other_index_;
};

}  // namespace dhecke
