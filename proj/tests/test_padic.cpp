#include "doctest.h"

#include <random>

#include "dhecke/error.hpp"
#include "dhecke/padic.hpp"
#include "matrix_helpers.hpp"

using namespace dhecke;
using testing_helpers::from_rows;

namespace {

PadicMatrix random_matrix(std::size_t r, std::size_t c, std::uint64_t p, int k, std::mt19937_64& rng) {
  PadicMatrix m(r, c, p, k);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < c; ++j) m.set_raw(i, j, rng() % m.modulus());
  }
  return m;
}

}  // namespace

TEST_CASE("rational_mod") {
  CHECK(rational_mod(mpq_class(1, 2), 25) == 13);
  CHECK(rational_mod(mpq_class(-3, 7), 5) == (5 - 3 * 3 % 5) % 5);
  CHECK_THROWS_AS(rational_mod(mpq_class(1, 5), 25), Error);
}

TEST_CASE("inverse and solve over F_p") {
  std::mt19937_64 rng(7);
  for (std::uint64_t p : {5u, 7u, 41u}) {
    for (int trial = 0; trial < 20; ++trial) {
      const auto a = random_matrix(6, 6, p, 1, rng);
      if (rank(a) < 6) continue;
      CHECK(a * inverse(a) == PadicMatrix::identity(6, p, 1));
      const auto b = random_matrix(6, 3, p, 1, rng);
      CHECK(a * solve(a, b) == b);
    }
  }
}

TEST_CASE("solve keeps p-adic precision for unimodular systems") {
  std::mt19937_64 rng(11);
  const std::uint64_t p = 5;
  for (int trial = 0; trial < 20; ++trial) {
    const auto a = random_matrix(5, 5, p, 6, rng);
    if (rank(a.reduced(1)) < 5) continue;
    const auto x = random_matrix(5, 2, p, 6, rng);
    const auto x2 = solve(a, a * x);
    CHECK(x2.precision() == 6);
    CHECK(x2 == x);
  }
}

TEST_CASE("left_kernel annihilates and has the expected size") {
  const auto a = from_rows({{1, 2}, {2, 4}, {0, 1}, {3, 7}}, 7, 3);
  const auto k = left_kernel(a, 2);
  CHECK(k.rows() == 2);
  CHECK((k * a).is_zero());
  CHECK_THROWS_AS(left_kernel(a, 3), Error);
}

TEST_CASE("rref and rank") {
  const auto a = from_rows({{0, 2, 4}, {1, 1, 1}, {1, 3, 5}}, 7, 1);
  const auto r = rref(a);
  CHECK(r.pivots == std::vector<std::size_t>{0, 1});
  CHECK(r.transform * a == r.reduced);
  CHECK(rank(a) == 2);
  CHECK(independent_rows(a) == std::vector<std::size_t>{0, 1});
}

TEST_CASE("saturate divides out content and keeps the row space") {
  const std::uint64_t p = 5;
  const auto rows = from_rows({{5, 10, 15, 0}, {1, 0, 5, 25}, {2, 10, 25, 25}}, p, 4);
  const auto sat = saturate(rows);
  CHECK(sat.basis.rows() == 3);
  CHECK(rank(sat.basis.reduced(1)) == 3);
  for (std::size_t i = 0; i < sat.pivots.size(); ++i) {
    CHECK(sat.basis(i, sat.pivots[i]) == 1);
  }
}

TEST_CASE("charpoly agrees with det(x - A) at every point") {
  std::mt19937_64 rng(3);
  for (std::uint64_t p : {5u, 7u, 13u}) {
    for (int trial = 0; trial < 10; ++trial) {
      const auto a = random_matrix(5, 5, p, 1, rng);
      const auto c = charpoly(a);
      REQUIRE(c.size() == 6);
      CHECK(c[5] == 1);
      for (std::int64_t x = 0; x < static_cast<std::int64_t>(p); ++x) {
        std::vector<std::vector<std::int64_t>> m(5, std::vector<std::int64_t>(5));
        for (std::size_t i = 0; i < 5; ++i) {
          for (std::size_t j = 0; j < 5; ++j) {
            m[i][j] = ((i == j ? x : 0) - static_cast<std::int64_t>(a(i, j)) + static_cast<std::int64_t>(p)) %
                      static_cast<std::int64_t>(p);
          }
        }
        std::int64_t value = 0;
        for (std::size_t k = c.size(); k-- > 0;) {
          value = (value * x + static_cast<std::int64_t>(c[k])) % static_cast<std::int64_t>(p);
        }
        CHECK(value == testing_helpers::det_mod(m, static_cast<std::int64_t>(p)));
      }
    }
  }
}
