#include "doctest.h"

#include "dhecke/error.hpp"
#include "dhecke/ffarith.hpp"
#include "oracles.hpp"

using namespace dhecke;

TEST_CASE("pow_mod examples") {
  CHECK(pow_mod(2, 10, 11) == 1);
  CHECK(pow_mod(4, -1, 11) == 3);
  CHECK(pow_mod(2, 16, 11) == 9);
  CHECK(pow_mod(Residue(2, 11), 16).value == 9);
}

TEST_CASE("pow_mod negative exponent needs a unit") {
  try {
    pow_mod(3, -1, 12);
    FAIL("expected NonInvertible");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NonInvertible);
  }
}

TEST_CASE("pow_mod agrees with repeated multiplication") {
  for (std::int64_t m : {7, 12, 101, 9973}) {
    for (std::int64_t b = 0; b < 20; ++b) {
      for (std::int64_t e = 0; e < 40; ++e) CHECK(pow_mod(b, e, m) == oracle::powmod(b, e, m));
    }
  }
}

TEST_CASE("primitive_root examples and brute force") {
  CHECK(primitive_root(11).value == 2);
  CHECK(primitive_root(23).value == 5);
  CHECK(primitive_root(3).value == 2);
  for (std::int64_t q = 3; q <= 400; ++q) {
    if (!oracle::prime(q)) continue;
    CHECK(primitive_root(q).value == oracle::smallest_generator(q));
  }
}

TEST_CASE("dlog examples") {
  CHECK(dlog(11, 1) == 0);
  CHECK(dlog(11, 3) == 8);
  CHECK(dlog(11, 6) == 9);
}

TEST_CASE("generator to the dlog recovers x for q <= 200") {
  for (std::int64_t q = 3; q <= 200; ++q) {
    if (!oracle::prime(q)) continue;
    const auto g = primitive_root(q);
    for (std::int64_t x = 1; x < q; ++x) {
      const auto k = dlog(q, x);
      REQUIRE(pow_mod(g.value, k, q) == x);
      CHECK(k == oracle::dlog(q, x, g.value));
    }
  }
}

TEST_CASE("baby-step giant-step above the scan threshold") {
  const std::int64_t q = 100003;
  const auto g = primitive_root(q);
  for (std::int64_t x : {1LL, 2LL, 12345LL, 99999LL, 100002LL}) {
    CHECK(pow_mod(g.value, dlog(q, x), q) == x);
  }
}

TEST_CASE("plog examples") {
  CHECK(plog(11, 5, 1).exponent == 0);
  CHECK(plog(11, 5, 6).exponent == 4);
  CHECK(plog(11, 5, 3).exponent == 3);
}

TEST_CASE("plog rejects p not dividing q - 1") {
  try {
    plog(11, 7, 3);
    FAIL("expected IncompatiblePrimes");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IncompatiblePrimes);
  }
}

TEST_CASE("plog is a homomorphism that kills p-th powers") {
  const std::vector<std::pair<std::int64_t, std::int64_t>> pairs = {{11, 5}, {43, 7}, {67, 11}, {149, 37}, {83, 41}};
  for (const auto& [q, p] : pairs) {
    for (std::int64_t x = 1; x < q; ++x) {
      CHECK(plog(q, p, pow_mod(x, p, q)).exponent == 0);
      for (std::int64_t y = 1; y < q; y += 7) {
        const auto lhs = plog(q, p, x * y % q).exponent;
        CHECK(lhs == (plog(q, p, x).exponent + plog(q, p, y).exponent) % p);
      }
    }
  }
}

TEST_CASE("log ratios do not depend on the generator") {
  const std::vector<std::pair<std::int64_t, std::int64_t>> pairs = {{11, 5}, {61, 5}, {43, 7}, {137, 17}, {107, 53}};
  for (const auto& [q, p] : pairs) {
    const auto g0 = primitive_root(q);
    const auto g1 = nth_primitive_root(q, 1);
    REQUIRE(g0.value != g1.value);
    for (std::int64_t a = 2; a < q; a += 3) {
      for (std::int64_t b = 2; b < q; b += 5) {
        const auto r0 = log_ratio(plog(q, p, a, g0), plog(q, p, b, g0));
        const auto r1 = log_ratio(plog(q, p, a, g1), plog(q, p, b, g1));
        REQUIRE(r0.has_value() == r1.has_value());
        if (r0) CHECK(*r0 == *r1);
      }
    }
  }
}

TEST_CASE("log_ratio of zero denominator is undefined") {
  CHECK_FALSE(log_ratio(plog(11, 5, 3), plog(11, 5, 1)).has_value());
  CHECK(log_ratio(plog(11, 5, 6), plog(11, 5, 3)) == std::optional<std::int64_t>((4 * 2) % 5));
}

TEST_CASE("legendre matches Euler's criterion") {
  for (std::int64_t q : {3, 5, 23, 31, 149}) {
    for (std::int64_t a = 0; a < 2 * q; ++a) {
      const auto e = oracle::powmod(a, (q - 1) / 2, q);
      const int expected = e == 0 ? 0 : (e == 1 ? 1 : -1);
      CHECK(legendre(a, q) == expected);
    }
  }
}

TEST_CASE("inv_mod and xgcd") {
  std::int64_t s = 0, t = 0;
  CHECK(xgcd(240, 46, s, t) == 2);
  CHECK(s * 240 + t * 46 == 2);
  for (std::int64_t a = 1; a < 101; ++a) CHECK(a * inv_mod(a, 101) % 101 == 1);
  CHECK_THROWS_AS(inv_mod(6, 9), Error);
}
