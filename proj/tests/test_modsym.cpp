#include "doctest.h"

#include "dhecke/error.hpp"
#include "dhecke/modsym.hpp"
#include "dhecke/p1list.hpp"
#include "matrix_helpers.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

using namespace dhecke;
using testing_helpers::qidentity;
using testing_helpers::qmul;

namespace {

std::int64_t index_formula(std::int64_t m) {
  std::int64_t out = m, n = m;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    if (n % p != 0) continue;
    out = out / p * (p + 1);
    while (n % p == 0) n /= p;
  }
  if (n > 1) out = out / n * (n + 1);
  return out;
}

bool is_zero(const QVec& v) { return v.empty(); }

QVec sum(std::initializer_list<QVec> vs) {
  QVec out;
  for (const auto& v : vs) axpy(out, 1, v);
  return out;
}

}  // namespace

TEST_CASE("P1 list sizes") {
  CHECK(P1List(11).size() == 12);
  CHECK(P1List(1).size() == 1);
  CHECK(P1List(3197).size() == 3360);
  for (std::int64_t m = 1; m <= 200; ++m) {
    const P1List list(m);
    CHECK(static_cast<std::int64_t>(list.size()) == index_formula(m));
    CHECK(P1List::expected_size(m) == index_formula(m));
  }
}

TEST_CASE("P1 normalization is a bijection") {
  for (std::int64_t m : {12, 36, 45, 253}) {
    const P1List list(m);
    std::vector<int> hits(list.size(), 0);
    for (std::int64_t c = 0; c < m; ++c) {
      for (std::int64_t d = 0; d < m; ++d) {
        const auto idx = list.index(c, d);
        const bool unimodular = std::gcd(std::gcd(c, d), m) == 1;
        REQUIRE(idx.has_value() == unimodular);
        if (!idx) continue;
        ++hits[*idx];
        // Scaling by a unit does not change the point.
        for (std::int64_t u = 2; u < m; ++u) {
          if (std::gcd(u, m) == 1) {
            CHECK(list.index(c * u % m, d * u % m) == idx);
            break;
          }
        }
      }
    }
    for (int h : hits) CHECK(h > 0);
  }
}

TEST_CASE("cuspidal dimension is twice the genus for levels up to 100") {
  CHECK(ModularSymbolSpace(1).cuspidal_dimension() == 0);
  CHECK(ModularSymbolSpace(11).cuspidal_dimension() == 2);
  CHECK(ModularSymbolSpace(23).cuspidal_dimension() == 4);
  for (std::int64_t m = 1; m <= 100; ++m) {
    const ModularSymbolSpace s(m);
    CHECK(static_cast<std::int64_t>(s.cuspidal_dimension()) == 2 * oracle::genus_x0(m));
  }
}

TEST_CASE("cuspidal dimension at large pipeline levels and table primes") {
  std::vector<std::int64_t> levels = {2573, 3197, 3427, 4309};
  for (const auto& r : reference::kDisc23) levels.push_back(r.q);
  for (const auto& r : reference::kDisc31) levels.push_back(r.q);
  for (auto m : levels) {
    const ModularSymbolSpace s(m);
    CHECK(static_cast<std::int64_t>(s.cuspidal_dimension()) == 2 * oracle::genus_x0(m));
  }
}

TEST_CASE("number of cusps") {
  for (std::int64_t m = 1; m <= 100; ++m) {
    std::int64_t expected = 0;
    for (std::int64_t d = 1; d <= m; ++d) {
      if (m % d != 0) continue;
      const auto g = std::gcd(d, m / d);
      for (std::int64_t k = 1; k <= g; ++k) expected += std::gcd(k, g) == 1;
    }
    CHECK(static_cast<std::int64_t>(ModularSymbolSpace(m).cusps().size()) == expected);
  }
}

TEST_CASE("Manin relations hold for every symbol") {
  for (std::int64_t m : {11, 23, 36, 77, 253}) {
    const ModularSymbolSpace s(m);
    for (std::int64_t c = 0; c < m; ++c) {
      for (std::int64_t d = 0; d < m; ++d) {
        if (std::gcd(std::gcd(c, d), m) != 1) continue;
        // (c : d) S = (d : -c), (c : d) T = (d : -c - d), (c : d) T^2 = (-c - d : c).
        CHECK(is_zero(sum({s.manin_symbol(c, d), s.manin_symbol(d, -c)})));
        CHECK(is_zero(sum({s.manin_symbol(c, d), s.manin_symbol(d, -c - d), s.manin_symbol(-c - d, c)})));
      }
    }
  }
}

TEST_CASE("modular symbols are additive in the cusps") {
  const ModularSymbolSpace s(37);
  const std::vector<Cusp> cusps = {{0, 1}, {1, 0}, {1, 3}, {2, 7}, {-5, 11}, {13, 37}};
  for (const auto& a : cusps) {
    for (const auto& b : cusps) {
      for (const auto& c : cusps) {
        QVec lhs = s.modular_symbol(a, b);
        axpy(lhs, 1, s.modular_symbol(b, c));
        axpy(lhs, -1, s.modular_symbol(a, c));
        CHECK(is_zero(lhs));
      }
    }
  }
}

TEST_CASE("Hecke scalars on level 11") {
  const ModularSymbolSpace s(11);
  const auto t2 = s.hecke_matrix(2);
  const auto t3 = s.hecke_matrix(3);
  const auto id = qidentity(2);
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      CHECK(t2[i][j] == -2 * id[i][j]);
      CHECK(t3[i][j] == -1 * id[i][j]);
    }
  }
}

TEST_CASE("Hecke operators commute") {
  for (std::int64_t m : {23, 37, 253}) {
    const ModularSymbolSpace s(m);
    const auto t2 = s.hecke_matrix(2);
    const auto t3 = s.hecke_matrix(3);
    CHECK(qmul(t2, t3) == qmul(t3, t2));
    if (m == 253) {
      const auto u11 = s.hecke_matrix(11);
      CHECK(qmul(t2, u11) == qmul(u11, t2));
    }
  }
}

TEST_CASE("Atkin-Lehner involutions square to one and commute with T_l") {
  const std::vector<std::pair<std::int64_t, std::int64_t>> cases = {{11, 11}, {23, 23}, {253, 11}, {253, 23},
                                                                     {341, 31}, {77, 7}};
  for (const auto& [m, n] : cases) {
    const ModularSymbolSpace s(m);
    const auto w = s.atkin_lehner_matrix(n);
    CHECK(qmul(w, w) == qidentity(s.cuspidal_dimension()));
    for (std::int64_t l : {2, 3, 5}) {
      if (m % l == 0) continue;
      const auto t = s.hecke_matrix(l);
      CHECK(qmul(w, t) == qmul(t, w));
    }
  }
}

TEST_CASE("W_11 on level 11 is minus the Fricke sign") {
  // X_0(11) has rank zero, so its root number is +1 and W acts as -1.
  const ModularSymbolSpace s(11);
  const auto w = s.atkin_lehner_matrix(11);
  CHECK(w == QMatrix{{-1, 0}, {0, -1}});
}

TEST_CASE("star is an involution commuting with Hecke") {
  const ModularSymbolSpace s(37);
  const auto st = s.star_matrix();
  CHECK(qmul(st, st) == qidentity(s.cuspidal_dimension()));
  const auto t2 = s.hecke_matrix(2);
  CHECK(qmul(st, t2) == qmul(t2, st));
}

TEST_CASE("atkin_lehner needs an exact divisor") {
  const ModularSymbolSpace s(44);
  try {
    s.atkin_lehner_matrix(2);
    FAIL("expected NotExactDivisor");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::NotExactDivisor);
  }
  CHECK(exactly_divides(4, 44));
  CHECK_FALSE(exactly_divides(2, 44));
}

TEST_CASE("p_saturate examples") {
  using Rows = std::vector<std::vector<mpz_class>>;
  CHECK(p_saturate(Rows{{1, 0}, {0, 5}}, 5) == Rows{{1, 0}, {0, 1}});
  CHECK(p_saturate(Rows{{7, 7}}, 7) == Rows{{1, 1}});
  const Rows sat = {{1, 2, 3}, {0, 1, 4}};
  CHECK(p_saturate(sat, 5) == sat);
}

TEST_CASE("p_saturate output has full rank mod p and contains the input") {
  using Rows = std::vector<std::vector<mpz_class>>;
  const Rows rows = {{5, 10, 0, 5}, {1, 2, 5, 1}, {0, 0, 25, 50}};
  const auto out = p_saturate(rows, 5);
  REQUIRE(out.size() == rows.size());
  std::vector<std::vector<std::int64_t>> small;
  for (const auto& r : out) {
    std::vector<std::int64_t> v;
    for (const auto& x : r) v.push_back(static_cast<std::int64_t>(mpz_class(x % 5 + 5).get_si() % 5));
    small.push_back(v);
  }
  // Some 3 x 3 minor is nonzero mod 5.
  bool full = false;
  for (std::size_t skip = 0; skip < 4 && !full; ++skip) {
    std::vector<std::vector<std::int64_t>> m;
    for (const auto& r : small) {
      std::vector<std::int64_t> row;
      for (std::size_t j = 0; j < 4; ++j) {
        if (j != skip) row.push_back(r[j]);
      }
      m.push_back(row);
    }
    full = testing_helpers::det_mod(m, 5) != 0;
  }
  CHECK(full);
}
