#include "dhecke/selftest.hpp"

#include <chrono>
#include <random>

#include "dhecke/error.hpp"
#include "dhecke/ffarith.hpp"
#include "dhecke/heckeops.hpp"
#include "dhecke/merel.hpp"
#include "dhecke/modsym.hpp"

namespace dhecke {

namespace {

QMatrix multiply(const QMatrix& a, const QMatrix& b) {
  const std::size_t n = a.size(), m = b.empty() ? 0 : b.front().size();
  QMatrix out(n, std::vector<mpq_class>(m, 0));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < m; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  }
  return out;
}

bool is_identity(const QMatrix& a) {
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < a[i].size(); ++j) {
      if (a[i][j] != (i == j ? 1 : 0)) return false;
    }
  }
  return true;
}

SuiteResult fail(std::string name, std::string detail) { return {std::move(name), false, std::move(detail), 0}; }

SuiteResult manin_relations() {
  const std::string name = "manin_relations";
  for (std::int64_t level : {11, 23, 37, 45, 64, 99, 253}) {
    const ModularSymbolSpace space(level);
    for (const auto& e : space.p1().elements()) {
      QVec two = space.manin_symbol(e.c, e.d);
      axpy(two, 1, space.manin_symbol(e.d, -e.c));
      QVec three = space.manin_symbol(e.c, e.d);
      axpy(three, 1, space.manin_symbol(e.d, -e.c - e.d));
      axpy(three, 1, space.manin_symbol(-e.c - e.d, e.c));
      if (!two.empty() || !three.empty()) {
        return fail(name, "relation fails at level " + std::to_string(level) + " on (" + std::to_string(e.c) + ":" +
                              std::to_string(e.d) + ")");
      }
    }
  }
  return {name, true, "levels 11, 23, 37, 45, 64, 99, 253", 0};
}

SuiteResult atkin_lehner_involution() {
  const std::string name = "atkin_lehner_involution";
  const std::pair<std::int64_t, std::int64_t> cases[] = {{11, 11}, {37, 37}, {99, 11}, {99, 9}, {253, 23}, {253, 11}};
  for (const auto& [level, n] : cases) {
    const ModularSymbolSpace space(level);
    const QMatrix w = space.atkin_lehner_matrix(n);
    if (!is_identity(multiply(w, w))) {
      return fail(name, "W_" + std::to_string(n) + "^2 != 1 at level " + std::to_string(level));
    }
    for (std::int64_t l : {2, 3, 5}) {
      if (std::gcd(l, level) != 1) continue;
      const QMatrix t = space.hecke_matrix(l);
      if (multiply(w, t) != multiply(t, w)) {
        return fail(name, "W_" + std::to_string(n) + " does not commute with T_" + std::to_string(l) + " at level " +
                              std::to_string(level));
      }
    }
  }
  return {name, true, "W_N^2 = 1 and W_N T_l = T_l W_N on six (M, N)", 0};
}

SuiteResult hecke_commutativity() {
  const std::string name = "hecke_commutativity";
  for (std::int64_t level : {37, 66, 99, 253}) {
    const ModularSymbolSpace space(level);
    std::vector<std::int64_t> ns;
    for (std::int64_t n = 2; ns.size() < 3 && n < 20; ++n) {
      if (std::gcd(n, level) == 1 || (is_prime(n) && level % n == 0)) ns.push_back(n);
    }
    std::vector<QMatrix> ts;
    for (auto n : ns) ts.push_back(space.hecke_matrix(n));
    for (std::size_t i = 0; i < ts.size(); ++i) {
      for (std::size_t j = i + 1; j < ts.size(); ++j) {
        if (multiply(ts[i], ts[j]) != multiply(ts[j], ts[i])) {
          return fail(name, "T_" + std::to_string(ns[i]) + " and T_" + std::to_string(ns[j]) +
                                " do not commute at level " + std::to_string(level));
        }
      }
    }
  }
  return {name, true, "levels 37, 66, 99, 253", 0};
}

SuiteResult idempotent_law() {
  const std::string name = "idempotent_law";
  const std::pair<std::int64_t, std::int64_t> cases[] = {{11, 5}, {61, 5}, {43, 7}, {67, 11}, {53, 13}};
  for (const auto& [q, p] : cases) {
    auto basis = LevelCache::global().basis(q, p, pipeline_nterms(q));
    const auto proj = eisenstein_projector(*basis, default_aux_primes({p, q}));
    if (!(proj.e * proj.e == proj.e)) return fail(name, "e^2 != e at q = " + std::to_string(q));
    const auto e = embed(eisenstein_series_level_q(q, p, basis->nterms()), basis);
    std::vector<std::uint64_t> image(e.coords.size(), 0);
    for (std::size_t i = 0; i < e.coords.size(); ++i) {
      for (std::size_t j = 0; j < image.size(); ++j) image[j] = (image[j] + e.coords[i] * proj.e(i, j)) % p;
    }
    if (image != e.coords) return fail(name, "e does not fix E at q = " + std::to_string(q));
  }
  return {name, true, "e^2 = e and e E = E for five (q, p)", 0};
}

SuiteResult plog_multiplicativity() {
  const std::string name = "plog_multiplicativity";
  std::mt19937_64 rng(12345);
  for (std::int64_t q : primes_up_to(200)) {
    for (std::int64_t p : prime_factors(q - 1)) {
      if (p < 5) continue;
      std::uniform_int_distribution<std::int64_t> pick(1, q - 1);
      for (int trial = 0; trial < 20; ++trial) {
        const std::int64_t x = pick(rng), y = pick(rng);
        const auto lhs = plog(q, p, x * y % q).exponent;
        const auto rhs = (plog(q, p, x).exponent + plog(q, p, y).exponent) % p;
        if (lhs != rhs || plog(q, p, pow_mod(x, p, q)).exponent != 0) {
          return fail(name, "plog fails at q = " + std::to_string(q) + ", p = " + std::to_string(p));
        }
      }
    }
  }
  return {name, true, "q <= 200", 0};
}

SuiteResult generator_independence() {
  const std::string name = "generator_independence";
  for (std::int64_t q : primes_up_to(200)) {
    for (std::int64_t p : prime_factors(q - 1)) {
      if (p < 5) continue;
      const Residue g0 = nth_primitive_root(q, 0), g1 = nth_primitive_root(q, 1);
      for (std::int64_t a = 2; a < std::min<std::int64_t>(q, 12); ++a) {
        const auto b = merel_class(q, p, g0);
        const auto b1 = merel_class(q, p, g1);
        const auto r0 = log_ratio(plog(q, p, a, g0), b);
        const auto r1 = log_ratio(plog(q, p, a, g1), b1);
        if (r0 != r1) return fail(name, "log ratio depends on the generator at q = " + std::to_string(q));
      }
    }
  }
  return {name, true, "smallest two primitive roots, q <= 200", 0};
}

SuiteResult merel_brute_force() {
  const std::string name = "merel_brute_force";
  for (std::int64_t q : primes_up_to(200)) {
    if (q < 5) continue;
    std::int64_t prod = 1;
    for (std::int64_t i = 1; i <= (q - 1) / 2; ++i) {
      for (std::int64_t k = 0; k < 8 * i; ++k) prod = prod * i % q;
    }
    std::int64_t zeta = 1;
    if (q % 3 == 1) {
      for (std::int64_t k = 0; k < (q - 1) / 3; ++k) zeta = zeta * 2 % q;
    }
    std::int64_t expected = 0;
    for (std::int64_t x = 1; x < q; ++x) {
      if (x * prod % q == zeta * zeta % q) expected = x;
    }
    if (merel_unit(q).value.value != expected) return fail(name, "Merel unit differs at q = " + std::to_string(q));
  }
  return {name, true, "q <= 200", 0};
}

}  // namespace

std::vector<Suite> selftest_suites() {
  return {
      {"manin_relations", manin_relations},
      {"atkin_lehner_involution", atkin_lehner_involution},
      {"hecke_commutativity", hecke_commutativity},
      {"idempotent_law", idempotent_law},
      {"plog_multiplicativity", plog_multiplicativity},
      {"generator_independence", generator_independence},
      {"merel_brute_force", merel_brute_force},
  };
}

std::vector<SuiteResult> run_selftest(const std::function<void(const SuiteResult&)>& on_result) {
  std::vector<SuiteResult> out;
  for (const auto& suite : selftest_suites()) {
    const auto t0 = std::chrono::steady_clock::now();
    SuiteResult r;
    try {
      r = suite.run();
    } catch (const std::exception& e) {
      r = fail(suite.name, e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (on_result) on_result(r);
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace dhecke
