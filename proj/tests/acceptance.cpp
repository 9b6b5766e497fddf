// Acceptance run: one PASS/FAIL line per criterion, nonzero exit on any FAIL.

#include <chrono>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <thread>

#include "dhecke/error.hpp"
#include "dhecke/ffarith.hpp"
#include "dhecke/heckeops.hpp"
#include "dhecke/merel.hpp"
#include "dhecke/modsym.hpp"
#include "dhecke/qexp_basis.hpp"
#include "dhecke/qseries.hpp"
#include "dhecke/rows.hpp"
#include "dhecke/selftest.hpp"
#include "dhecke/stark.hpp"
#include "oracles.hpp"
#include "reference_tables.hpp"

using namespace dhecke;

namespace {

struct Outcome {
  bool passed = true;
  std::string detail;

  void fail(const std::string& why) {
    if (passed) detail = why;
    passed = false;
  }
};

unsigned jobs() { return std::max(2u, std::thread::hardware_concurrency()); }

std::string show(const std::optional<std::uint64_t>& v) { return v ? std::to_string(*v) : "-"; }

Outcome reproduce(std::int64_t disc, const std::vector<reference::PrintedRow>& printed) {
  Outcome out;
  BatchOptions options;
  options.jobs = jobs();
  const auto rows = batch(disc, 100, 150, options);
  if (rows.size() != printed.size()) {
    out.fail(std::to_string(rows.size()) + " rows computed, " + std::to_string(printed.size()) + " printed");
    return out;
  }
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& r = rows[i];
    const auto& t = printed[i];
    std::ostringstream where;
    where << "(" << t.p << "," << t.q << ")";
    if (r.request.p != t.p || r.request.q != t.q) {
      out.fail("row " + std::to_string(i) + " is (" + std::to_string(r.request.p) + "," +
               std::to_string(r.request.q) + "), expected " + where.str());
      continue;
    }
    auto want = [&](const std::optional<std::int64_t>& v) -> std::optional<std::uint64_t> {
      if (!v) return std::nullopt;
      return static_cast<std::uint64_t>(reference::reduce(*v, t.p));
    };
    if (!t.log_ratio) {
      if (!r.log_ratio_infinite() || r.eta || r.status != RowStatus::Infinite) {
        out.fail(where.str() + " should be infinite, got status " + std::string(to_string(r.status)));
      }
      continue;
    }
    if (r.log_ratio != want(t.log_ratio) || r.eta != want(t.eta) || r.table_ratio() != want(t.ratio)) {
      out.fail(where.str() + " got " + show(r.log_ratio) + "," + show(r.eta) + "," + show(r.table_ratio()) +
               " status " + std::string(to_string(r.status)) + (r.error.empty() ? "" : " " + r.error));
    }
  }
  if (out.passed) out.detail = std::to_string(rows.size()) + "/" + std::to_string(printed.size()) + " rows";
  return out;
}

Outcome ratio_constancy() {
  Outcome out;
  std::size_t defined = 0;
  for (std::int64_t disc : {-23, -31}) {
    BatchOptions options;
    options.jobs = jobs();
    for (const auto& r : batch(disc, 100, 150, options)) {
      if (!r.eta) continue;
      const auto p = r.request.p;
      const auto expected = disc == -23 ? oracle::inverse(p - 72 % p, p) : 72 % p;
      const auto got = disc == -23 ? r.ratio_log_over_eta : r.ratio_eta_over_log;
      if (!got) {
        out.fail("ratio undefined at (" + std::to_string(p) + "," + std::to_string(r.request.q) + ")");
        continue;
      }
      ++defined;
      if (static_cast<std::int64_t>(*got) != expected) {
        out.fail("disc " + std::to_string(disc) + " (" + std::to_string(p) + "," + std::to_string(r.request.q) +
                 ") ratio " + std::to_string(*got) + ", expected " + std::to_string(expected));
      }
    }
  }
  if (out.passed) out.detail = std::to_string(defined) + " defined ratios";
  return out;
}

Outcome mazur_merel() {
  Outcome out;
  std::size_t pairs = 0;
  for (std::int64_t q = 11; q <= 150; ++q) {
    if (!oracle::prime(q)) continue;
    for (std::int64_t p = 5; p < q; ++p) {
      if (!oracle::prime(p) || (q - 1) % p != 0) continue;
      ++pairs;
      const auto basis = LevelCache::global().basis(q, p, pipeline_nterms(q));
      bool rank_one = false;
      try {
        rank_one = eisenstein_projector(*basis, default_aux_primes({p, q})).rank == 1;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::EisensteinRankNotOne) {
          out.fail(std::string("(") + std::to_string(p) + "," + std::to_string(q) + ") " + e.what());
          continue;
        }
      }
      if (rank_one != (merel_class(q, p).exponent != 0)) {
        out.fail("(" + std::to_string(p) + "," + std::to_string(q) + ") rank one " + (rank_one ? "yes" : "no") +
                 " but Merel class " + std::to_string(merel_class(q, p).exponent));
      }
    }
  }
  if (out.passed) out.detail = std::to_string(pairs) + " pairs";
  return out;
}

Outcome symbols_oracle() {
  Outcome out;
  const auto x011 = oracle::eta_product({{1, 2}, {11, 2}}, 1, 50);
  for (std::int64_t p : {5, 7, 13}) {
    const QExpBasis basis(std::make_shared<ModularSymbolSpace>(11), p, 50);
    if (basis.dimension() != 1) {
      out.fail("level 11 dimension " + std::to_string(basis.dimension()));
      continue;
    }
    const auto row = basis.row(0);
    for (std::size_t n = 0; n < 50; ++n) {
      if (row[n] != reference::reduce(x011[n], p)) out.fail("level 11 mod " + std::to_string(p) + " a_" + std::to_string(n));
    }
  }
  std::vector<std::int64_t> levels;
  for (std::int64_t m = 1; m <= 100; ++m) levels.push_back(m);
  for (std::int64_t m : {2573, 3197, 3427, 4309}) levels.push_back(m);
  for (auto m : levels) {
    const ModularSymbolSpace space(m);
    if (static_cast<std::int64_t>(space.cuspidal_dimension()) != 2 * oracle::genus_x0(m)) {
      out.fail("level " + std::to_string(m) + " cuspidal dimension " + std::to_string(space.cuspidal_dimension()));
    }
  }
  if (out.passed) out.detail = "3 primes, " + std::to_string(levels.size()) + " levels";
  return out;
}

Outcome transport_consistency() {
  Outcome out;
  std::size_t compared = 0;
  for (std::int64_t m : {11, 23, 31, 253}) {
    for (std::int64_t p : {5, 7}) {
      const QExpBasis basis(std::make_shared<ModularSymbolSpace>(m), p, 10 * pipeline_nterms(m));
      for (std::int64_t n = 1; n <= 10; ++n) {
        if (std::gcd(n, m) != 1) continue;
        ++compared;
        if (!(basis.transport(n) == basis.coefficientwise_hecke(n))) {
          out.fail("T_" + std::to_string(n) + " at level " + std::to_string(m) + " mod " + std::to_string(p));
        }
      }
    }
  }
  if (out.passed) out.detail = std::to_string(compared) + " operators";
  return out;
}

Outcome weight_one() {
  Outcome out;
  const auto theta = weight_one_form(-23, 200);
  const auto eta = oracle::eta_product({{1, 1}, {23, 1}}, 1, 200);
  for (std::size_t n = 0; n < 200; ++n) {
    if (theta[n] != eta[n]) out.fail("a_" + std::to_string(n) + " differs");
  }
  std::size_t primes = 0;
  for (std::int64_t disc : {-23, -31}) {
    const auto g = weight_one_form(disc, 151);
    const auto field = cubic_poly(disc);
    for (std::int64_t l = 2; l <= 150; ++l) {
      if (!oracle::prime(l) || l == -disc) continue;
      ++primes;
      const bool one_root = roots_mod_q(field, l).size() == 1;
      if ((g[static_cast<std::size_t>(l)] == 0) != one_root) {
        out.fail("disc " + std::to_string(disc) + " prime " + std::to_string(l));
      }
    }
  }
  if (out.passed) out.detail = "200 coefficients, " + std::to_string(primes) + " primes";
  return out;
}

Outcome property_suites() {
  Outcome out;
  const auto start = std::chrono::steady_clock::now();
  std::size_t n = 0;
  for (const auto& s : run_selftest()) {
    ++n;
    if (!s.passed) out.fail(s.name + ": " + s.detail);
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (secs >= 120.0) out.fail("took " + std::to_string(secs) + " s");
  if (out.passed) out.detail = std::to_string(n) + " suites";
  return out;
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"disc -23 table reproduction", [] { return reproduce(-23, reference::kDisc23); }},
      {"disc -31 table reproduction", [] { return reproduce(-31, reference::kDisc31); }},
      {"ratio constancy (-1/72 and 72 mod p)", ratio_constancy},
      {"Mazur-Merel consistency for q <= 150", mazur_merel},
      {"modular symbols oracle", symbols_oracle},
      {"transport consistency", transport_consistency},
      {"weight one cross construction", weight_one},
      {"algebraic property suites", property_suites},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o.fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    std::printf("%s criterion %zu: %s (%s; %.1f s)\n", o.passed ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str(), secs);
    std::fflush(stdout);
    failures += !o.passed;
  }
  return failures == 0 ? 0 : 1;
}
