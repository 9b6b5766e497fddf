#include "dhecke/rows.hpp"

#include <algorithm>
#include <atomic>
#include <mutex>
#include <numeric>
#include <thread>

#include "dhecke/disk_cache.hpp"
#include "dhecke/ffarith.hpp"
#include "dhecke/merel.hpp"
#include "dhecke/stark.hpp"

namespace dhecke {

namespace {

std::string row_context(const RowRequest& r) {
  return "disc " + std::to_string(r.disc) + ", p " + std::to_string(r.p) + ", q " + std::to_string(r.q);
}

std::uint64_t divide_mod(std::uint64_t a, std::uint64_t b, std::int64_t p) {
  return static_cast<std::uint64_t>(mod(static_cast<std::int64_t>(a) * inv_mod(static_cast<std::int64_t>(b), p), p));
}

}  // namespace

std::string_view to_string(RowStatus status) noexcept {
  switch (status) {
    case RowStatus::Ok: return "ok";
    case RowStatus::Infinite: return "infinite";
    case RowStatus::Invalid: return "invalid";
    case RowStatus::Mismatch: return "mismatch";
    case RowStatus::Failed: return "failed";
  }
  return "unknown";
}

RatioOrientation caption_orientation(std::int64_t disc) {
  if (disc == -23) return RatioOrientation::LogOverEta;
  if (disc == -31) return RatioOrientation::EtaOverLog;
  throw Error(ErrorCode::UnsupportedDiscriminant, "discriminant " + std::to_string(disc));
}

std::uint64_t expected_ratio(std::int64_t disc, std::int64_t p) {
  if (caption_orientation(disc) == RatioOrientation::LogOverEta) {
    return static_cast<std::uint64_t>(mod(-inv_mod(72 % p, p), p));
  }
  return static_cast<std::uint64_t>(mod(72, p));
}

std::optional<std::uint64_t> RowResult::table_ratio() const {
  return caption_orientation(request.disc) == RatioOrientation::LogOverEta ? ratio_log_over_eta : ratio_eta_over_log;
}

bool RowResult::check(std::string_view name) const {
  for (const auto& c : checks) {
    if (c.name == name) return c.passed;
  }
  return false;
}

std::vector<Check> validate(const RowRequest& r) {
  std::vector<Check> out;
  const bool p_ok = r.p >= 5 && is_prime(r.p);
  const bool q_ok = r.q >= 2 && is_prime(r.q);
  const bool cong = p_ok && r.q > 0 && r.q % r.p == 1;
  const bool coprime = r.q > 0 && std::gcd(r.q, r.disc * r.p) == 1;
  bool transposition = false;
  if (q_ok && coprime && (r.disc == -23 || r.disc == -31)) {
    transposition = roots_mod_q(cubic_poly(r.disc), r.q).size() == 1;
  }
  const bool mazur = p_ok && q_ok && cong && mazur_nonvanishing(r.q, r.p);
  out.push_back({"p_prime_ge_5", p_ok});
  out.push_back({"q_prime", q_ok});
  out.push_back({"q_1_mod_p", cong});
  out.push_back({"q_coprime_to_disc", coprime});
  out.push_back({"frobenius_transposition", transposition});
  out.push_back({"mazur_nonvanishing", mazur});
  return out;
}

bool admissible(const std::vector<Check>& checks) {
  return std::all_of(checks.begin(), checks.end(),
                     [](const Check& c) { return c.passed || c.name == "mazur_nonvanishing"; });
}

RowResult compute_row(const RowRequest& request, const RowOptions& options) {
  RowResult r;
  r.request = request;
  if (request.disc != -23 && request.disc != -31) {
    r.status = RowStatus::Invalid;
    r.error_code = ErrorCode::UnsupportedDiscriminant;
    r.error = "unsupported discriminant " + std::to_string(request.disc);
    return r;
  }
  r.checks = validate(request);
  if (!admissible(r.checks)) {
    r.status = RowStatus::Invalid;
    return r;
  }
  try {
    const auto merel = merel_class(request.q, request.p);
    const auto stark = stark_class(cubic_poly(request.disc), request.q, request.p, merel.generator);
    r.merel_log = static_cast<std::uint64_t>(merel.exponent);
    r.stark_log = static_cast<std::uint64_t>(stark.exponent);
    if (auto lr = log_ratio(stark, merel)) r.log_ratio = static_cast<std::uint64_t>(*lr);
    if (!r.check("mazur_nonvanishing")) {
      r.status = RowStatus::Infinite;
      return r;
    }

    if (options.disk) {
      try {
        if (auto cached = options.disk->load(request.disc, request.p, request.q); cached && cached->eta) {
          r.eta = cached->eta;
          r.from_cache = true;
        }
      } catch (const Error& e) {
        if (e.code() != ErrorCode::CacheCorrupt) throw;
      }
    }
    if (!r.eta) {
      EtaOptions eo;
      eo.cache = options.cache;
      eo.aux = options.aux;
      const EtaComputation eta = compute_eta(request.disc, request.p, request.q, eo);
      r.eta = eta.eta;
      r.aux_primes = eta.projector.aux;
      if (options.disk) {
        options.disk->store({request.disc, request.p, request.q, *r.merel_log, *r.stark_log, r.eta});
      }
    }

    if (r.log_ratio && *r.eta != 0) r.ratio_log_over_eta = divide_mod(*r.log_ratio, *r.eta, request.p);
    if (r.log_ratio && *r.log_ratio != 0) r.ratio_eta_over_log = divide_mod(*r.eta, *r.log_ratio, request.p);
    const auto table = r.table_ratio();
    const bool matches = table && *table == expected_ratio(request.disc, request.p);
    r.checks.push_back({"ratio_matches_constant", matches});
    r.status = matches ? RowStatus::Ok : RowStatus::Mismatch;
  } catch (const Error& e) {
    r.status = RowStatus::Failed;
    r.error_code = e.code();
    r.error = row_context(request) + ": " + e.what();
  } catch (const std::exception& e) {
    r.status = RowStatus::Failed;
    r.error_code = ErrorCode::Internal;
    r.error = row_context(request) + ": " + e.what();
  }
  return r;
}

std::vector<RowRequest> enumerate_rows(std::int64_t disc, std::int64_t pmax, std::int64_t qmax) {
  std::vector<RowRequest> out;
  if (pmax < 5 || qmax < 2) return out;
  const auto qs = primes_up_to(qmax);
  for (std::int64_t p : primes_up_to(pmax)) {
    if (p < 5) continue;
    for (std::int64_t q : qs) {
      if (q % p != 1 || disc % q == 0) continue;
      if (legendre(mod(disc, q), q) == -1) out.push_back({disc, p, q});
    }
  }
  return out;
}

std::vector<RowResult> batch(std::int64_t disc, std::int64_t pmax, std::int64_t qmax, const BatchOptions& options) {
  return batch(enumerate_rows(disc, pmax, qmax), options);
}

std::vector<RowResult> batch(const std::vector<RowRequest>& requests, const BatchOptions& options) {
  std::vector<RowResult> results(requests.size());
  std::atomic<std::size_t> next{0};
  std::mutex report;
  auto worker = [&] {
    for (std::size_t i = next++; i < requests.size(); i = next++) {
      results[i] = compute_row(requests[i], options.row);
      if (options.on_row) {
        std::lock_guard lock(report);
        options.on_row(results[i]);
      }
    }
  };
  const unsigned jobs = std::max(1u, std::min<unsigned>(options.jobs, static_cast<unsigned>(requests.size())));
  if (jobs <= 1) {
    worker();
    return results;
  }
  std::vector<std::thread> threads;
  for (unsigned t = 0; t < jobs; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
  return results;
}

}  // namespace dhecke
