#pragma once

// One verification row (disc, p, q): validity gates, the two logarithms,
// eta, and both orientations of their ratio. Batches enumerate every
// admissible pair below the bounds and compute rows independently.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dhecke/error.hpp"
#include "dhecke/heckeops.hpp"

namespace dhecke {

class DiskCache;

struct RowRequest {
  std::int64_t disc = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
};

struct Check {
  std::string name;
  bool passed = false;
};

enum class RowStatus {
  Ok,         // every gate passes and the ratio matches the expected constant
  Infinite,   // the Mazur gate fails: log ratio is infinite, eta undefined
  Invalid,    // an admissibility gate fails
  Mismatch,   // computed, but the ratio is not the expected constant
  Failed,     // the pipeline raised an error
};

std::string_view to_string(RowStatus status) noexcept;

/// Which quotient a table prints in its ratio column.
enum class RatioOrientation { LogOverEta, EtaOverLog };

RatioOrientation caption_orientation(std::int64_t disc);

/// -1/72 for -23 (log / eta) and 72 for -31 (eta / log), reduced mod p.
std::uint64_t expected_ratio(std::int64_t disc, std::int64_t p);

struct RowResult {
  RowRequest request;
  std::vector<Check> checks;
  RowStatus status = RowStatus::Invalid;

  std::optional<std::uint64_t> merel_log;
  std::optional<std::uint64_t> stark_log;
  std::optional<std::uint64_t> log_ratio;        // stark / merel; unset means infinity
  std::optional<std::uint64_t> eta;
  std::optional<std::uint64_t> ratio_log_over_eta;
  std::optional<std::uint64_t> ratio_eta_over_log;

  std::optional<ErrorCode> error_code;
  std::string error;                             // diagnostic for Failed rows
  std::vector<std::int64_t> aux_primes;
  bool from_cache = false;

  bool log_ratio_infinite() const { return merel_log && !log_ratio; }
  /// The ratio in the orientation the table caption uses.
  std::optional<std::uint64_t> table_ratio() const;
  bool check(std::string_view name) const;
};

/// Named gates: p_prime_ge_5, q_prime, q_1_mod_p, q_coprime_to_disc,
/// frobenius_transposition, mazur_nonvanishing.
std::vector<Check> validate(const RowRequest& request);

/// True when every gate but the Mazur gate passes.
bool admissible(const std::vector<Check>& checks);

struct RowOptions {
  LevelCache* cache = nullptr;                    // LevelCache::global() when null
  const DiskCache* disk = nullptr;
  std::optional<std::vector<std::int64_t>> aux;   // auxiliary primes for the projector
};

/// Never throws for pipeline errors; they are reported in the result.
RowResult compute_row(const RowRequest& request, const RowOptions& options = {});

/// Admissible (p, q) in (p, q) order: 5 <= p <= pmax, q <= qmax,
/// q = 1 mod p and (disc / q) = -1.
std::vector<RowRequest> enumerate_rows(std::int64_t disc, std::int64_t pmax, std::int64_t qmax);

struct BatchOptions {
  RowOptions row;
  unsigned jobs = 1;
  std::function<void(const RowResult&)> on_row;  // called as rows finish, under a lock
};

/// Results come back in enumeration order whatever the completion order.
std::vector<RowResult> batch(std::int64_t disc, std::int64_t pmax, std::int64_t qmax, const BatchOptions& options = {});
std::vector<RowResult> batch(const std::vector<RowRequest>& requests, const BatchOptions& options = {});

}  // namespace dhecke
