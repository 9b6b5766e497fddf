#pragma once

// The eta pipeline on q-expansions mod p: embed G = g * (g | V_q) at level
// Nq, trace it down to level q, project onto the Eisenstein component and
// read off the first coefficient.

#include <cstdint>
#include <future>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <tuple>
#include <vector>

#include "dhecke/modsym.hpp"
#include "dhecke/padic.hpp"
#include "dhecke/qexp_basis.hpp"
#include "dhecke/qseries.hpp"

namespace dhecke {

/// Shares modular symbol spaces and q-expansion bases between rows. Each
/// object is built once; concurrent requests for the same key wait for it.
class LevelCache {
 public:
  std::shared_ptr<const ModularSymbolSpace> space(std::int64_t level);
  std::shared_ptr<const QExpBasis> basis(std::int64_t level, std::int64_t p, std::size_t nterms);

  /// Process-wide instance.
  static LevelCache& global();

 private:
  std::mutex mutex_;
  std::map<std::int64_t, std::shared_future<std::shared_ptr<const ModularSymbolSpace>>> spaces_;
  std::map<std::tuple<std::int64_t, std::int64_t, std::size_t>, std::shared_future<std::shared_ptr<const QExpBasis>>>
      bases_;
};

/// A series mod p written in the echelon basis of a QExpBasis.
struct EmbeddedForm {
  std::shared_ptr<const QExpBasis> basis;
  std::vector<std::uint64_t> coords;

  std::int64_t level() const { return basis->level(); }
  TruncatedSeries series() const { return basis->combination(coords); }
};

/// Needs prec >= nterms and a_0 = 0; throws NotInSpan otherwise.
EmbeddedForm embed(const TruncatedSeries& series, std::shared_ptr<const QExpBasis> basis);

/// x -> x (I + W U) or x -> x (I + U W) in the row convention.
enum class TraceOrder { WThenU, UThenW };

/// Trace from Gamma_0(Nq) to Gamma_0(q) on the mod p bases.
///
/// W_N is not a Hecke operator, so it is assembled from the old/new
/// splitting: W h = N (h | V_N) and W (h | V_N) = h / N for h of level q,
/// and W = -U_N on the part new at N, which is the kernel of U_N^2 - 1.
class TraceOperator {
 public:
  /// upper has level N q; lower has level q and at least upper->nterms()
  /// terms. The operator order is fixed by tracing the Eisenstein series.
  TraceOperator(std::shared_ptr<const QExpBasis> upper, std::shared_ptr<const QExpBasis> lower, std::int64_t n);

  std::int64_t n() const { return n_; }
  TraceOrder order() const { return order_; }
  const QExpBasis& upper() const { return *upper_; }
  const QExpBasis& lower() const { return *lower_; }

  /// W_N and U_N on the echelon basis of upper, mod p.
  const PadicMatrix& w() const { return w_; }
  const PadicMatrix& u() const { return u_; }

  /// Throws TraceNotOldform when the image leaves the level q span.
  EmbeddedForm apply(const EmbeddedForm& form) const;
  EmbeddedForm apply(const EmbeddedForm& form, TraceOrder order) const;

 private:
  PadicMatrix matrix(TraceOrder order) const;

  std::shared_ptr<const QExpBasis> upper_;
  std::shared_ptr<const QExpBasis> lower_;
  std::int64_t n_;
  PadicMatrix w_;
  PadicMatrix u_;
  TraceOrder order_ = TraceOrder::WThenU;
};

/// trace_down(form, N) with the bases taken from the global cache.
TruncatedSeries trace_down(const EmbeddedForm& form, std::int64_t n);

struct EisensteinProjector {
  std::int64_t q = 0;
  std::int64_t p = 0;
  PadicMatrix e;                    // idempotent on the echelon basis, row convention
  std::vector<std::int64_t> aux;    // auxiliary primes composed into e
  std::size_t rank = 0;
};

/// Primes 2, 3, 5, ... up to 50, skipping the excluded ones.
std::vector<std::int64_t> default_aux_primes(const std::vector<std::int64_t>& excluded);

/// Composes generalized (l + 1)-eigenspace idempotents of T_l over the
/// given primes until the image has dimension 1; throws
/// EisensteinRankNotOne if it never does.
EisensteinProjector eisenstein_projector(const QExpBasis& basis, const std::vector<std::int64_t>& aux);

/// Every intermediate of one eta computation.
struct EtaComputation {
  std::int64_t disc = 0;
  std::int64_t p = 0;
  std::int64_t q = 0;
  std::uint64_t eta = 0;
  TraceOrder order = TraceOrder::WThenU;
  EmbeddedForm g_upper;      // G at level N q
  EmbeddedForm traced;       // its trace at level q
  EmbeddedForm projected;    // Eisenstein component
  EmbeddedForm eisenstein;   // E mod p at level q
  EisensteinProjector projector;
};

struct EtaOptions {
  LevelCache* cache = nullptr;                      // global() when null
  std::optional<std::vector<std::int64_t>> aux;     // default_aux_primes when unset
};

EtaComputation compute_eta(std::int64_t disc, std::int64_t p, std::int64_t q, const EtaOptions& options = {});

/// a_1 of the Eisenstein component of the trace of g * (g | V_q).
std::uint64_t eta_invariant(std::int64_t disc, std::int64_t p, std::int64_t q);

/// Level of g: 23 or 31.
std::int64_t weight_one_level(std::int64_t disc);

}  // namespace dhecke
