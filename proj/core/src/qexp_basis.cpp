#include "dhecke/qexp_basis.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <string>

#include "dhecke/error.hpp"
#include "dhecke/ffarith.hpp"
#include "dhecke/p1list.hpp"

namespace dhecke {

namespace {

constexpr std::size_t kMaxSeeds = 24;
constexpr std::size_t kTermsPerSeed = 1;

std::uint64_t add_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  const std::uint64_t s = a + b;
  return s >= m ? s - m : s;
}

std::uint64_t mul_mod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

bool hecke_index_supported(std::int64_t n, std::int64_t level) {
  if (n < 1) return false;
  if (std::gcd(n, level) == 1) return true;
  return is_prime(n) && level % n == 0;
}

PadicMatrix stack(const std::vector<PadicMatrix>& blocks) {
  std::size_t rows = 0;
  for (const auto& b : blocks) rows += b.rows();
  PadicMatrix out(rows, blocks.front().cols(), blocks.front().p(), blocks.front().precision());
  std::size_t at = 0;
  for (const auto& b : blocks) {
    for (std::size_t i = 0; i < b.rows(); ++i, ++at) {
      std::copy(b.row(i).begin(), b.row(i).end(), out.row(at).begin());
    }
  }
  return out;
}

}  // namespace

std::int64_t sturm_bound(std::int64_t level) {
  const std::int64_t index = P1List::expected_size(level);
  return (index + 5) / 6;
}

std::size_t pipeline_nterms(std::int64_t level) { return static_cast<std::size_t>(sturm_bound(level) + 5); }

std::vector<QExpBasis::SparseMod> QExpBasis::symbol_map_mod(std::uint64_t modulus) const {
  std::vector<SparseMod> out(space_->p1().size());
  for (std::size_t i = 0; i < out.size(); ++i) {
    for (const auto& t : space_->reduce_symbol(i)) {
      out[i].index.push_back(t.index);
      out[i].value.push_back(rational_mod(t.value, modulus));
    }
  }
  return out;
}

void QExpBasis::seed_block(const QVec& seed, PadicMatrix& padic) const {
  const std::int64_t level = space_->level();
  const P1List& p1 = space_->p1();
  const std::size_t dim = space_->dimension();
  const std::uint64_t mod_p = padic.modulus();

  // Clearing denominators only rescales the rows, which saturation undoes,
  // and lets the Heilbronn sums run in exact integers.
  mpz_class scale = 1;
  for (const auto& t : seed) mpz_lcm(scale.get_mpz_t(), scale.get_mpz_t(), t.value.get_den().get_mpz_t());
  std::vector<std::int64_t> coeff(seed.size());
  for (std::size_t j = 0; j < seed.size(); ++j) {
    const mpz_class c = seed[j].value.get_num() * (scale / seed[j].value.get_den());
    if (!c.fits_slong_p() || abs(c) > (mpz_class(1) << 24)) {
      throw Error(ErrorCode::Internal, "seed coefficient " + c.get_str() + " out of range");
    }
    coeff[j] = c.get_si();
  }

  std::vector<std::int64_t> acc(p1.size(), 0);
  std::vector<char> used(p1.size(), 0);
  std::vector<std::size_t> used_list;
  std::vector<std::uint64_t> col_p(dim);
  auto reduce = [](std::int64_t v, std::uint64_t m) {
    const std::int64_t r = v % static_cast<std::int64_t>(m);
    return static_cast<std::uint64_t>(r < 0 ? r + static_cast<std::int64_t>(m) : r);
  };

  for (std::size_t n = 1; n < nterms_; ++n) {
    const auto& hs = heilbronn_merel(static_cast<std::int64_t>(n));
    for (std::size_t j = 0; j < seed.size(); ++j) {
      const P1Element& e = p1[space_->generator_symbol(static_cast<std::size_t>(seed[j].index))];
      const std::int64_t w = coeff[j];
      for (const auto& h : hs) {
        const std::int64_t c = (e.c * h.a + e.d * h.c) % level;
        const std::int64_t d = (e.c * h.b + e.d * h.d) % level;
        const auto idx = p1.index(c, d);
        if (!idx) continue;
        acc[*idx] += w;
        if (!used[*idx]) {
          used[*idx] = 1;
          used_list.push_back(*idx);
        }
      }
    }
    std::fill(col_p.begin(), col_p.end(), 0);
    for (std::size_t idx : used_list) {
      const std::uint64_t vp = reduce(acc[idx], mod_p);
      const SparseMod& mp = map_padic_[idx];
      for (std::size_t t = 0; t < mp.index.size(); ++t) {
        auto& slot = col_p[static_cast<std::size_t>(mp.index[t])];
        slot = add_mod(slot, mul_mod_u64(vp, mp.value[t], mod_p), mod_p);
      }
      acc[idx] = 0;
      used[idx] = 0;
    }
    used_list.clear();
    for (std::size_t r = 0; r < dim; ++r) {
      padic.set_raw(r, n, col_p[r]);
    }
  }
}

QExpBasis::QExpBasis(std::shared_ptr<const ModularSymbolSpace> space, std::int64_t p, std::size_t nterms)
    : space_(std::move(space)), p_(p), nterms_(nterms) {
  const std::int64_t level = space_->level();
  if (p < 5 || !is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not a prime >= 5");
  if (level % p == 0) {
    throw Error(ErrorCode::PrimeDividesLevel, std::to_string(p) + " divides " + std::to_string(level));
  }
  if (nterms < pipeline_nterms(level)) {
    throw Error(ErrorCode::BadIndex, "need at least " + std::to_string(pipeline_nterms(level)) + " terms");
  }
  const auto up = static_cast<std::uint64_t>(p);
  working_precision_ = max_precision(up);
  const std::size_t g = space_->cuspidal_dimension() / 2;
  if (g == 0) {
    saturated_ = PadicMatrix(0, nterms_, up, working_precision_);
    echelon_ = PadicMatrix(0, nterms_, up, 1);
    to_echelon_ = PadicMatrix(0, 0, up, 1);
    from_echelon_ = to_echelon_;
    return;
  }

  map_padic_ = symbol_map_mod(pow_u64(up, working_precision_));
  const auto& basis = space_->cuspidal_basis();
  const std::size_t dim = space_->dimension();

  std::mt19937_64 rng(0x9e3779b97f4a7c15ULL ^ static_cast<std::uint64_t>(level));
  std::uniform_int_distribution<std::size_t> pick(0, basis.size() - 1);
  std::uniform_int_distribution<int> scalar(1, 7);

  // Rows are divided by their p-content and kept when independent mod p.
  // g such rows span the saturated lattice, so later solves are unimodular.
  std::vector<PadicMatrix> blocks;
  std::vector<std::size_t> chosen;
  PadicMatrix residues(0, nterms_, up, 1);
  while (chosen.size() < g) {
    if (seeds_ == kMaxSeeds) {
      throw Error(ErrorCode::Internal, "Hecke orbits of " + std::to_string(kMaxSeeds) + " seeds span rank " +
                                           std::to_string(chosen.size()) + " < " + std::to_string(g) +
                                           " mod " + std::to_string(p));
    }
    QVec seed;
    for (std::size_t t = 0; t < kTermsPerSeed; ++t) axpy(seed, mpq_class(scalar(rng)), basis[pick(rng)]);
    ++seeds_;
    if (seed.empty()) continue;
    PadicMatrix block(dim, nterms_, up, working_precision_);
    seed_block(seed, block);
    const std::size_t offset = blocks.size() * dim;
    PadicMatrix grown(residues.rows() + dim, nterms_, up, 1);
    for (std::size_t i = 0; i < residues.rows(); ++i) {
      std::copy(residues.row(i).begin(), residues.row(i).end(), grown.row(i).begin());
    }
    for (std::size_t r = 0; r < dim; ++r) {
      int v = working_precision_;
      for (std::size_t m = 0; m < nterms_ && v > 0; ++m) {
        v = std::min(v, valuation_u64(block(r, m), up, working_precision_));
      }
      content_.push_back(v);
      if (v == working_precision_) continue;
      const std::uint64_t unit = pow_u64(up, v);
      for (std::size_t m = 0; m < nterms_; ++m) grown.set_raw(offset + r, m, block(r, m) / unit % up);
    }
    residues = std::move(grown);
    blocks.push_back(std::move(block));
    chosen = independent_rows(residues, g + 1);
    if (chosen.size() > g) {
      throw Error(ErrorCode::Internal, "q-expansions of rank above half the cuspidal dimension");
    }
  }
  chosen_ = std::move(chosen);
  seed_rows_ = stack(blocks);

  int lost = 0;
  for (std::size_t j : chosen_) lost = std::max(lost, content_[j]);
  PadicMatrix f(g, nterms_, up, working_precision_ - lost);
  for (std::size_t j = 0; j < g; ++j) {
    const std::uint64_t unit = pow_u64(up, content_[chosen_[j]]);
    for (std::size_t m = 0; m < nterms_; ++m) f.set_raw(j, m, seed_rows_(chosen_[j], m) / unit);
  }
  SaturatedEchelon sat = saturate(f);
  saturated_ = std::move(sat.basis);
  saturated_pivots_ = std::move(sat.pivots);
  chosen_at_pivots_ = f.select_cols(saturated_pivots_);

  RowEchelon e = rref(saturated_.reduced(1));
  if (e.pivots.size() != g) throw Error(ErrorCode::Internal, "saturated basis is singular mod p");
  echelon_ = std::move(e.reduced);
  pivots_ = std::move(e.pivots);
  to_echelon_ = std::move(e.transform);
  from_echelon_ = inverse(to_echelon_);
}

TruncatedSeries QExpBasis::row(std::size_t i) const {
  if (i >= echelon_.rows()) throw Error(ErrorCode::BadIndex, "basis row " + std::to_string(i));
  std::vector<std::int64_t> c(nterms_);
  for (std::size_t m = 0; m < nterms_; ++m) c[m] = static_cast<std::int64_t>(echelon_(i, m));
  return TruncatedSeries(std::move(c), p_);
}

PadicMatrix QExpBasis::transport_padic(std::int64_t n) const {
  const std::int64_t level = space_->level();
  if (!hecke_index_supported(n, level)) {
    throw Error(ErrorCode::BadIndex, "T_" + std::to_string(n) + " at level " + std::to_string(level));
  }
  const std::size_t g = dimension();
  const auto up = static_cast<std::uint64_t>(p_);
  if (g == 0) return PadicMatrix(0, 0, up, working_precision_);

  const P1List& p1 = space_->p1();
  const std::size_t dim = space_->dimension();
  const std::uint64_t mod = pow_u64(up, working_precision_);

  std::vector<char> needed(dim, 0);
  for (std::size_t j : chosen_) needed[j % dim] = 1;

  // trow[r] lists (k, phi_r(T_n e_k)).
  std::vector<std::vector<std::pair<std::size_t, std::uint64_t>>> trow(dim);
  std::vector<std::uint64_t> acc(dim, 0);
  std::vector<char> hit(dim, 0);
  std::vector<std::size_t> touched;
  const auto& hs = heilbronn_merel(n);
  for (std::size_t k = 0; k < dim; ++k) {
    const P1Element& e = p1[space_->generator_symbol(k)];
    for (const auto& h : hs) {
      const std::int64_t c = (e.c * h.a + e.d * h.c) % level;
      const std::int64_t d = (e.c * h.b + e.d * h.d) % level;
      const auto idx = p1.index(c, d);
      if (!idx) continue;
      const SparseMod& m = map_padic_[*idx];
      for (std::size_t t = 0; t < m.index.size(); ++t) {
        const auto r = static_cast<std::size_t>(m.index[t]);
        if (!needed[r]) continue;
        if (!hit[r]) {
          hit[r] = 1;
          touched.push_back(r);
        }
        acc[r] = add_mod(acc[r], m.value[t], mod);
      }
    }
    for (std::size_t r : touched) {
      if (acc[r] != 0) trow[r].emplace_back(k, acc[r]);
      acc[r] = 0;
      hit[r] = 0;
    }
    touched.clear();
  }

  PadicMatrix y(g, g, up, working_precision_);
  for (std::size_t j = 0; j < g; ++j) {
    const std::size_t s = chosen_[j] / dim;
    const std::size_t r = chosen_[j] % dim;
    auto out = y.row(j);
    for (const auto& [k, v] : trow[r]) {
      const auto src = seed_rows_.row(s * dim + k);
      for (std::size_t c = 0; c < g; ++c) {
        out[c] = add_mod(out[c], mul_mod_u64(v, src[saturated_pivots_[c]], mod), mod);
      }
    }
  }
  PadicMatrix scaled(g, g, up, chosen_at_pivots_.precision());
  for (std::size_t j = 0; j < g; ++j) {
    const std::uint64_t unit = pow_u64(up, content_[chosen_[j]]);
    for (std::size_t c = 0; c < g; ++c) {
      if (y(j, c) % unit != 0) throw Error(ErrorCode::Internal, "Hecke image of a row lost integrality");
      scaled.set_raw(j, c, y(j, c) / unit);
    }
  }
  return solve(chosen_at_pivots_, scaled);
}

PadicMatrix QExpBasis::saturated_to_echelon(const PadicMatrix& op_mod_p) const {
  if (dimension() == 0) return op_mod_p;
  return to_echelon_ * op_mod_p.reduced(1) * from_echelon_;
}

PadicMatrix QExpBasis::transport(std::int64_t n) const {
  return saturated_to_echelon(transport_padic(n).reduced(1));
}

PadicMatrix QExpBasis::coefficientwise_hecke(std::int64_t n) const {
  const std::int64_t level = space_->level();
  if (!hecke_index_supported(n, level)) {
    throw Error(ErrorCode::BadIndex, "T_" + std::to_string(n) + " at level " + std::to_string(level));
  }
  const std::size_t g = dimension();
  const auto up = static_cast<std::uint64_t>(p_);
  PadicMatrix out(g, g, up, 1);
  if (g == 0) return out;
  const std::size_t limit = (nterms_ - 1) / static_cast<std::size_t>(n) + 1;
  if (pivots_.back() >= limit) {
    throw Error(ErrorCode::PrecisionExhausted, "T_" + std::to_string(n) + " needs more than " +
                                                   std::to_string(nterms_) + " terms");
  }
  const bool coprime = std::gcd(n, level) == 1;
  const auto un = static_cast<std::size_t>(n);
  std::vector<std::uint64_t> image(limit);
  for (std::size_t i = 0; i < g; ++i) {
    const auto src = echelon_.row(i);
    for (std::size_t m = 0; m < limit; ++m) {
      if (!coprime) {
        image[m] = src[m * un];
        continue;
      }
      std::uint64_t a = 0;
      const std::size_t common = std::gcd(m, un);
      for (std::size_t d = 1; d <= common; ++d) {
        if (common % d != 0) continue;
        a = (a + (d % up) * src[m * un / (d * d)]) % up;
      }
      image[m] = a;
    }
    for (std::size_t k = 0; k < g; ++k) out.set_raw(i, k, image[pivots_[k]]);
    for (std::size_t m = 0; m < limit; ++m) {
      std::uint64_t v = 0;
      for (std::size_t k = 0; k < g; ++k) v = (v + out(i, k) * echelon_(k, m)) % up;
      if (v != image[m]) {
        throw Error(ErrorCode::NotInSpan, "T_" + std::to_string(n) + " image leaves the span at q^" +
                                              std::to_string(m));
      }
    }
  }
  return out;
}

std::vector<std::uint64_t> QExpBasis::coordinates(const TruncatedSeries& s) const {
  if (s.prec() < nterms_) throw Error(ErrorCode::BadIndex, "series shorter than the basis");
  const auto up = static_cast<std::uint64_t>(p_);
  auto read = [&](std::size_t m) {
    std::int64_t v = s[m] % p_;
    if (v < 0) v += p_;
    return static_cast<std::uint64_t>(v);
  };
  const std::size_t g = dimension();
  std::vector<std::uint64_t> c(g);
  for (std::size_t k = 0; k < g; ++k) c[k] = read(pivots_[k]);
  for (std::size_t m = 0; m < nterms_; ++m) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < g; ++k) v = (v + c[k] * echelon_(k, m)) % up;
    if (v != read(m)) throw Error(ErrorCode::NotInSpan, "series leaves the span at q^" + std::to_string(m));
  }
  return c;
}

PadicMatrix QExpBasis::coordinates_padic(const PadicMatrix& coeffs) const {
  if (coeffs.rows() != 1 || coeffs.cols() < nterms_) {
    throw Error(ErrorCode::BadIndex, "coefficient row shorter than the basis");
  }
  const int prec = std::min(coeffs.precision(), saturated_.precision());
  const std::size_t g = dimension();
  PadicMatrix c(1, g, static_cast<std::uint64_t>(p_), prec);
  for (std::size_t k = 0; k < g; ++k) c.set_raw(0, k, coeffs(0, saturated_pivots_[k]));
  PadicMatrix head(1, nterms_, static_cast<std::uint64_t>(p_), prec);
  for (std::size_t m = 0; m < nterms_; ++m) head.set_raw(0, m, coeffs(0, m));
  PadicMatrix sat = saturated_;
  sat.truncate_precision(prec);
  if (!(c * sat == head)) throw Error(ErrorCode::NotInSpan, "p-adic series leaves the span");
  return c;
}

TruncatedSeries QExpBasis::combination(const std::vector<std::uint64_t>& coords) const {
  if (coords.size() != dimension()) throw Error(ErrorCode::BadIndex, "coordinate count mismatch");
  const auto up = static_cast<std::uint64_t>(p_);
  std::vector<std::int64_t> out(nterms_, 0);
  for (std::size_t m = 0; m < nterms_; ++m) {
    std::uint64_t v = 0;
    for (std::size_t k = 0; k < coords.size(); ++k) v = (v + (coords[k] % up) * echelon_(k, m)) % up;
    out[m] = static_cast<std::int64_t>(v);
  }
  return TruncatedSeries(std::move(out), p_);
}

}  // namespace dhecke
