#pragma once

// q-expansion basis of S_2(Gamma_0(M)) mod p from modular symbols.
//
// For a cuspidal symbol x and a linear form phi, n -> phi(T_n x) is the
// coefficient sequence of a cusp form, and T_n acts on it by t f_phi =
// f_{phi o t}. The basis is the p-saturation of g such forms, so any Hecke
// operator on symbols induces an integral matrix on it.

#include <cstdint>
#include <memory>
#include <vector>

#include "dhecke/modsym.hpp"
#include "dhecke/padic.hpp"
#include "dhecke/qseries.hpp"

namespace dhecke {

/// ceil(index(Gamma_0(M)) / 6), the weight-two Sturm bound.
std::int64_t sturm_bound(std::int64_t level);

/// Sturm bound plus five guard terms.
std::size_t pipeline_nterms(std::int64_t level);

class QExpBasis {
 public:
  QExpBasis(std::shared_ptr<const ModularSymbolSpace> space, std::int64_t p, std::size_t nterms);

  std::int64_t level() const { return space_->level(); }
  std::int64_t p() const { return p_; }
  std::size_t nterms() const { return nterms_; }
  std::size_t dimension() const { return echelon_.rows(); }
  const ModularSymbolSpace& space() const { return *space_; }

  /// Reduced row echelon basis over F_p (dimension x nterms).
  const PadicMatrix& echelon() const { return echelon_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }
  TruncatedSeries row(std::size_t i) const;

  /// The p-saturated integral basis, each row with a 1 in its pivot column.
  const PadicMatrix& saturated() const { return saturated_; }
  const std::vector<std::size_t>& saturated_pivots() const { return saturated_pivots_; }

  /// E with echelon() = E * (saturated() mod p).
  const PadicMatrix& to_echelon() const { return to_echelon_; }

  /// Operator from the Heilbronn action of T_n (U_n for n | M) carried to
  /// the saturated basis, row convention: row k is the image of row k.
  PadicMatrix transport_padic(std::int64_t n) const;

  /// The same operator on the echelon basis over F_p.
  PadicMatrix transport(std::int64_t n) const;

  /// Converts a row-convention operator on the saturated basis (mod p) to the
  /// echelon basis.
  PadicMatrix saturated_to_echelon(const PadicMatrix& op_mod_p) const;

  /// T_n from a_m(T_n f) = sum_{d | (m, n)} d a_{mn/d^2}(f) for gcd(n, M) = 1,
  /// or a_m(U_n f) = a_{mn}(f) for a prime n | M. Needs every pivot below
  /// (nterms - 1) / n.
  PadicMatrix coefficientwise_hecke(std::int64_t n) const;

  /// Coordinates over F_p in the echelon basis; throws NotInSpan.
  std::vector<std::uint64_t> coordinates(const TruncatedSeries& s) const;

  /// Coordinates in the saturated basis of a 1 x n p-adic coefficient row
  /// (n >= nterms); throws NotInSpan.
  PadicMatrix coordinates_padic(const PadicMatrix& coeffs) const;

  /// sum_i coords[i] * row_i over F_p.
  TruncatedSeries combination(const std::vector<std::uint64_t>& coords) const;

  /// Number of seed vectors that were needed to span the space.
  std::size_t seeds_used() const { return seeds_; }

 private:
  struct SparseMod {
    std::vector<std::int32_t> index;
    std::vector<std::uint64_t> value;
  };
  std::vector<SparseMod> symbol_map_mod(std::uint64_t modulus) const;
  // Rows phi_r(T_n x) modulo p^K for every free coordinate r and n < nterms.
  void seed_block(const QVec& seed, PadicMatrix& padic) const;

  std::shared_ptr<const ModularSymbolSpace> space_;
  std::int64_t p_;
  std::size_t nterms_;
  int working_precision_ = 0;
  std::size_t seeds_ = 0;
  std::vector<SparseMod> map_padic_;

  PadicMatrix seed_rows_;   // every functional on every seed, mod p^K
  std::vector<int> content_;         // p-adic valuation of each row of seed_rows_
  std::vector<std::size_t> chosen_;  // rows of seed_rows_ spanning the space
  PadicMatrix chosen_at_pivots_;     // chosen rows read at the saturated pivots

  PadicMatrix saturated_;
  std::vector<std::size_t> saturated_pivots_;
  PadicMatrix echelon_;
  std::vector<std::size_t> pivots_;
  PadicMatrix to_echelon_;
  PadicMatrix from_echelon_;
};

}  // namespace dhecke
