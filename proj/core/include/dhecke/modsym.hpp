#pragma once

// Weight-two modular symbols for Gamma_0(M) over Q.
//
// The space is presented by Manin symbols (c : d) in P^1(Z/M) modulo the
// two-term relation x + x*S = 0 and the three-term relation
// x + x*T + x*T^2 = 0. Elements are stored as sparse rational vectors in the
// coordinates of the free generators left over after elimination.

#include <gmpxx.h>

#include <cstdint>
#include <memory>
#include <utility>
#include <vector>

#include "dhecke/p1list.hpp"

namespace dhecke {

struct QTerm {
  std::int32_t index = 0;
  mpq_class value;
};

/// Sparse rational vector, sorted by index, no explicit zeros.
using QVec = std::vector<QTerm>;
using QMatrix = std::vector<std::vector<mpq_class>>;

/// out += scale * v.
void axpy(QVec& out, const mpq_class& scale, const QVec& v);
mpq_class coefficient(const QVec& v, std::int32_t index);

/// Integer matrix [[a, b], [c, d]] acting on Manin symbols from the right:
/// (u : v) . h = (u a + v c : u b + v d).
struct Heilbronn {
  std::int32_t a, b, c, d;
};

/// Merel's set {ad - bc = n, a > b >= 0, d > c >= 0}; cached per n and safe
/// to call from several threads.
const std::vector<Heilbronn>& heilbronn_merel(std::int64_t n);

/// Integral matrix of determinant 1 lifting (c : d) from P^1(Z/M).
struct SL2Lift {
  std::int64_t a, b, c, d;
};
SL2Lift lift_to_sl2z(std::int64_t c, std::int64_t d, std::int64_t level);

/// A cusp u/v in lowest terms with v >= 0; infinity is 1/0.
struct Cusp {
  std::int64_t u = 1;
  std::int64_t v = 0;
};

/// Gamma_0(M)-equivalence of cusps (Cremona's criterion).
bool cusps_equivalent(const Cusp& x, const Cusp& y, std::int64_t level);

class ModularSymbolSpace {
 public:
  explicit ModularSymbolSpace(std::int64_t level);

  std::int64_t level() const { return level_; }
  const P1List& p1() const { return p1_; }

  /// Dimension of the full space (cuspidal plus boundary part).
  std::size_t dimension() const { return generators_.size(); }
  std::size_t cuspidal_dimension() const { return cuspidal_basis_.size(); }

  /// P^1 index of free generator k.
  std::size_t generator_symbol(std::size_t k) const { return generators_[k]; }

  /// Manin symbol with P^1 index i, in free coordinates.
  const QVec& reduce_symbol(std::size_t i) const { return symbol_map_[i]; }

  /// Manin symbol (c : d); zero when gcd(c, d, M) != 1.
  QVec manin_symbol(std::int64_t c, std::int64_t d) const;

  /// Modular symbol {x, y} via continued fractions.
  QVec modular_symbol(const Cusp& x, const Cusp& y) const;

  const std::vector<Cusp>& cusps() const { return cusps_; }
  std::size_t cusp_class(const Cusp& x) const;

  /// Image in the free Q-module on the cusp classes.
  QVec boundary(const QVec& v) const;

  /// Sparse kernel basis of the boundary map. Basis vector k has
  /// coefficient 1 at free coordinate cuspidal_pivots()[k] and no other basis
  /// vector touches that coordinate.
  const std::vector<QVec>& cuspidal_basis() const { return cuspidal_basis_; }
  const std::vector<std::size_t>& cuspidal_pivots() const { return cuspidal_pivots_; }

  /// Coordinates of a cuspidal vector in cuspidal_basis().
  std::vector<mpq_class> cuspidal_coordinates(const QVec& v) const;

  /// Heilbronn action of T_n for any n >= 1 (U_n when n | M).
  QVec hecke(std::int64_t n, const QVec& v) const;
  QVec atkin_lehner(std::int64_t n, const QVec& v) const;
  QVec star(const QVec& v) const;

  /// Matrices on cuspidal_basis() in the row convention: row k holds the
  /// coordinates of the image of basis vector k.
  QMatrix hecke_matrix(std::int64_t n) const;
  QMatrix atkin_lehner_matrix(std::int64_t n) const;
  QMatrix star_matrix() const;

  /// Largest prime dividing a denominator in the quotient map.
  std::int64_t worst_denominator_prime() const { return worst_denominator_prime_; }

 private:
  template <class F>
  QMatrix cuspidal_matrix(F&& op) const;
  QVec zero_to(std::int64_t u, std::int64_t v) const;
  void build_quotient();
  void build_boundary();

  std::int64_t level_;
  P1List p1_;
  std::vector<std::size_t> generators_;
  std::vector<QVec> symbol_map_;
  std::vector<Cusp> cusps_;
  std::vector<QVec> cuspidal_basis_;
  std::vector<std::size_t> cuspidal_pivots_;
  std::int64_t worst_denominator_prime_ = 1;
};

/// n | level and gcd(n, level / n) = 1.
bool exactly_divides(std::int64_t n, std::int64_t level);

/// Enlarge the Z-lattice spanned by Q-independent integer rows until its
/// reduction mod p has full rank.
std::vector<std::vector<mpz_class>> p_saturate(std::vector<std::vector<mpz_class>> rows, std::int64_t p);

}  // namespace dhecke
