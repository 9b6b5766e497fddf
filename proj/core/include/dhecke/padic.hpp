#pragma once

// Dense matrices over Z/p^k with a shared absolute precision.
//
// Entries are kept reduced in [0, p^precision). Operations that divide by p
// lower the precision of the whole matrix, so a result is always correct
// modulo p^precision(). With precision 1 the same type is a matrix over F_p.

#include <gmpxx.h>

#include <cstdint>
#include <span>
#include <vector>

namespace dhecke {

/// Largest k with p^k < 2^62.
int max_precision(std::uint64_t p);

/// x modulo m; throws PrecisionExhausted when the denominator is not a unit.
std::uint64_t rational_mod(const mpq_class& x, std::uint64_t m);

class PadicMatrix {
 public:
  PadicMatrix() = default;
  PadicMatrix(std::size_t rows, std::size_t cols, std::uint64_t p, int precision);
  static PadicMatrix identity(std::size_t n, std::uint64_t p, int precision);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  std::uint64_t p() const { return p_; }
  int precision() const { return precision_; }
  std::uint64_t modulus() const { return modulus_; }

  std::uint64_t operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
  std::span<std::uint64_t> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const std::uint64_t> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  void set(std::size_t i, std::size_t j, std::int64_t value);
  void set_raw(std::size_t i, std::size_t j, std::uint64_t value) { data_[i * cols_ + j] = value % modulus_; }
  /// Throws PrecisionExhausted when p divides the denominator.
  void set(std::size_t i, std::size_t j, const mpq_class& value);

  /// Valuation of an entry, capped at precision() for entries that read 0.
  int valuation(std::size_t i, std::size_t j) const;
  bool is_zero() const;

  /// Same entries read modulo p^k for k <= precision().
  PadicMatrix reduced(int k) const;
  PadicMatrix transpose() const;
  PadicMatrix select_rows(const std::vector<std::size_t>& idx) const;
  PadicMatrix select_cols(const std::vector<std::size_t>& idx) const;

  /// Drop precision to k, reducing entries.
  void truncate_precision(int k);

  std::uint64_t add(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t sub(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t mul(std::uint64_t a, std::uint64_t b) const;
  std::uint64_t neg(std::uint64_t a) const { return a == 0 ? 0 : modulus_ - a; }
  /// Inverse of a unit modulo p^precision.
  std::uint64_t inverse(std::uint64_t unit) const;

  /// row_i -= f * row_k.
  void row_axpy(std::size_t i, std::uint64_t f, std::size_t k);
  void row_scale(std::size_t i, std::uint64_t f);

  friend PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b);
  friend PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b);
  friend PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b);
  /// Equality modulo p^min(precision).
  friend bool operator==(const PadicMatrix& a, const PadicMatrix& b);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::uint64_t p_ = 2;
  int precision_ = 0;
  std::uint64_t modulus_ = 1;
  std::vector<std::uint64_t> data_;
};

std::uint64_t pow_u64(std::uint64_t p, int k);
int valuation_u64(std::uint64_t x, std::uint64_t p, int cap);

/// Full-pivot p-adic echelon form of a row lattice after saturation: the
/// rows span (Q_p rowspace) intersected with Z_p^n, each row has a 1 in its
/// pivot column and every other row has 0 there.
struct SaturatedEchelon {
  PadicMatrix basis;
  std::vector<std::size_t> pivots;
  std::vector<int> divided;  // total power of p removed from each row
};
SaturatedEchelon saturate(PadicMatrix rows);

/// Solves a * x = b for square a invertible over Q_p when x is integral.
PadicMatrix solve(const PadicMatrix& a, const PadicMatrix& b);

/// Integral rows spanning {x : x * a = 0} over Q_p; the kernel dimension
/// must equal expected.
PadicMatrix left_kernel(const PadicMatrix& a, std::size_t expected);

// Field routines; the matrix must have precision 1 (entries in F_p).

struct RowEchelon {
  PadicMatrix reduced;            // reduced row echelon form
  std::vector<std::size_t> pivots;
  PadicMatrix transform;          // transform * input == reduced
};
RowEchelon rref(const PadicMatrix& a);
std::size_t rank(const PadicMatrix& a);
PadicMatrix inverse(const PadicMatrix& a);

/// Indices of a maximal independent set of rows, earliest rows preferred.
std::vector<std::size_t> independent_rows(const PadicMatrix& a, std::size_t stop_at = SIZE_MAX);

/// Coefficients c_0, ..., c_n (c_n = 1) of det(x - a).
std::vector<std::uint64_t> charpoly(const PadicMatrix& a);

}  // namespace dhecke
