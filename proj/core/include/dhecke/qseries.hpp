#pragma once

// Truncated q-expansions over Z or F_p and the concrete forms the pipeline
// needs: eta products, binary theta series, the weight-one forms of level 23
// and 31, and the weight-two Eisenstein series of prime level.

#include <cstdint>
#include <span>
#include <vector>

namespace dhecke {

/// a_0 + a_1 q + ... + a_{prec-1} q^{prec-1} + O(q^prec).
/// modulus == 0 means integer coefficients; otherwise coefficients live in
/// [0, modulus).
class TruncatedSeries {
 public:
  TruncatedSeries() = default;
  explicit TruncatedSeries(std::size_t prec, std::int64_t modulus = 0);
  TruncatedSeries(std::vector<std::int64_t> coeffs, std::int64_t modulus = 0);

  static TruncatedSeries monomial(std::size_t n, std::size_t prec, std::int64_t modulus = 0);

  std::size_t prec() const { return coeffs_.size(); }
  std::int64_t modulus() const { return modulus_; }
  bool is_integral() const { return modulus_ == 0; }

  std::int64_t operator[](std::size_t n) const { return coeffs_.at(n); }
  void set(std::size_t n, std::int64_t value);
  std::span<const std::int64_t> coeffs() const { return coeffs_; }

  bool is_zero() const;
  TruncatedSeries truncate(std::size_t prec) const;
  TruncatedSeries reduce(std::int64_t p) const;

  /// Exact division of every coefficient; throws Internal on a remainder.
  TruncatedSeries divide_exact(std::int64_t d) const;
  TruncatedSeries scale(std::int64_t c) const;

  friend TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b);
  friend TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b);
  friend bool operator==(const TruncatedSeries& a, const TruncatedSeries& b) = default;

 private:
  std::int64_t normalize(__int128 v) const;

  std::vector<std::int64_t> coeffs_;
  std::int64_t modulus_ = 0;
};

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b);

/// prod_{n>=1} (1 - q^{dn}) via the pentagonal number theorem.
TruncatedSeries eta_factor(std::int64_t d, std::size_t prec);

/// sum over (x, y) in Z^2 of q^{a x^2 + b x y + c y^2}.
TruncatedSeries theta_bqf(std::int64_t a, std::int64_t b, std::int64_t c, std::size_t prec);

/// f(q) -> f(q^m).
TruncatedSeries v_operator(const TruncatedSeries& s, std::int64_t m);

/// sum a_n q^n -> sum a_{nm} q^n, precision floor(prec / m).
TruncatedSeries u_operator(const TruncatedSeries& s, std::int64_t m);

/// The normalized weight-one newform attached to the cubic field of
/// discriminant -23 or -31, as half the difference of the two theta series of
/// the reduced forms of that discriminant.
TruncatedSeries weight_one_form(std::int64_t disc, std::size_t prec);

/// Weight-two Eisenstein series of level q reduced mod p:
/// a_0 = (q-1)/24, a_n = sum_{d | n, q !| d} d.
TruncatedSeries eisenstein_series_level_q(std::int64_t q, std::int64_t p, std::size_t prec);

/// sum_{d | n, gcd(d, excluded) = 1} d for n >= 1.
std::int64_t sigma_coprime(std::int64_t n, std::int64_t excluded);

}  // namespace dhecke
