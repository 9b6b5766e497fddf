#include "dhecke/qseries.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "dhecke/error.hpp"
#include "dhecke/ffarith.hpp"

namespace dhecke {

TruncatedSeries::TruncatedSeries(std::size_t prec, std::int64_t modulus)
    : coeffs_(prec, 0), modulus_(modulus) {
  if (modulus < 0) throw Error(ErrorCode::Internal, "negative modulus");
}

TruncatedSeries::TruncatedSeries(std::vector<std::int64_t> coeffs, std::int64_t modulus)
    : coeffs_(std::move(coeffs)), modulus_(modulus) {
  if (modulus < 0) throw Error(ErrorCode::Internal, "negative modulus");
  if (modulus_ != 0) {
    for (auto& c : coeffs_) c = mod(c, modulus_);
  }
}

TruncatedSeries TruncatedSeries::monomial(std::size_t n, std::size_t prec, std::int64_t modulus) {
  TruncatedSeries s(prec, modulus);
  if (n < prec) s.set(n, 1);
  return s;
}

std::int64_t TruncatedSeries::normalize(__int128 v) const {
  if (modulus_ != 0) {
    __int128 r = v % modulus_;
    if (r < 0) r += modulus_;
    return static_cast<std::int64_t>(r);
  }
  if (v > std::numeric_limits<std::int64_t>::max() || v < std::numeric_limits<std::int64_t>::min()) {
    throw Error(ErrorCode::Internal, "integer q-series coefficient overflow");
  }
  return static_cast<std::int64_t>(v);
}

void TruncatedSeries::set(std::size_t n, std::int64_t value) { coeffs_.at(n) = normalize(value); }

bool TruncatedSeries::is_zero() const {
  return std::all_of(coeffs_.begin(), coeffs_.end(), [](std::int64_t c) { return c == 0; });
}

TruncatedSeries TruncatedSeries::truncate(std::size_t prec) const {
  if (prec > coeffs_.size()) {
    throw Error(ErrorCode::Internal, "cannot raise precision from " + std::to_string(coeffs_.size()) +
                                         " to " + std::to_string(prec));
  }
  return TruncatedSeries(std::vector<std::int64_t>(coeffs_.begin(), coeffs_.begin() + static_cast<std::ptrdiff_t>(prec)),
                         modulus_);
}

TruncatedSeries TruncatedSeries::reduce(std::int64_t p) const {
  if (modulus_ != 0 && modulus_ % p != 0) {
    throw Error(ErrorCode::RingMismatch, "cannot reduce mod " + std::to_string(p) + " from mod " +
                                             std::to_string(modulus_));
  }
  return TruncatedSeries(coeffs_, p);
}

TruncatedSeries TruncatedSeries::divide_exact(std::int64_t d) const {
  TruncatedSeries out(prec(), modulus_);
  for (std::size_t n = 0; n < prec(); ++n) {
    if (modulus_ == 0) {
      if (coeffs_[n] % d != 0) {
        throw Error(ErrorCode::Internal, "coefficient " + std::to_string(n) + " not divisible by " + std::to_string(d));
      }
      out.coeffs_[n] = coeffs_[n] / d;
    } else {
      out.coeffs_[n] = static_cast<std::int64_t>(mul_mod(coeffs_[n], inv_mod(d, modulus_), modulus_));
    }
  }
  return out;
}

TruncatedSeries TruncatedSeries::scale(std::int64_t c) const {
  TruncatedSeries out(prec(), modulus_);
  for (std::size_t n = 0; n < prec(); ++n) out.coeffs_[n] = normalize(static_cast<__int128>(coeffs_[n]) * c);
  return out;
}

namespace {

void require_same_ring(const TruncatedSeries& a, const TruncatedSeries& b) {
  if (a.modulus() != b.modulus()) {
    throw Error(ErrorCode::RingMismatch, "series over Z/" + std::to_string(a.modulus()) + " and Z/" +
                                             std::to_string(b.modulus()));
  }
}

}  // namespace

TruncatedSeries operator+(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  TruncatedSeries out(std::min(a.prec(), b.prec()), a.modulus());
  for (std::size_t n = 0; n < out.prec(); ++n) {
    out.coeffs_[n] = out.normalize(static_cast<__int128>(a.coeffs_[n]) + b.coeffs_[n]);
  }
  return out;
}

TruncatedSeries operator-(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  TruncatedSeries out(std::min(a.prec(), b.prec()), a.modulus());
  for (std::size_t n = 0; n < out.prec(); ++n) {
    out.coeffs_[n] = out.normalize(static_cast<__int128>(a.coeffs_[n]) - b.coeffs_[n]);
  }
  return out;
}

TruncatedSeries operator*(const TruncatedSeries& a, const TruncatedSeries& b) {
  require_same_ring(a, b);
  const std::size_t prec = std::min(a.prec(), b.prec());
  TruncatedSeries out(prec, a.modulus());
  std::vector<__int128> acc(prec, 0);
  for (std::size_t i = 0; i < prec; ++i) {
    if (a.coeffs_[i] == 0) continue;
    for (std::size_t j = 0; i + j < prec; ++j) {
      if (b.coeffs_[j] == 0) continue;
      acc[i + j] += static_cast<__int128>(a.coeffs_[i]) * b.coeffs_[j];
      if (a.modulus() != 0) acc[i + j] %= a.modulus();
    }
  }
  for (std::size_t n = 0; n < prec; ++n) out.coeffs_[n] = out.normalize(acc[n]);
  return out;
}

TruncatedSeries mul(const TruncatedSeries& a, const TruncatedSeries& b) { return a * b; }

TruncatedSeries eta_factor(std::int64_t d, std::size_t prec) {
  if (d < 1) throw Error(ErrorCode::BadIndex, "eta_factor needs d >= 1");
  TruncatedSeries out(prec);
  const auto limit = static_cast<std::int64_t>(prec);
  // Generalized pentagonal numbers k(3k-1)/2 for k = 0, 1, -1, 2, -2, ...
  for (std::int64_t k = 0;; ++k) {
    bool any = false;
    for (std::int64_t sk : {k, -k}) {
      if (k == 0 && sk != 0) continue;
      const std::int64_t e = d * (sk * (3 * sk - 1) / 2);
      if (e < limit) {
        out.set(static_cast<std::size_t>(e), (k % 2 == 0) ? 1 : -1);
        any = true;
      }
    }
    if (!any && k > 0) break;
  }
  return out;
}

TruncatedSeries theta_bqf(std::int64_t a, std::int64_t b, std::int64_t c, std::size_t prec) {
  const std::int64_t disc = 4 * a * c - b * b;
  if (a <= 0 || disc <= 0) {
    throw Error(ErrorCode::NotPositiveDefinite, "form (" + std::to_string(a) + "," + std::to_string(b) + "," +
                                                    std::to_string(c) + ") is not positive definite");
  }
  TruncatedSeries out(prec);
  std::vector<std::int64_t> counts(prec, 0);
  const auto n_max = static_cast<double>(prec);
  // a*Q(x,y) = (a x + b y / 2)^2 + disc y^2 / 4, so |y| <= sqrt(4 a N / disc).
  const auto y_bound = static_cast<std::int64_t>(std::sqrt(4.0 * static_cast<double>(a) * n_max / static_cast<double>(disc))) + 1;
  const auto x_radius = static_cast<std::int64_t>(std::sqrt(n_max / static_cast<double>(a))) + 1;
  for (std::int64_t y = -y_bound; y <= y_bound; ++y) {
    const auto centre = static_cast<std::int64_t>(std::llround(-static_cast<double>(b * y) / (2.0 * static_cast<double>(a))));
    for (std::int64_t x = centre - x_radius - 1; x <= centre + x_radius + 1; ++x) {
      const std::int64_t value = a * x * x + b * x * y + c * y * y;
      if (value >= 0 && value < static_cast<std::int64_t>(prec)) ++counts[static_cast<std::size_t>(value)];
    }
  }
  for (std::size_t n = 0; n < prec; ++n) out.set(n, counts[n]);
  return out;
}

TruncatedSeries v_operator(const TruncatedSeries& s, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::BadIndex, "V_m needs m >= 1");
  TruncatedSeries out(s.prec(), s.modulus());
  for (std::size_t n = 0; n * static_cast<std::size_t>(m) < s.prec(); ++n) {
    out.set(n * static_cast<std::size_t>(m), s[n]);
  }
  return out;
}

TruncatedSeries u_operator(const TruncatedSeries& s, std::int64_t m) {
  if (m < 1) throw Error(ErrorCode::BadIndex, "U_m needs m >= 1");
  const std::size_t prec = s.prec() / static_cast<std::size_t>(m);
  TruncatedSeries out(prec, s.modulus());
  for (std::size_t n = 0; n < prec; ++n) out.set(n, s[n * static_cast<std::size_t>(m)]);
  return out;
}

TruncatedSeries weight_one_form(std::int64_t disc, std::size_t prec) {
  TruncatedSeries diff;
  if (disc == -23) {
    diff = theta_bqf(1, 1, 6, prec) - theta_bqf(2, 1, 3, prec);
  } else if (disc == -31) {
    diff = theta_bqf(1, 1, 8, prec) - theta_bqf(2, 1, 4, prec);
  } else {
    throw Error(ErrorCode::UnsupportedDiscriminant, std::to_string(disc));
  }
  return diff.divide_exact(2);
}

std::int64_t sigma_coprime(std::int64_t n, std::int64_t excluded) {
  std::int64_t total = 0;
  for (std::int64_t d = 1; d * d <= n; ++d) {
    if (n % d != 0) continue;
    if (d % excluded != 0) total += d;
    const std::int64_t e = n / d;
    if (e != d && e % excluded != 0) total += e;
  }
  return total;
}

TruncatedSeries eisenstein_series_level_q(std::int64_t q, std::int64_t p, std::size_t prec) {
  if ((q - 1) % p != 0 || p < 5) {
    throw Error(ErrorCode::IncompatiblePrimes, "need p >= 5 with p | q - 1 (p = " + std::to_string(p) +
                                                   ", q = " + std::to_string(q) + ")");
  }
  TruncatedSeries out(prec, p);
  if (prec == 0) return out;
  out.set(0, static_cast<std::int64_t>(mul_mod(mod(q - 1, p), inv_mod(24, p), p)));
  for (std::size_t n = 1; n < prec; ++n) out.set(n, sigma_coprime(static_cast<std::int64_t>(n), q));
  return out;
}

}  // namespace dhecke
