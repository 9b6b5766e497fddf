#include "dhecke/padic.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "dhecke/error.hpp"

namespace dhecke {

std::uint64_t pow_u64(std::uint64_t p, int k) {
  std::uint64_t r = 1;
  for (int i = 0; i < k; ++i) r *= p;
  return r;
}

int max_precision(std::uint64_t p) {
  int k = 0;
  unsigned __int128 acc = 1;
  while (acc * p < (static_cast<unsigned __int128>(1) << 62)) {
    acc *= p;
    ++k;
  }
  return k;
}

std::uint64_t rational_mod(const mpq_class& x, std::uint64_t m) {
  static_assert(sizeof(unsigned long) == sizeof(std::uint64_t));
  const mpz_class mm(static_cast<unsigned long>(m));
  mpz_class num = x.get_num() % mm;
  if (num < 0) num += mm;
  mpz_class den = x.get_den() % mm;
  mpz_class inv;
  if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), mm.get_mpz_t()) == 0) {
    throw Error(ErrorCode::PrecisionExhausted, "denominator " + x.get_den().get_str() + " is not a unit mod " +
                                                   std::to_string(m));
  }
  const mpz_class r = num * inv % mm;
  return r.get_ui();
}

int valuation_u64(std::uint64_t x, std::uint64_t p, int cap) {
  if (x == 0) return cap;
  int v = 0;
  while (x % p == 0 && v < cap) {
    x /= p;
    ++v;
  }
  return v;
}

PadicMatrix::PadicMatrix(std::size_t rows, std::size_t cols, std::uint64_t p, int precision)
    : rows_(rows), cols_(cols), p_(p), precision_(precision), modulus_(pow_u64(p, precision)),
      data_(rows * cols, 0) {
  if (precision < 1 || precision > max_precision(p)) {
    throw Error(ErrorCode::PrecisionExhausted, "precision " + std::to_string(precision) + " out of range for p = " +
                                                   std::to_string(p));
  }
}

PadicMatrix PadicMatrix::identity(std::size_t n, std::uint64_t p, int precision) {
  PadicMatrix m(n, n, p, precision);
  for (std::size_t i = 0; i < n; ++i) m.data_[i * n + i] = 1 % m.modulus_;
  return m;
}

std::uint64_t PadicMatrix::add(std::uint64_t a, std::uint64_t b) const {
  const std::uint64_t s = a + b;
  return s >= modulus_ ? s - modulus_ : s;
}

std::uint64_t PadicMatrix::sub(std::uint64_t a, std::uint64_t b) const { return a >= b ? a - b : a + modulus_ - b; }

std::uint64_t PadicMatrix::mul(std::uint64_t a, std::uint64_t b) const {
  if (modulus_ < (1ULL << 32)) return a * b % modulus_;
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % modulus_);
}

std::uint64_t PadicMatrix::inverse(std::uint64_t unit) const {
  // Extended Euclid on signed 128-bit to stay clear of overflow.
  __int128 r0 = static_cast<__int128>(modulus_), r1 = unit % modulus_;
  __int128 s0 = 0, s1 = 1;
  while (r1 != 0) {
    const __int128 q = r0 / r1;
    __int128 t = r0 - q * r1;
    r0 = r1;
    r1 = t;
    t = s0 - q * s1;
    s0 = s1;
    s1 = t;
  }
  if (r0 != 1) throw Error(ErrorCode::NonInvertible, "entry is not a p-adic unit");
  __int128 m = static_cast<__int128>(modulus_);
  __int128 res = s0 % m;
  if (res < 0) res += m;
  return static_cast<std::uint64_t>(res);
}

void PadicMatrix::set(std::size_t i, std::size_t j, std::int64_t value) {
  const auto m = static_cast<__int128>(modulus_);
  __int128 v = static_cast<__int128>(value) % m;
  if (v < 0) v += m;
  data_[i * cols_ + j] = static_cast<std::uint64_t>(v);
}

void PadicMatrix::set(std::size_t i, std::size_t j, const mpq_class& value) {
  data_[i * cols_ + j] = rational_mod(value, modulus_);
}

int PadicMatrix::valuation(std::size_t i, std::size_t j) const {
  return valuation_u64(data_[i * cols_ + j], p_, precision_);
}

bool PadicMatrix::is_zero() const {
  return std::all_of(data_.begin(), data_.end(), [](std::uint64_t x) { return x == 0; });
}

PadicMatrix PadicMatrix::reduced(int k) const {
  if (k > precision_) {
    throw Error(ErrorCode::PrecisionExhausted, "asked for " + std::to_string(k) + " digits, only " +
                                                   std::to_string(precision_) + " known");
  }
  PadicMatrix out = *this;
  out.truncate_precision(k);
  return out;
}

void PadicMatrix::truncate_precision(int k) {
  if (k >= precision_) return;
  if (k < 1) throw Error(ErrorCode::PrecisionExhausted, "p-adic precision exhausted");
  precision_ = k;
  modulus_ = pow_u64(p_, k);
  for (auto& x : data_) x %= modulus_;
}

PadicMatrix PadicMatrix::transpose() const {
  PadicMatrix out(cols_, rows_, p_, precision_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) out.data_[j * rows_ + i] = data_[i * cols_ + j];
  }
  return out;
}

PadicMatrix PadicMatrix::select_rows(const std::vector<std::size_t>& idx) const {
  PadicMatrix out(idx.size(), cols_, p_, precision_);
  for (std::size_t r = 0; r < idx.size(); ++r) {
    std::copy_n(data_.begin() + static_cast<std::ptrdiff_t>(idx[r] * cols_), cols_,
                out.data_.begin() + static_cast<std::ptrdiff_t>(r * cols_));
  }
  return out;
}

PadicMatrix PadicMatrix::select_cols(const std::vector<std::size_t>& idx) const {
  PadicMatrix out(rows_, idx.size(), p_, precision_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t c = 0; c < idx.size(); ++c) out.data_[i * idx.size() + c] = data_[i * cols_ + idx[c]];
  }
  return out;
}

void PadicMatrix::row_axpy(std::size_t i, std::uint64_t f, std::size_t k) {
  if (f == 0) return;
  std::uint64_t* ri = data_.data() + i * cols_;
  const std::uint64_t* rk = data_.data() + k * cols_;
  for (std::size_t j = 0; j < cols_; ++j) {
    if (rk[j] != 0) ri[j] = sub(ri[j], mul(f, rk[j]));
  }
}

void PadicMatrix::row_scale(std::size_t i, std::uint64_t f) {
  std::uint64_t* ri = data_.data() + i * cols_;
  for (std::size_t j = 0; j < cols_; ++j) ri[j] = mul(ri[j], f);
}

namespace {

void require_compatible(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.p() != b.p()) throw Error(ErrorCode::RingMismatch, "p-adic matrices over different primes");
}

}  // namespace

PadicMatrix operator*(const PadicMatrix& a, const PadicMatrix& b) {
  require_compatible(a, b);
  if (a.cols() != b.rows()) throw Error(ErrorCode::Internal, "matrix shape mismatch in product");
  PadicMatrix lhs = a.reduced(std::min(a.precision(), b.precision()));
  PadicMatrix out(a.rows(), b.cols(), a.p(), lhs.precision());
  const std::uint64_t m = out.modulus();
  std::vector<unsigned __int128> acc(b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    std::fill(acc.begin(), acc.end(), 0);
    int pending = 0;
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const std::uint64_t x = lhs(i, k);
      if (x == 0) continue;
      const auto brow = b.row(k);
      for (std::size_t j = 0; j < b.cols(); ++j) acc[j] += static_cast<unsigned __int128>(x) * (brow[j] % m);
      // Products are below 2^124, so eight of them fit before reducing.
      if (++pending == 8) {
        for (auto& v : acc) v %= m;
        pending = 0;
      }
    }
    auto orow = out.row(i);
    for (std::size_t j = 0; j < b.cols(); ++j) orow[j] = static_cast<std::uint64_t>(acc[j] % m);
  }
  return out;
}

PadicMatrix operator+(const PadicMatrix& a, const PadicMatrix& b) {
  require_compatible(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::Internal, "matrix shape mismatch in sum");
  PadicMatrix out = a.reduced(std::min(a.precision(), b.precision()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = out.row(i);
    const auto s = b.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = out.add(r[j], s[j] % out.modulus());
  }
  return out;
}

PadicMatrix operator-(const PadicMatrix& a, const PadicMatrix& b) {
  require_compatible(a, b);
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw Error(ErrorCode::Internal, "matrix shape mismatch in difference");
  PadicMatrix out = a.reduced(std::min(a.precision(), b.precision()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    auto r = out.row(i);
    const auto s = b.row(i);
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = out.sub(r[j], s[j] % out.modulus());
  }
  return out;
}

bool operator==(const PadicMatrix& a, const PadicMatrix& b) {
  if (a.p() != b.p() || a.rows() != b.rows() || a.cols() != b.cols()) return false;
  const std::uint64_t m = pow_u64(a.p(), std::min(a.precision(), b.precision()));
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) {
      if (a(i, j) % m != b(i, j) % m) return false;
    }
  }
  return true;
}

namespace {

// Divide every entry of row i by p^v; all entries must be divisible.
void divide_row(PadicMatrix& m, std::size_t i, int v) {
  const std::uint64_t pv = pow_u64(m.p(), v);
  for (auto& x : m.row(i)) {
    if (x % pv != 0) throw Error(ErrorCode::Internal, "row not divisible during saturation");
    x /= pv;
  }
}

struct Pivot {
  std::size_t row;
  std::size_t col;
  int val;
};

// Minimum-valuation entry over the given rows and unused columns.
Pivot find_pivot(const PadicMatrix& m, const std::vector<char>& row_done, const std::vector<char>& col_done) {
  Pivot best{0, 0, m.precision()};
  for (std::size_t i = 0; i < m.rows(); ++i) {
    if (row_done[i]) continue;
    const auto r = m.row(i);
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (col_done[j] || r[j] == 0) continue;
      const int v = valuation_u64(r[j], m.p(), m.precision());
      if (v < best.val) {
        best = {i, j, v};
        if (v == 0) return best;
      }
    }
  }
  return best;
}

}  // namespace

SaturatedEchelon saturate(PadicMatrix m) {
  const std::size_t r = m.rows();
  std::vector<char> row_done(r, 0), col_done(m.cols(), 0);
  std::vector<std::size_t> pivot_col(r, 0);
  std::vector<int> divided(r, 0);
  for (std::size_t step = 0; step < r; ++step) {
    Pivot pv = find_pivot(m, row_done, col_done);
    if (pv.val >= m.precision()) {
      throw Error(ErrorCode::PrecisionExhausted, "rows are dependent to the working precision");
    }
    if (pv.val > 0) {
      // Every remaining row lies in p^v Z_p^n: divide them all.
      for (std::size_t i = 0; i < r; ++i) {
        if (row_done[i]) continue;
        divide_row(m, i, pv.val);
        divided[i] += pv.val;
      }
      // Divided rows are known to p^(k - v); the matrix carries the minimum.
      m.truncate_precision(m.precision() - pv.val);
    }
    m.row_scale(pv.row, m.inverse(m(pv.row, pv.col)));
    for (std::size_t i = 0; i < r; ++i) {
      if (i != pv.row) m.row_axpy(i, m(i, pv.col), pv.row);
    }
    row_done[pv.row] = 1;
    col_done[pv.col] = 1;
    pivot_col[pv.row] = pv.col;
  }
  return {std::move(m), std::move(pivot_col), std::move(divided)};
}

PadicMatrix solve(const PadicMatrix& a_in, const PadicMatrix& b_in) {
  if (a_in.rows() != a_in.cols() || a_in.rows() != b_in.rows()) {
    throw Error(ErrorCode::Internal, "solve needs a square system");
  }
  const std::size_t n = a_in.rows();
  const int prec = std::min(a_in.precision(), b_in.precision());
  PadicMatrix a = a_in.reduced(prec);
  PadicMatrix b = b_in.reduced(prec);
  std::vector<char> row_done(n, 0), col_done(n, 0);
  std::vector<Pivot> order;
  for (std::size_t step = 0; step < n; ++step) {
    const Pivot pv = find_pivot(a, row_done, col_done);
    if (pv.val >= a.precision()) throw Error(ErrorCode::PrecisionExhausted, "singular system to working precision");
    const std::uint64_t u = a.inverse(a(pv.row, pv.col) / pow_u64(a.p(), pv.val));
    a.row_scale(pv.row, u);
    b.row_scale(pv.row, u);
    row_done[pv.row] = 1;
    col_done[pv.col] = 1;
    order.push_back(pv);
    if (pv.val > 0) {
      // Elimination factors are entry / p^v, known to p^(k - v).
      const std::uint64_t pvv = pow_u64(a.p(), pv.val);
      std::vector<std::uint64_t> factors(n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        if (!row_done[i]) factors[i] = a(i, pv.col) / pvv;
      }
      a.truncate_precision(a.precision() - pv.val);
      b.truncate_precision(b.precision() - pv.val);
      for (std::size_t i = 0; i < n; ++i) {
        if (row_done[i]) continue;
        a.row_axpy(i, factors[i] % a.modulus(), pv.row);
        b.row_axpy(i, factors[i] % b.modulus(), pv.row);
      }
    } else {
      for (std::size_t i = 0; i < n; ++i) {
        if (row_done[i]) continue;
        const std::uint64_t f = a(i, pv.col);
        a.row_axpy(i, f, pv.row);
        b.row_axpy(i, f, pv.row);
      }
    }
  }
  // Back substitution: x[col_s] = (b[row_s] - sum_{t > s} a[row_s][col_t] x[col_t]) / p^{v_s}.
  PadicMatrix x(n, b.cols(), a.p(), a.precision());
  for (std::size_t s = n; s-- > 0;) {
    const Pivot& pv = order[s];
    std::vector<std::uint64_t> acc(b.row(pv.row).begin(), b.row(pv.row).end());
    for (std::size_t t = s + 1; t < n; ++t) {
      const std::uint64_t f = a(pv.row, order[t].col);
      if (f == 0) continue;
      const auto xr = x.row(order[t].col);
      for (std::size_t j = 0; j < acc.size(); ++j) acc[j] = x.sub(acc[j], x.mul(f, xr[j]));
    }
    if (pv.val > 0) {
      const std::uint64_t pvv = pow_u64(a.p(), pv.val);
      for (auto& v : acc) {
        if (v % pvv != 0) throw Error(ErrorCode::NotInSpan, "solution is not p-integral");
        v /= pvv;
      }
      x.truncate_precision(x.precision() - pv.val);
    }
    auto xr = x.row(pv.col);
    for (std::size_t j = 0; j < acc.size(); ++j) xr[j] = acc[j] % x.modulus();
  }
  return x;
}

PadicMatrix left_kernel(const PadicMatrix& a_in, std::size_t expected) {
  // x a = 0  <=>  a^T x^T = 0; eliminate on the transpose.
  PadicMatrix m = a_in.transpose();
  const std::size_t rows = m.rows(), cols = m.cols();
  if (expected > cols) throw Error(ErrorCode::Internal, "kernel larger than the space");
  const std::size_t rank_expected = cols - expected;
  std::vector<char> row_done(rows, 0), col_done(cols, 0);
  std::vector<Pivot> order;
  for (std::size_t step = 0; step < rank_expected; ++step) {
    const Pivot pv = find_pivot(m, row_done, col_done);
    if (pv.val >= m.precision()) throw Error(ErrorCode::PrecisionExhausted, "kernel larger than expected");
    m.row_scale(pv.row, m.inverse(m(pv.row, pv.col) / pow_u64(m.p(), pv.val)));
    row_done[pv.row] = 1;
    col_done[pv.col] = 1;
    order.push_back(pv);
    const std::uint64_t pvv = pow_u64(m.p(), pv.val);
    std::vector<std::uint64_t> factors(rows, 0);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!row_done[i]) factors[i] = m(i, pv.col) / pvv;
    }
    m.truncate_precision(m.precision() - pv.val);
    for (std::size_t i = 0; i < rows; ++i) {
      if (!row_done[i]) m.row_axpy(i, factors[i] % m.modulus(), pv.row);
    }
  }
  const Pivot rest = find_pivot(m, row_done, col_done);
  if (rest.val < m.precision()) throw Error(ErrorCode::Internal, "kernel smaller than expected");

  int scale_exp = 0;
  for (const auto& pv : order) scale_exp += pv.val;
  std::vector<std::size_t> free_cols;
  for (std::size_t j = 0; j < cols; ++j) {
    if (!col_done[j]) free_cols.push_back(j);
  }
  PadicMatrix out(expected, cols, m.p(), m.precision());
  const std::uint64_t scale = pow_u64(m.p(), scale_exp) % out.modulus();
  int lost = 0;
  std::vector<std::vector<std::uint64_t>> vecs(expected, std::vector<std::uint64_t>(cols, 0));
  for (std::size_t k = 0; k < expected; ++k) {
    auto& x = vecs[k];
    x[free_cols[k]] = scale;
    int local_lost = 0;
    for (std::size_t s = order.size(); s-- > 0;) {
      const Pivot& pv = order[s];
      std::uint64_t acc = 0;
      for (std::size_t j = 0; j < cols; ++j) {
        if (j == pv.col || x[j] == 0) continue;
        acc = out.add(acc, out.mul(m(pv.row, j) % out.modulus(), x[j]));
      }
      const std::uint64_t pvv = pow_u64(m.p(), pv.val);
      if (acc % pvv != 0) throw Error(ErrorCode::Internal, "kernel back substitution not exact");
      x[pv.col] = out.neg((acc / pvv) % out.modulus());
      local_lost += pv.val;
    }
    lost = std::max(lost, local_lost);
  }
  for (std::size_t k = 0; k < expected; ++k) {
    for (std::size_t j = 0; j < cols; ++j) out.set_raw(k, j, vecs[k][j]);
  }
  out.truncate_precision(out.precision() - lost);
  return out;
}

namespace {

void require_field(const PadicMatrix& a) {
  if (a.precision() != 1) throw Error(ErrorCode::Internal, "field routine called on a p-adic matrix");
}

}  // namespace

RowEchelon rref(const PadicMatrix& a) {
  require_field(a);
  PadicMatrix m = a;
  PadicMatrix t = PadicMatrix::identity(a.rows(), a.p(), 1);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t col = 0; col < m.cols() && r < m.rows(); ++col) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, col) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r) {
      std::swap_ranges(m.row(piv).begin(), m.row(piv).end(), m.row(r).begin());
      std::swap_ranges(t.row(piv).begin(), t.row(piv).end(), t.row(r).begin());
    }
    const std::uint64_t inv = m.inverse(m(r, col));
    m.row_scale(r, inv);
    t.row_scale(r, inv);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, col) == 0) continue;
      const std::uint64_t f = m(i, col);
      m.row_axpy(i, f, r);
      t.row_axpy(i, f, r);
    }
    pivots.push_back(col);
    ++r;
  }
  return {std::move(m), std::move(pivots), std::move(t)};
}

std::size_t rank(const PadicMatrix& a) { return independent_rows(a).size(); }

PadicMatrix inverse(const PadicMatrix& a) {
  if (a.rows() != a.cols()) throw Error(ErrorCode::Internal, "inverse of a non-square matrix");
  RowEchelon e = rref(a);
  if (e.pivots.size() != a.rows()) throw Error(ErrorCode::NonInvertible, "singular matrix mod p");
  return e.transform;
}

std::vector<std::size_t> independent_rows(const PadicMatrix& a, std::size_t stop_at) {
  require_field(a);
  const std::size_t cols = a.cols();
  // Reduced basis rows with their pivot columns, each pivot normalized to 1.
  PadicMatrix basis(std::min(a.rows(), cols), cols, a.p(), 1);
  std::vector<std::size_t> pivot_cols, chosen;
  std::vector<std::uint64_t> work(cols);
  for (std::size_t i = 0; i < a.rows() && chosen.size() < stop_at && chosen.size() < basis.rows(); ++i) {
    const auto src = a.row(i);
    std::copy(src.begin(), src.end(), work.begin());
    for (std::size_t k = 0; k < pivot_cols.size(); ++k) {
      const std::uint64_t f = work[pivot_cols[k]];
      if (f == 0) continue;
      const auto br = basis.row(k);
      for (std::size_t j = 0; j < cols; ++j) {
        if (br[j] != 0) work[j] = a.sub(work[j], a.mul(f, br[j]));
      }
    }
    std::size_t lead = cols;
    for (std::size_t j = 0; j < cols; ++j) {
      if (work[j] != 0) {
        lead = j;
        break;
      }
    }
    if (lead == cols) continue;
    const std::uint64_t inv = a.inverse(work[lead]);
    auto br = basis.row(pivot_cols.size());
    for (std::size_t j = 0; j < cols; ++j) br[j] = a.mul(work[j], inv);
    pivot_cols.push_back(lead);
    chosen.push_back(i);
  }
  return chosen;
}

std::vector<std::uint64_t> charpoly(const PadicMatrix& a_in) {
  require_field(a_in);
  const std::size_t n = a_in.rows();
  if (a_in.cols() != n) throw Error(ErrorCode::Internal, "charpoly of a non-square matrix");
  PadicMatrix h = a_in;
  auto at = [&](std::size_t i, std::size_t j) -> std::uint64_t& { return h.row(i)[j]; };
  // Reduce to upper Hessenberg form by similarity transformations.
  for (std::size_t m = 1; m + 1 < n; ++m) {
    std::size_t i = m;
    while (i < n && at(i, m - 1) == 0) ++i;
    if (i == n) continue;
    if (i != m) {
      for (std::size_t j = 0; j < n; ++j) std::swap(at(i, j), at(m, j));
      for (std::size_t j = 0; j < n; ++j) std::swap(at(j, i), at(j, m));
    }
    const std::uint64_t inv = h.inverse(at(m, m - 1));
    for (std::size_t r = m + 1; r < n; ++r) {
      const std::uint64_t u = h.mul(at(r, m - 1), inv);
      if (u == 0) continue;
      for (std::size_t j = 0; j < n; ++j) at(r, j) = h.sub(at(r, j), h.mul(u, at(m, j)));
      for (std::size_t j = 0; j < n; ++j) at(j, m) = h.add(at(j, m), h.mul(u, at(j, r)));
    }
  }
  // Recurrence on leading principal minors of x - H.
  std::vector<std::vector<std::uint64_t>> polys(n + 1);
  polys[0] = {1};
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<std::uint64_t> next(k + 1, 0);
    const auto& prev = polys[k - 1];
    for (std::size_t d = 0; d < prev.size(); ++d) {
      next[d + 1] = h.add(next[d + 1], prev[d]);
      next[d] = h.sub(next[d], h.mul(at(k - 1, k - 1), prev[d]));
    }
    std::uint64_t t = 1;
    for (std::size_t i = 1; i < k; ++i) {
      t = h.mul(t, at(k - i, k - i - 1));
      const std::uint64_t coeff = h.mul(t, at(k - i - 1, k - 1));
      const auto& older = polys[k - i - 1];
      for (std::size_t d = 0; d < older.size(); ++d) next[d] = h.sub(next[d], h.mul(coeff, older[d]));
    }
    polys[k] = std::move(next);
  }
  return polys[n];
}

}  // namespace dhecke
