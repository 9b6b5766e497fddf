#include "dhecke/heckeops.hpp"

#include <algorithm>
#include <string>
#include <utility>

#include "dhecke/error.hpp"
#include "dhecke/ffarith.hpp"

namespace dhecke {

namespace {

using Poly = std::vector<std::uint64_t>;  // low degree first, no trailing zeros

void trim(Poly& a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
}

Poly poly_mul(const Poly& a, const Poly& b, std::uint64_t p) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] = (out[i + j] + a[i] * b[j]) % p;
  }
  trim(out);
  return out;
}

Poly poly_sub(const Poly& a, const Poly& b, std::uint64_t p) {
  Poly out(std::max(a.size(), b.size()), 0);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const std::uint64_t x = i < a.size() ? a[i] : 0;
    const std::uint64_t y = i < b.size() ? b[i] : 0;
    out[i] = (x + p - y) % p;
  }
  trim(out);
  return out;
}

std::pair<Poly, Poly> poly_divmod(Poly a, const Poly& b, std::uint64_t p) {
  if (b.empty()) throw Error(ErrorCode::ZeroArgument, "polynomial division by zero");
  const auto lead_inv = static_cast<std::uint64_t>(inv_mod(static_cast<std::int64_t>(b.back()), static_cast<std::int64_t>(p)));
  Poly quot(a.size() >= b.size() ? a.size() - b.size() + 1 : 0, 0);
  while (a.size() >= b.size() && !a.empty()) {
    const std::size_t shift = a.size() - b.size();
    const std::uint64_t f = a.back() * lead_inv % p;
    quot[shift] = f;
    for (std::size_t i = 0; i < b.size(); ++i) a[i + shift] = (a[i + shift] + p - f * b[i] % p) % p;
    trim(a);
  }
  trim(quot);
  return {quot, a};
}

// t with t * h = 1 mod m; requires gcd(h, m) = 1.
Poly poly_inverse_mod(const Poly& h, const Poly& m, std::uint64_t p) {
  Poly r0 = m, r1 = poly_divmod(h, m, p).second;
  Poly t0, t1 = {1};
  while (!r1.empty()) {
    auto [quot, rem] = poly_divmod(r0, r1, p);
    Poly t2 = poly_sub(t0, poly_mul(quot, t1, p), p);
    r0 = std::move(r1);
    r1 = std::move(rem);
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.size() != 1) throw Error(ErrorCode::Internal, "eigenvalue factor is not coprime to its cofactor");
  const auto c = static_cast<std::uint64_t>(inv_mod(static_cast<std::int64_t>(r0[0]), static_cast<std::int64_t>(p)));
  Poly out = poly_divmod(poly_mul(t0, Poly{c}, p), m, p).second;
  return out;
}

PadicMatrix poly_eval(const Poly& f, const PadicMatrix& t) {
  const std::size_t n = t.rows();
  PadicMatrix out(n, n, t.p(), 1);
  for (std::size_t k = f.size(); k-- > 0;) {
    out = out * t;
    for (std::size_t i = 0; i < n; ++i) out.set_raw(i, i, out.add(out(i, i), f[k]));
  }
  return out;
}

std::vector<std::uint64_t> row_times(const std::vector<std::uint64_t>& x, const PadicMatrix& m) {
  std::vector<std::uint64_t> out(m.cols(), 0);
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < m.cols(); ++j) out[j] = m.add(out[j], m.mul(x[i] % m.modulus(), m(i, j)));
  }
  return out;
}

// 1 x n coefficient row of a saturated basis row, optionally composed with V_n.
PadicMatrix padic_row(const PadicMatrix& rows, std::size_t i, std::size_t nterms, std::int64_t v) {
  PadicMatrix out(1, nterms, rows.p(), rows.precision());
  const auto uv = static_cast<std::size_t>(v);
  for (std::size_t m = 0; m < nterms; m += uv) {
    if (m / uv < rows.cols()) out.set_raw(0, m, rows(i, m / uv));
  }
  return out;
}

void copy_row(PadicMatrix& dst, std::size_t i, const PadicMatrix& src, std::size_t k) {
  for (std::size_t j = 0; j < src.cols(); ++j) dst.set_raw(i, j, src(k, j));
}

const char* order_name(TraceOrder order) { return order == TraceOrder::WThenU ? "W then U" : "U then W"; }

}  // namespace

std::shared_ptr<const ModularSymbolSpace> LevelCache::space(std::int64_t level) {
  std::promise<std::shared_ptr<const ModularSymbolSpace>> promise;
  std::shared_future<std::shared_ptr<const ModularSymbolSpace>> future;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    auto it = spaces_.find(level);
    if (it == spaces_.end()) {
      future = promise.get_future().share();
      spaces_.emplace(level, future);
      owner = true;
    } else {
      future = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(std::make_shared<const ModularSymbolSpace>(level));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

std::shared_ptr<const QExpBasis> LevelCache::basis(std::int64_t level, std::int64_t p, std::size_t nterms) {
  const auto key = std::make_tuple(level, p, nterms);
  std::promise<std::shared_ptr<const QExpBasis>> promise;
  std::shared_future<std::shared_ptr<const QExpBasis>> future;
  bool owner = false;
  {
    std::lock_guard lock(mutex_);
    auto it = bases_.find(key);
    if (it == bases_.end()) {
      future = promise.get_future().share();
      bases_.emplace(key, future);
      owner = true;
    } else {
      future = it->second;
    }
  }
  if (owner) {
    try {
      promise.set_value(std::make_shared<const QExpBasis>(space(level), p, nterms));
    } catch (...) {
      promise.set_exception(std::current_exception());
    }
  }
  return future.get();
}

LevelCache& LevelCache::global() {
  static LevelCache cache;
  return cache;
}

EmbeddedForm embed(const TruncatedSeries& series, std::shared_ptr<const QExpBasis> basis) {
  if (series.prec() < basis->nterms()) {
    throw Error(ErrorCode::NotInSpan, "series has " + std::to_string(series.prec()) + " terms, basis needs " +
                                          std::to_string(basis->nterms()));
  }
  if (series[0] % basis->p() != 0) throw Error(ErrorCode::NotInSpan, "series has a nonzero constant term");
  EmbeddedForm out;
  out.coords = basis->coordinates(series);
  out.basis = std::move(basis);
  return out;
}

std::int64_t weight_one_level(std::int64_t disc) {
  if (disc == -23) return 23;
  if (disc == -31) return 31;
  throw Error(ErrorCode::UnsupportedDiscriminant, "discriminant " + std::to_string(disc));
}

TraceOperator::TraceOperator(std::shared_ptr<const QExpBasis> upper, std::shared_ptr<const QExpBasis> lower,
                             std::int64_t n)
    : upper_(std::move(upper)), lower_(std::move(lower)), n_(n) {
  const std::int64_t q = lower_->level();
  if (upper_->level() != n * q || !exactly_divides(n, upper_->level()) || !is_prime(n)) {
    throw Error(ErrorCode::NotExactDivisor, std::to_string(n) + " and level " + std::to_string(upper_->level()));
  }
  if (upper_->p() != lower_->p()) throw Error(ErrorCode::IncompatiblePrimes, "bases use different primes");
  if (lower_->nterms() < upper_->nterms()) throw Error(ErrorCode::BadIndex, "level q basis is too short");
  const std::int64_t p = upper_->p();
  if (n % p == 0) throw Error(ErrorCode::PrimeDividesLevel, "W_N needs N invertible mod p");

  const std::size_t nterms = upper_->nterms();
  const std::size_t gu = upper_->dimension();
  const std::size_t gl = lower_->dimension();
  if (gu < 2 * gl) throw Error(ErrorCode::Internal, "old space larger than the whole space");

  const PadicMatrix u_padic = upper_->transport_padic(n);
  const PadicMatrix id = PadicMatrix::identity(gu, u_padic.p(), u_padic.precision());
  const PadicMatrix kernel_raw = left_kernel(u_padic * u_padic - id, gu - 2 * gl);
  const PadicMatrix kernel = kernel_raw.rows() == 0 ? kernel_raw : saturate(kernel_raw).basis;

  std::vector<PadicMatrix> h_coords, vh_coords;
  int prec = std::min(u_padic.precision(), kernel.rows() == 0 ? u_padic.precision() : kernel.precision());
  for (std::size_t i = 0; i < gl; ++i) {
    h_coords.push_back(upper_->coordinates_padic(padic_row(lower_->saturated(), i, nterms, 1)));
    vh_coords.push_back(upper_->coordinates_padic(padic_row(lower_->saturated(), i, nterms, n)));
    prec = std::min({prec, h_coords.back().precision(), vh_coords.back().precision()});
  }
  const PadicMatrix new_image = kernel.rows() == 0 ? kernel : kernel * u_padic;
  if (kernel.rows() != 0) prec = std::min(prec, new_image.precision());

  const auto up = static_cast<std::uint64_t>(p);
  PadicMatrix basis_rows(gu, gu, up, prec), images(gu, gu, up, prec);
  const std::uint64_t n_mod = static_cast<std::uint64_t>(n) % images.modulus();
  const std::uint64_t n_inv = images.inverse(n_mod);
  for (std::size_t i = 0; i < gl; ++i) {
    copy_row(basis_rows, i, h_coords[i], 0);
    copy_row(basis_rows, gl + i, vh_coords[i], 0);
    for (std::size_t j = 0; j < gu; ++j) {
      images.set_raw(i, j, images.mul(n_mod, vh_coords[i](0, j)));
      images.set_raw(gl + i, j, images.mul(n_inv, h_coords[i](0, j)));
    }
  }
  for (std::size_t k = 0; k < kernel.rows(); ++k) {
    copy_row(basis_rows, 2 * gl + k, kernel, k);
    for (std::size_t j = 0; j < gu; ++j) images.set_raw(2 * gl + k, j, images.neg(new_image(k, j) % images.modulus()));
  }
  const PadicMatrix w_padic = solve(basis_rows, images);
  if (!(w_padic * w_padic == PadicMatrix::identity(gu, up, w_padic.precision()))) {
    throw Error(ErrorCode::Internal, "assembled W_" + std::to_string(n) + " is not an involution");
  }
  w_ = upper_->saturated_to_echelon(w_padic.reduced(1));
  u_ = upper_->saturated_to_echelon(u_padic.reduced(1));

  // Fix the operator order on E: only the true trace sends it to (N + 1) E.
  const TruncatedSeries e = eisenstein_series_level_q(q, p, nterms);
  const EmbeddedForm e_upper = embed(e, upper_);
  const std::vector<std::uint64_t> expected = [&] {
    auto c = lower_->coordinates(e);
    for (auto& x : c) x = x * static_cast<std::uint64_t>((n + 1) % p) % up;
    return c;
  }();
  std::vector<TraceOrder> good;
  for (TraceOrder order : {TraceOrder::WThenU, TraceOrder::UThenW}) {
    try {
      if (apply(e_upper, order).coords == expected) good.push_back(order);
    } catch (const Error& err) {
      if (err.code() != ErrorCode::TraceNotOldform) throw;
    }
  }
  if (good.empty()) {
    throw Error(ErrorCode::TraceNotOldform, "neither operator order traces E(" + std::to_string(q) + ") to " +
                                                std::to_string(n + 1) + " E at level " +
                                                std::to_string(upper_->level()) + " mod " + std::to_string(p));
  }
  order_ = good.front();
}

PadicMatrix TraceOperator::matrix(TraceOrder order) const {
  PadicMatrix m = order == TraceOrder::WThenU ? w_ * u_ : u_ * w_;
  for (std::size_t i = 0; i < m.rows(); ++i) m.set_raw(i, i, m.add(m(i, i), 1));
  return m;
}

EmbeddedForm TraceOperator::apply(const EmbeddedForm& form) const { return apply(form, order_); }

EmbeddedForm TraceOperator::apply(const EmbeddedForm& form, TraceOrder order) const {
  if (form.basis.get() != upper_.get() && form.level() != upper_->level()) {
    throw Error(ErrorCode::BadIndex, "form is not at level " + std::to_string(upper_->level()));
  }
  const auto image = row_times(form.coords, matrix(order));
  const TruncatedSeries series = upper_->combination(image);
  try {
    return embed(series, lower_);
  } catch (const Error& err) {
    if (err.code() != ErrorCode::NotInSpan) throw;
    throw Error(ErrorCode::TraceNotOldform, std::string("trace (") + order_name(order) + ") at level " +
                                                std::to_string(upper_->level()) + " leaves the level " +
                                                std::to_string(lower_->level()) + " span: " + err.what());
  }
}

TruncatedSeries trace_down(const EmbeddedForm& form, std::int64_t n) {
  const std::int64_t level = form.level();
  if (!exactly_divides(n, level)) {
    throw Error(ErrorCode::NotExactDivisor, std::to_string(n) + " in level " + std::to_string(level));
  }
  auto lower = LevelCache::global().basis(level / n, form.basis->p(), form.basis->nterms());
  const TraceOperator trace(form.basis, lower, n);
  return trace.apply(form).series();
}

std::vector<std::int64_t> default_aux_primes(const std::vector<std::int64_t>& excluded) {
  std::vector<std::int64_t> out;
  for (std::int64_t l : primes_up_to(50)) {
    if (std::find(excluded.begin(), excluded.end(), l) == excluded.end()) out.push_back(l);
  }
  return out;
}

EisensteinProjector eisenstein_projector(const QExpBasis& basis, const std::vector<std::int64_t>& aux) {
  const std::int64_t q = basis.level();
  const auto up = static_cast<std::uint64_t>(basis.p());
  const std::size_t g = basis.dimension();
  EisensteinProjector out;
  out.q = q;
  out.p = basis.p();
  out.e = PadicMatrix::identity(g, up, 1);
  out.rank = g;
  if (out.rank == 1) return out;
  for (std::int64_t l : aux) {
    if (l == q || l == basis.p()) continue;
    const PadicMatrix t = basis.transport(l);
    Poly chi = charpoly(t);
    const Poly root = {(up - static_cast<std::uint64_t>(l + 1) % up) % up, 1};  // x - (l + 1)
    Poly power = {1};
    while (true) {
      auto [quot, rem] = poly_divmod(chi, root, up);
      if (!rem.empty()) break;
      chi = std::move(quot);
      power = poly_mul(power, root, up);
    }
    out.aux.push_back(l);
    if (power.size() == 1) {
      throw Error(ErrorCode::EisensteinRankNotOne, std::to_string(l + 1) + " is not an eigenvalue of T_" +
                                                       std::to_string(l) + " at level " + std::to_string(q) +
                                                       " mod " + std::to_string(basis.p()));
    }
    // e = b(T) h(T) with b h = 1 mod (x - l - 1)^m is the identity on the
    // generalized eigenspace and zero on the kernel of h(T).
    const Poly b = poly_inverse_mod(chi, power, up);
    const PadicMatrix e = poly_eval(poly_mul(b, chi, up), t);
    out.e = out.e * e;
    out.rank = rank(out.e);
    if (out.rank == 1) return out;
    if (out.rank == 0) break;
  }
  throw Error(ErrorCode::EisensteinRankNotOne, "Eisenstein component at level " + std::to_string(q) + " mod " +
                                                   std::to_string(basis.p()) + " has rank " +
                                                   std::to_string(out.rank) + " after T_l for l <= 50");
}

EtaComputation compute_eta(std::int64_t disc, std::int64_t p, std::int64_t q, const EtaOptions& options) {
  const std::int64_t n = weight_one_level(disc);
  if (p < 5 || !is_prime(p)) throw Error(ErrorCode::InvalidPrime, std::to_string(p) + " is not a prime >= 5");
  if (!is_prime(q) || q == n) throw Error(ErrorCode::InvalidPrime, std::to_string(q) + " is not an admissible q");
  if ((q - 1) % p != 0) {
    throw Error(ErrorCode::IncompatiblePrimes, std::to_string(p) + " does not divide " + std::to_string(q) + " - 1");
  }
  LevelCache& cache = options.cache ? *options.cache : LevelCache::global();
  const std::size_t nterms = pipeline_nterms(n * q);
  auto upper = cache.basis(n * q, p, nterms);
  auto lower = cache.basis(q, p, nterms);
  const TraceOperator trace(upper, lower, n);

  const TruncatedSeries g = weight_one_form(disc, nterms).reduce(p);
  const TruncatedSeries big_g = (g * v_operator(g, q)).truncate(nterms);

  EtaComputation out;
  out.disc = disc;
  out.p = p;
  out.q = q;
  out.order = trace.order();
  out.g_upper = embed(big_g, upper);
  out.traced = trace.apply(out.g_upper);
  out.eisenstein = embed(eisenstein_series_level_q(q, p, nterms), lower);
  out.projector = eisenstein_projector(*lower, options.aux ? *options.aux : default_aux_primes({p, q, n}));
  out.projected = EmbeddedForm{lower, row_times(out.traced.coords, out.projector.e)};
  out.eta = static_cast<std::uint64_t>(out.projected.series()[1]);

  auto expected = out.eisenstein.coords;
  for (auto& x : expected) x = x * out.eta % static_cast<std::uint64_t>(p);
  if (out.projected.coords != expected) {
    throw Error(ErrorCode::Internal, "Eisenstein component at level " + std::to_string(q) + " mod " +
                                         std::to_string(p) + " is not a multiple of E");
  }
  return out;
}

std::uint64_t eta_invariant(std::int64_t disc, std::int64_t p, std::int64_t q) { return compute_eta(disc, p, q).eta; }

}  // namespace dhecke
