#include "dhecke/modsym.hpp"

#include <algorithm>
#include <map>
#include <mutex>
#include <numeric>
#include <string>
#include <tuple>

#include "dhecke/error.hpp"
#include "dhecke/ffarith.hpp"

namespace dhecke {

void axpy(QVec& out, const mpq_class& scale, const QVec& v) {
  if (scale == 0 || v.empty()) return;
  QVec merged;
  merged.reserve(out.size() + v.size());
  auto it = out.begin();
  auto jt = v.begin();
  while (it != out.end() || jt != v.end()) {
    if (jt == v.end() || (it != out.end() && it->index < jt->index)) {
      merged.push_back(std::move(*it++));
    } else if (it == out.end() || jt->index < it->index) {
      merged.push_back({jt->index, scale * jt->value});
      ++jt;
    } else {
      mpq_class sum = it->value + scale * jt->value;
      if (sum != 0) merged.push_back({it->index, std::move(sum)});
      ++it;
      ++jt;
    }
  }
  out = std::move(merged);
}

mpq_class coefficient(const QVec& v, std::int32_t index) {
  auto it = std::lower_bound(v.begin(), v.end(), index,
                             [](const QTerm& t, std::int32_t i) { return t.index < i; });
  if (it != v.end() && it->index == index) return it->value;
  return 0;
}

namespace {

std::vector<Heilbronn> generate_heilbronn_merel(std::int64_t n) {
  std::vector<Heilbronn> out;
  const auto N = static_cast<std::int32_t>(n);
  for (std::int32_t a = 1; a <= N; ++a) {
    const std::int32_t q = N / a;
    if (q * a == N) {
      for (std::int32_t b = 0; b < a; ++b) out.push_back({a, b, 0, q});
      for (std::int32_t c = 1; c < q; ++c) out.push_back({a, 0, c, q});
    }
    for (std::int32_t d = q + 1; d <= N; ++d) {
      const std::int64_t bc = static_cast<std::int64_t>(a) * d - N;
      // b = bc / c < a forces c > bc / a; c < d.
      for (std::int64_t c = bc / a + 1; c < d; ++c) {
        if (bc % c == 0) out.push_back({a, static_cast<std::int32_t>(bc / c), static_cast<std::int32_t>(c), d});
      }
    }
  }
  return out;
}

std::mutex& heilbronn_mutex() {
  static std::mutex m;
  return m;
}

std::map<std::int64_t, std::unique_ptr<const std::vector<Heilbronn>>>& heilbronn_store() {
  static std::map<std::int64_t, std::unique_ptr<const std::vector<Heilbronn>>> store;
  return store;
}

Cusp make_cusp(std::int64_t u, std::int64_t v) {
  if (u == 0 && v == 0) throw Error(ErrorCode::Internal, "0/0 is not a cusp");
  const std::int64_t g = std::gcd(u, v);
  u /= g;
  v /= g;
  if (v < 0 || (v == 0 && u < 0)) {
    u = -u;
    v = -v;
  }
  if (v == 0) u = 1;
  return {u, v};
}

std::int64_t largest_prime_factor(const mpz_class& n) {
  if (!n.fits_slong_p()) return 0;  // treated as unknown and large
  std::int64_t best = 1;
  for (std::int64_t f : prime_factors(n.get_si())) best = std::max(best, f);
  return best;
}

}  // namespace

const std::vector<Heilbronn>& heilbronn_merel(std::int64_t n) {
  if (n < 1) throw Error(ErrorCode::BadIndex, "Heilbronn matrices need n >= 1, got " + std::to_string(n));
  {
    std::lock_guard lock(heilbronn_mutex());
    auto it = heilbronn_store().find(n);
    if (it != heilbronn_store().end()) return *it->second;
  }
  auto fresh = std::make_unique<const std::vector<Heilbronn>>(generate_heilbronn_merel(n));
  std::lock_guard lock(heilbronn_mutex());
  auto [it, inserted] = heilbronn_store().emplace(n, std::move(fresh));
  return *it->second;
}

SL2Lift lift_to_sl2z(std::int64_t c, std::int64_t d, std::int64_t level) {
  if (level == 1) return {1, 0, 0, 1};
  c = mod(c, level);
  d = mod(d, level);
  if (std::gcd(std::gcd(c, d), level) != 1) {
    throw Error(ErrorCode::Internal, "(" + std::to_string(c) + " : " + std::to_string(d) + ") is not in P1");
  }
  if (c == 0) c = level;
  while (std::gcd(c, d) != 1) d += level;
  std::int64_t s = 0, t = 0;
  xgcd(d, c, s, t);
  return {s, -t, c, d};
}

bool cusps_equivalent(const Cusp& x, const Cusp& y, std::int64_t level) {
  std::int64_t s1 = 0, s2 = 0, t = 0;
  xgcd(x.u, x.v, s1, t);
  xgcd(y.u, y.v, s2, t);
  const std::int64_t g = std::gcd(x.v * y.v, level);
  return mod(s1 * y.v - s2 * x.v, g) == 0;
}

bool exactly_divides(std::int64_t n, std::int64_t level) {
  return n >= 1 && level % n == 0 && std::gcd(n, level / n) == 1;
}

ModularSymbolSpace::ModularSymbolSpace(std::int64_t level) : level_(level), p1_(level) {
  build_quotient();
  build_boundary();
}

void ModularSymbolSpace::build_quotient() {
  const std::size_t n = p1_.size();
  const auto& el = p1_.elements();
  auto idx = [&](std::int64_t c, std::int64_t d) { return *p1_.index(c, d); };

  // Two-term relations x + x S = 0, S(c : d) = (d : -c).
  std::vector<int> sign(n, 0);
  std::vector<std::size_t> rep(n, 0);
  std::vector<char> seen(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    const std::size_t j = idx(el[i].d, -el[i].c);
    seen[i] = seen[j] = 1;
    rep[i] = rep[j] = i;
    if (j == i) continue;  // 2x = 0
    sign[i] = 1;
    sign[j] = -1;
  }
  std::vector<std::int32_t> var_of(n, -1);
  std::vector<std::size_t> var_symbol;
  for (std::size_t i = 0; i < n; ++i) {
    if (sign[i] == 1 && rep[i] == i) {
      var_of[i] = static_cast<std::int32_t>(var_symbol.size());
      var_symbol.push_back(i);
    }
  }
  const std::size_t nv = var_symbol.size();

  // Three-term relations x + x T + x T^2 = 0, T(c : d) = (d : -c - d).
  std::vector<std::vector<std::pair<std::int32_t, int>>> relations;
  std::fill(seen.begin(), seen.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (seen[i]) continue;
    const std::size_t j = idx(el[i].d, -el[i].c - el[i].d);
    const std::size_t k = idx(el[j].d, -el[j].c - el[j].d);
    seen[i] = seen[j] = seen[k] = 1;
    std::map<std::int32_t, int> rel;
    for (std::size_t x : {i, j, k}) {
      if (sign[x] != 0) rel[var_of[rep[x]]] += sign[x];
    }
    std::vector<std::pair<std::int32_t, int>> terms;
    for (auto [v, c] : rel) {
      if (c != 0) terms.emplace_back(v, c);
    }
    if (!terms.empty()) relations.push_back(std::move(terms));
  }

  // Incremental reduced echelon form: every pivot row is kept in terms of
  // the current non-pivot variables, with back-substitution on each new pivot.
  std::vector<QVec> row(nv);
  std::vector<char> is_pivot(nv, 0);
  std::vector<std::vector<std::int32_t>> occurs(nv);
  std::vector<mpq_class> acc(nv);
  std::vector<std::int32_t> touched;
  std::vector<char> is_touched(nv, 0);

  for (const auto& rel : relations) {
    touched.clear();
    auto add = [&](std::int32_t v, const mpq_class& c) {
      if (!is_touched[static_cast<std::size_t>(v)]) {
        is_touched[static_cast<std::size_t>(v)] = 1;
        touched.push_back(v);
        acc[static_cast<std::size_t>(v)] = 0;
      }
      acc[static_cast<std::size_t>(v)] += c;
    };
    for (auto [v, c] : rel) {
      if (is_pivot[static_cast<std::size_t>(v)]) {
        for (const auto& t : row[static_cast<std::size_t>(v)]) add(t.index, c * t.value);
      } else {
        add(v, c);
      }
    }
    std::sort(touched.begin(), touched.end());
    QVec reduced;
    for (std::int32_t v : touched) {
      is_touched[static_cast<std::size_t>(v)] = 0;
      if (acc[static_cast<std::size_t>(v)] != 0) reduced.push_back({v, acc[static_cast<std::size_t>(v)]});
    }
    if (reduced.empty()) continue;

    // Prefer unit pivots so that denominators stay 2,3-smooth, then the
    // variable with the fewest back-substitutions.
    auto score = [&](const QTerm& t) {
      const bool unit = abs(t.value) == 1;
      return std::make_tuple(unit ? 0 : 1, abs(t.value), occurs[static_cast<std::size_t>(t.index)].size(), t.index);
    };
    auto best = std::min_element(reduced.begin(), reduced.end(),
                                 [&](const QTerm& a, const QTerm& b) { return score(a) < score(b); });
    const std::int32_t piv = best->index;
    const mpq_class pc = best->value;
    QVec expr;
    for (const auto& t : reduced) {
      if (t.index != piv) expr.push_back({t.index, -t.value / pc});
    }

    for (std::int32_t w : occurs[static_cast<std::size_t>(piv)]) {
      QVec& r = row[static_cast<std::size_t>(w)];
      const mpq_class c = coefficient(r, piv);
      if (c == 0) continue;
      QVec without;
      without.reserve(r.size());
      for (auto& t : r) {
        if (t.index != piv) without.push_back(std::move(t));
      }
      r = std::move(without);
      axpy(r, c, expr);
      for (const auto& t : expr) occurs[static_cast<std::size_t>(t.index)].push_back(w);
    }
    occurs[static_cast<std::size_t>(piv)].clear();
    for (const auto& t : expr) occurs[static_cast<std::size_t>(t.index)].push_back(piv);
    row[static_cast<std::size_t>(piv)] = std::move(expr);
    is_pivot[static_cast<std::size_t>(piv)] = 1;
  }

  std::vector<std::int32_t> free_index(nv, -1);
  for (std::size_t v = 0; v < nv; ++v) {
    if (!is_pivot[v]) {
      free_index[v] = static_cast<std::int32_t>(generators_.size());
      generators_.push_back(var_symbol[v]);
    }
  }

  symbol_map_.assign(n, {});
  for (std::size_t i = 0; i < n; ++i) {
    if (sign[i] == 0) continue;
    const auto v = static_cast<std::size_t>(var_of[rep[i]]);
    QVec& out = symbol_map_[i];
    if (!is_pivot[v]) {
      out.push_back({free_index[v], sign[i]});
      continue;
    }
    for (const auto& t : row[v]) {
      out.push_back({free_index[static_cast<std::size_t>(t.index)], sign[i] * t.value});
      worst_denominator_prime_ = std::max(worst_denominator_prime_, largest_prime_factor(t.value.get_den()));
    }
  }
}

std::size_t ModularSymbolSpace::cusp_class(const Cusp& x) const {
  for (std::size_t i = 0; i < cusps_.size(); ++i) {
    if (cusps_equivalent(cusps_[i], x, level_)) return i;
  }
  throw Error(ErrorCode::Internal, "unknown cusp " + std::to_string(x.u) + "/" + std::to_string(x.v));
}

void ModularSymbolSpace::build_boundary() {
  // Every cusp is g(infinity) = a/c for the lift g of some (c : d).
  for (const auto& e : p1_.elements()) {
    const SL2Lift g = lift_to_sl2z(e.c, e.d, level_);
    const Cusp x = make_cusp(g.a, g.c);
    bool known = false;
    for (const auto& y : cusps_) {
      if (cusps_equivalent(x, y, level_)) {
        known = true;
        break;
      }
    }
    if (!known) cusps_.push_back(x);
  }

  // Kernel of the boundary map, one sparse vector per dependent generator.
  struct Reduced {
    QVec image;
    QVec combo;
    std::int32_t pivot;
  };
  std::vector<Reduced> independent;
  for (std::size_t k = 0; k < generators_.size(); ++k) {
    QVec image = boundary({{static_cast<std::int32_t>(k), 1}});
    QVec combo{{static_cast<std::int32_t>(k), 1}};
    for (const auto& r : independent) {
      const mpq_class c = coefficient(image, r.pivot);
      if (c == 0) continue;
      const mpq_class f = -c / coefficient(r.image, r.pivot);
      axpy(image, f, r.image);
      axpy(combo, f, r.combo);
    }
    if (image.empty()) {
      cuspidal_basis_.push_back(std::move(combo));
      cuspidal_pivots_.push_back(k);
    } else {
      const std::int32_t pivot = image.front().index;
      independent.push_back({std::move(image), std::move(combo), pivot});
    }
  }
}

QVec ModularSymbolSpace::boundary(const QVec& v) const {
  std::vector<mpq_class> acc(cusps_.size());
  for (const auto& t : v) {
    const P1Element& e = p1_[generators_[static_cast<std::size_t>(t.index)]];
    const SL2Lift g = lift_to_sl2z(e.c, e.d, level_);
    // (c : d) = {b/d, a/c}, with boundary [a/c] - [b/d].
    acc[cusp_class(make_cusp(g.a, g.c))] += t.value;
    acc[cusp_class(make_cusp(g.b, g.d))] -= t.value;
  }
  QVec out;
  for (std::size_t i = 0; i < acc.size(); ++i) {
    if (acc[i] != 0) out.push_back({static_cast<std::int32_t>(i), acc[i]});
  }
  return out;
}

std::vector<mpq_class> ModularSymbolSpace::cuspidal_coordinates(const QVec& v) const {
  std::vector<mpq_class> out;
  out.reserve(cuspidal_pivots_.size());
  for (std::size_t k : cuspidal_pivots_) out.push_back(coefficient(v, static_cast<std::int32_t>(k)));
  return out;
}

QVec ModularSymbolSpace::manin_symbol(std::int64_t c, std::int64_t d) const {
  const auto i = p1_.index(c, d);
  if (!i) return {};
  return symbol_map_[*i];
}

QVec ModularSymbolSpace::zero_to(std::int64_t u, std::int64_t v) const {
  if (v == 0) return manin_symbol(0, 1);
  // Convergents p_j/q_j of u/v; {0, u/v} = sum_{j >= -1} ((-1)^{j-1} q_j : q_{j-1}).
  QVec out = manin_symbol(0, 1);
  std::int64_t p_prev = 1, q_prev = 0;  // j - 1 = -1
  std::int64_t p_prev2 = 0, q_prev2 = 1;
  std::int64_t num = u, den = v;
  int sign = -1;  // (-1)^{j-1} at j = 0
  while (den != 0) {
    std::int64_t a = num / den;
    if (num % den != 0 && ((num < 0) != (den < 0))) --a;
    const std::int64_t rest = num - a * den;
    num = den;
    den = rest;
    const std::int64_t pj = a * p_prev + p_prev2;
    const std::int64_t qj = a * q_prev + q_prev2;
    axpy(out, 1, manin_symbol(sign * qj, q_prev));
    p_prev2 = p_prev;
    q_prev2 = q_prev;
    p_prev = pj;
    q_prev = qj;
    sign = -sign;
  }
  return out;
}

QVec ModularSymbolSpace::modular_symbol(const Cusp& x, const Cusp& y) const {
  QVec out = zero_to(y.u, y.v);
  axpy(out, -1, zero_to(x.u, x.v));
  return out;
}

QVec ModularSymbolSpace::hecke(std::int64_t n, const QVec& v) const {
  const auto& hs = heilbronn_merel(n);
  std::vector<std::int64_t> counts(p1_.size(), 0);
  std::vector<std::size_t> hit;
  std::vector<mpq_class> acc(dimension());
  std::vector<char> acc_used(dimension(), 0);
  for (const auto& t : v) {
    const P1Element& e = p1_[generators_[static_cast<std::size_t>(t.index)]];
    hit.clear();
    for (const auto& h : hs) {
      const auto i = p1_.index(e.c * h.a + e.d * h.c, e.c * h.b + e.d * h.d);
      if (!i) continue;
      if (counts[*i]++ == 0) hit.push_back(*i);
    }
    for (std::size_t i : hit) {
      const mpq_class scale = t.value * counts[i];
      counts[i] = 0;
      for (const auto& s : symbol_map_[i]) {
        acc[static_cast<std::size_t>(s.index)] += scale * s.value;
        acc_used[static_cast<std::size_t>(s.index)] = 1;
      }
    }
  }
  QVec out;
  for (std::size_t k = 0; k < acc.size(); ++k) {
    if (acc_used[k] && acc[k] != 0) out.push_back({static_cast<std::int32_t>(k), acc[k]});
  }
  return out;
}

QVec ModularSymbolSpace::atkin_lehner(std::int64_t n, const QVec& v) const {
  if (!exactly_divides(n, level_)) {
    throw Error(ErrorCode::NotExactDivisor, std::to_string(n) + " does not exactly divide " + std::to_string(level_));
  }
  // W = [[n, beta], [M, n delta]] with n delta - (M/n) beta = 1.
  std::int64_t s = 0, t = 0;
  xgcd(n, level_ / n, s, t);
  const std::int64_t beta = -t, delta = s;
  auto act = [&](std::int64_t u, std::int64_t w) {
    return make_cusp(n * u + beta * w, level_ * u + n * delta * w);
  };
  QVec out;
  for (const auto& term : v) {
    const P1Element& e = p1_[generators_[static_cast<std::size_t>(term.index)]];
    const SL2Lift g = lift_to_sl2z(e.c, e.d, level_);
    axpy(out, term.value, modular_symbol(act(g.b, g.d), act(g.a, g.c)));
  }
  return out;
}

QVec ModularSymbolSpace::star(const QVec& v) const {
  QVec out;
  for (const auto& t : v) {
    const P1Element& e = p1_[generators_[static_cast<std::size_t>(t.index)]];
    axpy(out, -t.value, manin_symbol(-e.c, e.d));
  }
  return out;
}

template <class F>
QMatrix ModularSymbolSpace::cuspidal_matrix(F&& op) const {
  QMatrix out;
  out.reserve(cuspidal_basis_.size());
  for (const auto& b : cuspidal_basis_) out.push_back(cuspidal_coordinates(op(b)));
  return out;
}

QMatrix ModularSymbolSpace::hecke_matrix(std::int64_t n) const {
  if (n < 1) throw Error(ErrorCode::BadIndex, "T_n needs n >= 1");
  if (std::gcd(n, level_) != 1 && !(is_prime(n) && level_ % n == 0)) {
    throw Error(ErrorCode::BadIndex, "T_" + std::to_string(n) + " at level " + std::to_string(level_) +
                                         ": n must be coprime to the level or a prime divisor of it");
  }
  return cuspidal_matrix([&](const QVec& v) { return hecke(n, v); });
}

QMatrix ModularSymbolSpace::atkin_lehner_matrix(std::int64_t n) const {
  if (!exactly_divides(n, level_)) {
    throw Error(ErrorCode::NotExactDivisor, std::to_string(n) + " does not exactly divide " + std::to_string(level_));
  }
  return cuspidal_matrix([&](const QVec& v) { return atkin_lehner(n, v); });
}

QMatrix ModularSymbolSpace::star_matrix() const {
  return cuspidal_matrix([&](const QVec& v) { return star(v); });
}

std::vector<std::vector<mpz_class>> p_saturate(std::vector<std::vector<mpz_class>> rows, std::int64_t p) {
  if (rows.empty()) return rows;
  const std::size_t r = rows.size();
  const std::size_t c = rows.front().size();
  for (;;) {
    // Left kernel mod p of the row matrix, by elimination on the transpose
    // carried alongside an identity block.
    std::vector<std::vector<std::int64_t>> m(r, std::vector<std::int64_t>(c + r, 0));
    for (std::size_t i = 0; i < r; ++i) {
      for (std::size_t j = 0; j < c; ++j) {
        mpz_class x = rows[i][j] % p;
        if (x < 0) x += p;
        m[i][j] = x.get_si();
      }
      m[i][c + i] = 1;
    }
    std::size_t rank = 0;
    for (std::size_t col = 0; col < c && rank < r; ++col) {
      std::size_t piv = rank;
      while (piv < r && m[piv][col] == 0) ++piv;
      if (piv == r) continue;
      std::swap(m[piv], m[rank]);
      const std::int64_t inv = inv_mod(m[rank][col], p);
      for (auto& x : m[rank]) x = x * inv % p;
      for (std::size_t i = 0; i < r; ++i) {
        if (i == rank || m[i][col] == 0) continue;
        const std::int64_t f = m[i][col];
        for (std::size_t j = 0; j < c + r; ++j) m[i][j] = mod(m[i][j] - f * m[rank][j], p);
      }
      ++rank;
    }
    if (rank == r) return rows;
    // Row rank of m is a kernel relation: sum lambda_i rows_i = 0 mod p.
    const auto& lambda = m[rank];
    std::size_t target = r;
    for (std::size_t i = 0; i < r; ++i) {
      if (lambda[c + i] != 0) {
        target = i;
        break;
      }
    }
    const std::int64_t scale = inv_mod(lambda[c + target], p);
    std::vector<mpz_class> combo(c, 0);
    for (std::size_t i = 0; i < r; ++i) {
      const std::int64_t li = lambda[c + i] * scale % p;
      if (li == 0) continue;
      for (std::size_t j = 0; j < c; ++j) combo[j] += li * rows[i][j];
    }
    for (auto& x : combo) {
      if (x % p != 0) throw Error(ErrorCode::Internal, "saturation step left a non-divisible entry");
      x /= p;
    }
    rows[target] = std::move(combo);
  }
}

}  // namespace dhecke
