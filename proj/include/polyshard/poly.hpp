#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "field.hpp"

namespace polyshard {

/// Coefficients in ascending degree order. An empty vector is the zero polynomial.
using Poly = std::vector<Fe>;

template <class F>
Fe eval_poly(const F& f, const Poly& p, Fe x) {
  Fe acc = f.zero();
  for (std::size_t i = p.size(); i-- > 0;) acc = f.add(f.mul(acc, x), p[i]);
  return acc;
}

namespace detail {

template <class F>
void require_distinct(const F& f, const std::vector<Fe>& xs) {
  (void)f;
  for (std::size_t i = 0; i < xs.size(); ++i)
    for (std::size_t j = i + 1; j < xs.size(); ++j)
      if (xs[i] == xs[j]) throw std::invalid_argument("interpolation points must be distinct");
}

} // namespace detail

/// Weights l_j = prod_{i!=j} (x - x_i) / (x_j - x_i); dot with values at the
/// x_i evaluates the unique interpolant of degree < n at x.
template <class F>
std::vector<Fe> lagrange_coeffs(const F& f, const std::vector<Fe>& xs, Fe x) {
  if (xs.empty()) throw std::invalid_argument("lagrange_coeffs: no interpolation points");
  detail::require_distinct(f, xs);
  std::vector<Fe> out(xs.size());
  for (std::size_t j = 0; j < xs.size(); ++j) {
    Fe num = f.one(), den = f.one();
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (i == j) continue;
      num = f.mul(num, f.sub(x, xs[i]));
      den = f.mul(den, f.sub(xs[j], xs[i]));
    }
    out[j] = f.mul(num, f.inv(den));
  }
  return out;
}

/// Shard points omega_k = k (k = 1..K) and node points alpha_i = K+i (i = 1..N),
/// as canonical field elements. Disjoint by construction.
struct Grid {
  std::size_t k = 0;
  std::size_t n = 0;
  std::vector<Fe> omegas;
  std::vector<Fe> alphas;
};

template <class F>
Grid make_grid(const F& f, std::size_t K, std::size_t N) {
  if (K == 0 || N == 0) throw std::invalid_argument("make_grid: K and N must be positive");
  FieldSpec s = f.spec();
  std::uint64_t capacity = s.kind == FieldKind::Prime ? s.p : (1ULL << s.m);
  if (K + N > capacity - 1)
    throw std::invalid_argument("make_grid: field too small for K + N distinct nonzero points");
  Grid g;
  g.k = K;
  g.n = N;
  for (std::size_t i = 1; i <= K; ++i) g.omegas.push_back(f.from_u64(i));
  for (std::size_t i = 1; i <= N; ++i) g.alphas.push_back(f.from_u64(K + i));
  return g;
}

/// Component-wise dot of a coefficient row with K equal-length vectors.
/// Per element: K multiplications, K-1 additions.
template <class F>
std::vector<Fe> encode_with_row(const F& f, const std::vector<Fe>& row,
                                const std::vector<std::vector<Fe>>& blocks) {
  if (row.size() != blocks.size())
    throw std::invalid_argument("encode_with_row: row length does not match block count");
  if (blocks.empty()) throw std::invalid_argument("encode_with_row: no blocks");
  std::size_t len = blocks[0].size();
  for (const auto& b : blocks)
    if (b.size() != len) throw std::invalid_argument("encode_with_row: ragged block lengths");
  std::vector<Fe> out(len);
  for (std::size_t c = 0; c < len; ++c) out[c] = f.mul(row[0], blocks[0][c]);
  for (std::size_t k = 1; k < blocks.size(); ++k)
    for (std::size_t c = 0; c < len; ++c)
      out[c] = f.add(out[c], f.mul(row[k], blocks[k][c]));
  return out;
}

/// Coded copy held by node i (0-based): the degree-(K-1) interpolant of the K
/// shard vectors, evaluated at alpha_i.
template <class F>
std::vector<Fe> encode_at(const F& f, const std::vector<std::vector<Fe>>& blocks, const Grid& g,
                          std::size_t i) {
  if (i >= g.n) throw std::invalid_argument("encode_at: node index out of range");
  if (blocks.size() != g.k)
    throw std::invalid_argument("encode_at: block count does not match grid");
  return encode_with_row(f, lagrange_coeffs(f, g.omegas, g.alphas[i]), blocks);
}

/// Unique polynomial of degree < n through the given points; returns exactly
/// n coefficients (high ones zero when the data is lower degree).
template <class F>
Poly interpolate(const F& f, const std::vector<Fe>& xs, const std::vector<Fe>& ys) {
  if (xs.size() != ys.size()) throw std::invalid_argument("interpolate: point count mismatch");
  if (xs.empty()) throw std::invalid_argument("interpolate: no points");
  detail::require_distinct(f, xs);
  std::size_t n = xs.size();

  // master = prod (z - x_i), built up one factor at a time
  Poly master(n + 1, f.zero());
  master[0] = f.one();
  std::size_t deg = 0;
  for (std::size_t i = 0; i < n; ++i) {
    Fe nx = f.neg(xs[i]);
    for (std::size_t j = deg + 1; j > 0; --j)
      master[j] = f.add(f.mul(master[j], nx), master[j - 1]);
    master[0] = f.mul(master[0], nx);
    ++deg;
  }

  Poly result(n, f.zero());
  Poly q(n); // master / (z - x_i), degree n-1
  for (std::size_t i = 0; i < n; ++i) {
    // synthetic division by (z - x_i): master is monic of degree n
    Fe carry = master[n];
    for (std::size_t j = n; j-- > 0;) {
      q[j] = carry;
      carry = f.add(master[j], f.mul(carry, xs[i]));
    }
    // carry is now master(x_i) = 0; scale q by y_i / q(x_i)
    Fe qi = eval_poly(f, q, xs[i]);
    Fe scale = f.mul(ys[i], f.inv(qi));
    for (std::size_t j = 0; j < n; ++j) result[j] = f.add(result[j], f.mul(scale, q[j]));
  }
  return result;
}

/// Decoded message polynomial plus the evaluation indices that disagreed with it.
struct DecodeOutcome {
  Poly poly; // padded to the requested dimension
  std::vector<std::size_t> error_positions;
};

namespace detail {

template <class F>
std::pair<Poly, Poly> poly_divmod(const F& f, Poly num, const Poly& den) {
  std::size_t dd = den.size();
  while (dd > 0 && den[dd - 1] == f.zero()) --dd;
  if (dd == 0) throw std::invalid_argument("poly_divmod: division by zero polynomial");
  Fe lead_inv = f.inv(den[dd - 1]);
  std::size_t dn = num.size();
  while (dn > 0 && num[dn - 1] == f.zero()) --dn;
  num.resize(dn);
  if (dn < dd) return {Poly{}, num};
  Poly quot(dn - dd + 1, f.zero());
  for (std::size_t k = dn - dd + 1; k-- > 0;) {
    Fe c = f.mul(num[k + dd - 1], lead_inv);
    quot[k] = c;
    for (std::size_t j = 0; j < dd; ++j) num[k + j] = f.sub(num[k + j], f.mul(c, den[j]));
  }
  while (!num.empty() && num.back() == f.zero()) num.pop_back();
  return {quot, num};
}

/// Row-echelon solve of an overdetermined system; free variables are set to
/// zero. Returns false when the system is inconsistent.
template <class F>
bool solve_linear(const F& f, std::vector<std::vector<Fe>>& m, std::size_t unknowns,
                  std::vector<Fe>& solution) {
  std::size_t rows = m.size();
  std::vector<std::size_t> pivot_col;
  std::size_t rank = 0;
  for (std::size_t col = 0; col < unknowns && rank < rows; ++col) {
    std::size_t pr = rank;
    while (pr < rows && m[pr][col] == f.zero()) ++pr;
    if (pr == rows) continue;
    std::swap(m[rank], m[pr]);
    Fe piv_inv = f.inv(m[rank][col]);
    for (std::size_t j = col; j <= unknowns; ++j) m[rank][j] = f.mul(m[rank][j], piv_inv);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      Fe factor = m[r][col];
      if (factor == f.zero()) continue;
      for (std::size_t j = col; j <= unknowns; ++j)
        m[r][j] = f.sub(m[r][j], f.mul(factor, m[rank][j]));
    }
    pivot_col.push_back(col);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (m[r][unknowns] != f.zero()) return false;
  solution.assign(unknowns, f.zero());
  for (std::size_t r = rank; r-- > 0;) {
    std::size_t col = pivot_col[r];
    Fe val = m[r][unknowns];
    for (std::size_t j = col + 1; j < unknowns; ++j)
      if (solution[j] != f.zero()) val = f.sub(val, f.mul(m[r][j], solution[j]));
    solution[col] = val;
  }
  return true;
}

} // namespace detail

/// Berlekamp-Welch decoding of evaluations ys at points xs against message
/// dimension dim. Corrects up to floor((N - dim)/2) errors, or the explicit
/// max_errors budget if given. Returns nullopt if no polynomial of degree
/// < dim lies within the budget; there is no silent acceptance path.
template <class F>
std::optional<DecodeOutcome> rs_decode(const F& f, const std::vector<Fe>& xs,
                                       const std::vector<Fe>& ys, std::size_t dim,
                                       std::optional<std::size_t> max_errors = {}) {
  std::size_t n = xs.size();
  if (ys.size() != n) throw std::invalid_argument("rs_decode: evaluation count mismatch");
  if (dim == 0 || dim > n)
    throw std::invalid_argument("rs_decode: dimension must be in 1..N");
  detail::require_distinct(f, xs);
  std::size_t e = max_errors.value_or((n - dim) / 2);
  if (dim + 2 * e > n)
    throw std::invalid_argument("rs_decode: error budget needs dim + 2e <= N points");

  Poly p;
  if (e == 0) {
    std::vector<Fe> hx(xs.begin(), xs.begin() + dim);
    std::vector<Fe> hy(ys.begin(), ys.begin() + dim);
    p = interpolate(f, hx, hy);
  } else {
    // Q(x_i) = y_i * E(x_i) with E monic of degree e, deg Q < dim + e.
    // Unknowns: dim + e coefficients of Q, then e low coefficients of E.
    std::size_t unknowns = dim + 2 * e;
    std::vector<std::vector<Fe>> m(n, std::vector<Fe>(unknowns + 1, f.zero()));
    for (std::size_t i = 0; i < n; ++i) {
      Fe pw = f.one();
      for (std::size_t j = 0; j < dim + e; ++j) {
        m[i][j] = pw;
        pw = f.mul(pw, xs[i]);
      }
      pw = f.one();
      for (std::size_t j = 0; j < e; ++j) {
        m[i][dim + e + j] = f.neg(f.mul(ys[i], pw));
        pw = f.mul(pw, xs[i]);
      }
      m[i][unknowns] = f.mul(ys[i], pw); // y_i * x_i^e
    }
    std::vector<Fe> sol;
    if (!detail::solve_linear(f, m, unknowns, sol)) return std::nullopt;
    Poly q(sol.begin(), sol.begin() + dim + e);
    Poly locator(sol.begin() + dim + e, sol.end());
    locator.push_back(f.one());
    auto [quot, rem] = detail::poly_divmod(f, q, locator);
    if (!rem.empty()) return std::nullopt;
    if (quot.size() > dim) return std::nullopt;
    p = std::move(quot);
  }

  p.resize(dim, f.zero());
  DecodeOutcome out;
  out.poly = std::move(p);
  for (std::size_t i = 0; i < n; ++i)
    if (eval_poly(f, out.poly, xs[i]) != ys[i]) out.error_positions.push_back(i);
  if (out.error_positions.size() > e) return std::nullopt;
#ifdef POLYSHARD_FAULT_INJECT_DECODER
  // negative-control build: hand back a silently wrong polynomial so the
  // release checks prove they would catch a decoder regression
  out.poly[0] = f.add(out.poly[0], f.one());
#endif
  return out;
}

} // namespace polyshard
