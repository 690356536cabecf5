#pragma once

// Scheme-level primitives shared by the verification schemes: capacity and
// security-budget formulas, Lagrange encoding rows, block encoding, coded
// decoding back to shard results, majority voting, and the layered coded
// evaluation loop for general circuits.
//
// Everything here is stateless; per-node storage and the epoch loop live in
// the simulation engine.

#include <polyshard/circuit.hpp>
#include <polyshard/field.hpp>
#include <polyshard/ledger.hpp>
#include <polyshard/poly.hpp>

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace polyshard {

enum class SchemeKind { FullReplication, UncodedSharding, PolyShard, IterativePolyShard };

inline const char* scheme_name(SchemeKind kind) {
  switch (kind) {
    case SchemeKind::FullReplication: return "full-replication";
    case SchemeKind::UncodedSharding: return "uncoded-sharding";
    case SchemeKind::PolyShard: return "polyshard";
    case SchemeKind::IterativePolyShard: return "iterative-polyshard";
  }
  return "unknown";
}

// Exact corruption rate. Kept as a raw fraction so capacity formulas stay in
// integer arithmetic; 2/10 and 1/5 give identical results.
struct Rational {
  std::uint64_t num = 0;
  std::uint64_t den = 1;
};

struct CapacityReport {
  std::size_t k_max;  // largest supportable shard count at the given rate
  std::size_t beta;   // tolerated corrupted nodes
  std::size_t gamma;  // storage efficiency factor
};

namespace detail {

inline __int128 floor_div(__int128 a, __int128 b) {
  // b > 0; rounds toward minus infinity
  __int128 q = a / b;
  if (a % b != 0 && a < 0) --q;
  return q;
}

inline void check_rate(const Rational& mu) {
  if (mu.den == 0) throw std::invalid_argument("corruption rate needs a nonzero denominator");
  if (static_cast<__int128>(mu.num) * 2 >= static_cast<__int128>(mu.den))
    throw std::invalid_argument("corruption rate must be below one half");
}

}  // namespace detail

inline CapacityReport capacity(SchemeKind kind, std::size_t n, std::size_t k,
                               const Rational& mu, std::size_t d) {
  if (n == 0 || k == 0) throw std::invalid_argument("capacity needs n >= 1 and k >= 1");
  if (d == 0) throw std::invalid_argument("capacity needs degree d >= 1");
  detail::check_rate(mu);

  const __int128 a = mu.num, b = mu.den;
  CapacityReport r{};
  switch (kind) {
    case SchemeKind::FullReplication:
      r.k_max = n;
      r.beta = n / 2;
      r.gamma = 1;
      break;
    case SchemeKind::UncodedSharding: {
      if (n % k != 0)
        throw std::invalid_argument("uncoded sharding needs the shard count to divide n");
      const std::size_t q = n / k;
      r.k_max = n;
      r.beta = (q - 1) / 2;
      r.gamma = k;
      break;
    }
    case SchemeKind::PolyShard: {
      // floor(((1-2mu)n - 1)/d) + 1, clamped at zero
      const __int128 km =
          detail::floor_div((b - 2 * a) * static_cast<__int128>(n) - b, b * static_cast<__int128>(d)) + 1;
      r.k_max = km < 0 ? 0 : static_cast<std::size_t>(km);
      const std::size_t degree = (k - 1) * d;
      r.beta = degree + 1 > n ? 0 : (n - degree - 1) / 2;
      r.gamma = k;
      break;
    }
    case SchemeKind::IterativePolyShard: {
      // floor(((1-2mu)n + 1)/2); layer degree is 2 regardless of d
      const __int128 km =
          detail::floor_div((b - 2 * a) * static_cast<__int128>(n) + b, 2 * b);
      r.k_max = km < 0 ? 0 : static_cast<std::size_t>(km);
      const std::size_t dim = 2 * (k - 1) + 1;
      r.beta = dim > n ? 0 : (n - dim) / 2;
      r.gamma = k;
      break;
    }
  }
  return r;
}

// Strict-majority security budget. Differs from the reported capacity only
// for full replication at even n, where a split vote must still resolve.
inline std::size_t strict_beta(SchemeKind kind, std::size_t n, std::size_t k, std::size_t d) {
  if (kind == SchemeKind::FullReplication) {
    if (n == 0) throw std::invalid_argument("strict_beta needs n >= 1");
    return (n - 1) / 2;
  }
  return capacity(kind, n, k, Rational{0, 1}, d).beta;
}

inline std::size_t corrupt_count(const Rational& mu, std::size_t n) {
  detail::check_rate(mu);
  return static_cast<std::size_t>(static_cast<__int128>(mu.num) * n / mu.den);
}

inline std::size_t shard_of(std::size_t node, std::size_t per_shard) {
  if (per_shard == 0) throw std::invalid_argument("shard_of needs a nonempty shard");
  return node / per_shard;
}

// Row i encodes shard data into node i's coded copy: X~_i = sum_k row[k] X_k.
// Depends only on the grid, never on what is being verified.
template <FieldLike F>
std::vector<std::vector<Fe>> lagrange_rows(const F& f, const Grid& g) {
  std::vector<std::vector<Fe>> rows;
  rows.reserve(g.n);
  for (std::size_t i = 0; i < g.n; ++i) rows.push_back(lagrange_coeffs(f, g.omegas, g.alphas[i]));
  return rows;
}

// w[k][i] maps the first `dim` node evaluations straight to the value at
// omega_k; valid whenever the underlying polynomial has degree below dim.
template <FieldLike F>
std::vector<std::vector<Fe>> decode_weights(const F& f, const Grid& g, std::size_t dim) {
  if (dim == 0 || dim > g.n) throw std::invalid_argument("decode dimension must be in [1, n]");
  std::vector<Fe> xs(g.alphas.begin(), g.alphas.begin() + static_cast<std::ptrdiff_t>(dim));
  std::vector<std::vector<Fe>> w;
  w.reserve(g.k);
  for (std::size_t k = 0; k < g.k; ++k) w.push_back(lagrange_coeffs(f, xs, g.omegas[k]));
  return w;
}

template <FieldLike F>
Block encode_block(const F& f, const std::vector<Block>& blocks, const std::vector<Fe>& row) {
  if (blocks.empty()) throw std::invalid_argument("encode_block needs at least one block");
  if (row.size() != blocks.size())
    throw std::invalid_argument("encode_block needs one coefficient per block");
  const std::size_t m = blocks[0].send.size();
  for (const Block& b : blocks)
    if (b.send.size() != m || b.receive.size() != m)
      throw std::invalid_argument("encode_block needs blocks of equal account count");

  Block out;
  out.send.resize(m);
  out.receive.resize(m);
  for (std::size_t j = 0; j < m; ++j) {
    Fe s = f.mul(row[0], blocks[0].send[j]);
    Fe r = f.mul(row[0], blocks[0].receive[j]);
    for (std::size_t k = 1; k < blocks.size(); ++k) {
      s = f.add(s, f.mul(row[k], blocks[k].send[j]));
      r = f.add(r, f.mul(row[k], blocks[k].receive[j]));
    }
    out.send[j] = s;
    out.receive[j] = r;
  }
  return out;
}

struct VoteResult {
  std::vector<Fe> value;
  bool tie = false;
};

// Exact-equality plurality over full value vectors. A tied maximum carries
// no decision and the caller rejects the block.
inline VoteResult majority_vote(const std::vector<std::vector<Fe>>& candidates) {
  if (candidates.empty()) throw std::invalid_argument("majority_vote needs at least one vote");
  std::map<std::vector<Fe>, std::size_t> tally;
  for (const auto& c : candidates) ++tally[c];
  const std::map<std::vector<Fe>, std::size_t>::const_iterator best = std::max_element(
      tally.begin(), tally.end(),
      [](const auto& x, const auto& y) { return x.second < y.second; });
  VoteResult r{best->first, false};
  for (const auto& [value, count] : tally)
    if (count == best->second && value != best->first) {
      r.tie = true;
      break;
    }
  return r;
}

// What a node computes on a (possibly coded) proposal against its stored
// (possibly coded) chain. The balance kind is the degree-1 ledger check; the
// circuit kind applies a two-input circuit to each account's send/receive
// pair and ignores the chain.
struct VerifyFn {
  enum class Kind { Balance, Circuit };
  Kind kind = Kind::Balance;
  const ArithmeticCircuit* circuit = nullptr;
  AcceptRule rule = AcceptRule::NonNegative;

  std::size_t degree() const {
    if (kind == Kind::Balance) return 1;
    if (circuit == nullptr) throw std::invalid_argument("circuit verification needs a circuit");
    return circuit_degree(*circuit);
  }

  template <FieldLike F>
  std::vector<Fe> operator()(const F& f, const Block& proposal, const SubChain& chain) const {
    if (kind == Kind::Balance) return verify_balance(f, proposal, chain);
    if (circuit == nullptr) throw std::invalid_argument("circuit verification needs a circuit");
    if (circuit->inputs != 2)
      throw std::invalid_argument("circuit verification needs a two-input circuit");
    if (proposal.send.size() != proposal.receive.size())
      throw std::invalid_argument("proposal send and receive sizes must match");
    std::vector<Fe> h;
    for (std::size_t c = 0; c < proposal.send.size(); ++c) {
      std::vector<Fe> out = eval_circuit(f, *circuit, {proposal.send[c], proposal.receive[c]});
      h.insert(h.end(), out.begin(), out.end());
    }
    return h;
  }
};

// Recovers the K shard results from the N node messages. Each component is a
// noisy evaluation of one polynomial of degree < dim on the alphas; decode it
// and read off the omegas. With a zero error budget and a precomputed weight
// table the recovery is one matrix application over the first dim messages.
template <FieldLike F>
std::optional<std::vector<std::vector<Fe>>> coded_decode(
    const F& f, const Grid& g, const std::vector<std::vector<Fe>>& messages, std::size_t dim,
    std::size_t max_errors, const std::vector<std::vector<Fe>>* weights = nullptr) {
  if (messages.size() != g.n)
    throw std::invalid_argument("coded_decode needs one message per node");
  if (dim == 0 || dim > g.n) throw std::invalid_argument("decode dimension must be in [1, n]");
  const std::size_t comps = messages[0].size();
  for (const auto& m : messages)
    if (m.size() != comps) throw std::invalid_argument("node messages must have equal length");

  std::vector<std::vector<Fe>> out(g.k, std::vector<Fe>(comps));
  if (max_errors == 0 && weights != nullptr) {
    // dim muls and dim-1 adds per component, the cost model the throughput
    // accounting assumes
    for (std::size_t k = 0; k < g.k; ++k)
      for (std::size_t c = 0; c < comps; ++c) {
        Fe acc = f.mul((*weights)[k][0], messages[0][c]);
        for (std::size_t i = 1; i < dim; ++i)
          acc = f.add(acc, f.mul((*weights)[k][i], messages[i][c]));
        out[k][c] = acc;
      }
    return out;
  }

  std::vector<Fe> ys(g.n);
  for (std::size_t c = 0; c < comps; ++c) {
    for (std::size_t i = 0; i < g.n; ++i) ys[i] = messages[i][c];
    auto dec = rs_decode(f, g.alphas, ys, dim, max_errors);
    if (!dec.has_value()) return std::nullopt;
    for (std::size_t k = 0; k < g.k; ++k) out[k][c] = eval_poly(f, dec->poly, g.omegas[k]);
  }
  return out;
}

struct IterativeResult {
  std::vector<std::vector<Fe>> outputs;  // per shard; layer inputs reached so far on failure
  bool ok = false;
  std::size_t failed_layer = 0;  // 1-based first layer whose decode failed; 0 when ok
};

using TamperFn = std::function<void(std::size_t layer, std::vector<std::vector<Fe>>& messages)>;

// Runs a validated layered circuit on K shard inputs through N coded nodes.
// Per layer: every node re-encodes the current layer inputs with its row,
// evaluates the layer on the coded point, and the degree-2 images are decoded
// back to each shard's layer outputs, which feed the next layer. The tamper
// hook mutates the message matrix before decoding, standing in for corrupted
// nodes.
template <FieldLike F>
IterativeResult iterative_epoch(const F& f, const ArithmeticCircuit& c, const Grid& g,
                                const std::vector<std::vector<Fe>>& shard_inputs,
                                const std::vector<std::vector<Fe>>& rows, std::size_t max_errors,
                                const TamperFn& tamper = {}) {
  if (auto v = validate_circuit(c); v.has_value())
    throw std::invalid_argument("layered evaluation needs a circuit that passes validation: " +
                                v->detail);
  const std::size_t dim = 2 * (g.k - 1) + 1;
  if (dim > g.n)
    throw std::invalid_argument("layered decode dimension exceeds the node count");
  if (shard_inputs.size() != g.k)
    throw std::invalid_argument("layered evaluation needs one input vector per shard");
  for (const auto& x : shard_inputs)
    if (x.size() != c.inputs)
      throw std::invalid_argument("shard inputs must match the circuit arity");
  if (rows.size() != g.n)
    throw std::invalid_argument("layered evaluation needs one encoding row per node");

  std::vector<std::vector<Fe>> cur = shard_inputs;
  for (std::size_t layer = 1; layer <= c.layers.size(); ++layer) {
    const std::size_t arity = cur[0].size();
    std::vector<std::vector<Fe>> messages;
    messages.reserve(g.n);
    for (std::size_t i = 0; i < g.n; ++i) {
      std::vector<Fe> coded(arity, f.zero());
      for (std::size_t k = 0; k < g.k; ++k)
        for (std::size_t t = 0; t < arity; ++t)
          coded[t] = f.add(coded[t], f.mul(rows[i][k], cur[k][t]));
      messages.push_back(eval_layer(f, c, layer, coded));
    }
    if (tamper) tamper(layer, messages);
    auto decoded = coded_decode(f, g, messages, dim, max_errors);
    if (!decoded.has_value()) return {std::move(cur), false, layer};
    cur = std::move(*decoded);
  }
  return {std::move(cur), true, 0};
}

}  // namespace polyshard
