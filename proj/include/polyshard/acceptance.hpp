#pragma once

// Release checklist.  Ten self-contained checks cover the coding identity,
// decoder capacity, equivalence of coded and uncoded verification, the
// security and storage tables, the throughput laws, incremental appends,
// serving two checks from one coded chain, boolean lifting and layered
// verification.  Each check reports one pass/fail line; all tolerances are
// exact equality except the throughput band, which is pinned below.

#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <optional>
#include <ostream>
#include <random>
#include <string>
#include <vector>

#include "adversary.hpp"
#include "circuit.hpp"
#include "field.hpp"
#include "ledger.hpp"
#include "poly.hpp"
#include "schemes.hpp"
#include "sim.hpp"

namespace polyshard {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  std::string note;  // first failure, or empty
  double seconds = 0.0;
};

namespace acceptance {

inline const char* four_factor_text() {
  return
      "layer 1 add a1 x1 x2\n"
      "layer 1 add a2 x2 x3\n"
      "layer 1 add a3 x3 x4\n"
      "layer 1 add a4 x4 x5\n"
      "layer 1 mul m1 a1 a2\n"
      "layer 1 mul m2 a2 a3\n"
      "layer 1 mul m3 a3 a4\n"
      "layer 2 add b1 m1 m2\n"
      "layer 2 add b2 m2 m3\n"
      "layer 2 mul n1 b1 b2\n";
}

inline const char* pair_product_text() {
  return
      "layer 1 add a1 x1\n"
      "layer 1 add a2 x2\n"
      "layer 1 mul m1 a1 a2\n";
}

struct Check {
  bool ok = true;
  std::string note;
  void expect(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      note = what;
    }
  }
};

template <FieldLike F>
Block random_block(const F& f, std::mt19937_64& rng, std::size_t m) {
  Block b;
  for (std::size_t i = 0; i < m; ++i) {
    b.send.push_back(f.from_u64(rng()));
    b.receive.push_back(f.from_u64(rng()));
  }
  return b;
}

// 1: encode K shard vectors onto N nodes, interpolate the node values and
// read the shard points back; must reproduce the originals exactly.
inline Check lagrange_identity() {
  Check c;
  PrimeField f(PrimeField::kDefaultPrime);
  std::mt19937_64 rng(101);
  for (int trial = 0; trial < 1000 && c.ok; ++trial) {
    const std::size_t k = 1 + rng() % 8;
    const std::size_t n = k + rng() % 12;
    const std::size_t len = 1 + rng() % 4;
    Grid g = make_grid(f, k, n);
    std::vector<std::vector<Fe>> rows = lagrange_rows(f, g);
    std::vector<std::vector<Fe>> data(k, std::vector<Fe>(len));
    for (auto& v : data)
      for (Fe& x : v) x = f.from_u64(rng());
    std::vector<std::vector<Fe>> messages(n);
    for (std::size_t i = 0; i < n; ++i) messages[i] = encode_with_row(f, rows[i], data);
    auto back = coded_decode(f, g, messages, k, 0);
    c.expect(back.has_value() && *back == data,
             "round trip diverged at trial " + std::to_string(trial) + " (K=" +
                 std::to_string(k) + ", N=" + std::to_string(n) + ")");
  }
  return c;
}

// 2: across N in {7,15,31} and every decode dimension, random errors up to
// the capacity bound are always corrected with the exact error set; one past
// the bound, the decoder's answer is checked against a brute-force oracle and
// never agrees with the planted polynomial.
inline Check decode_capacity() {
  Check c;
  PrimeField f(PrimeField::kDefaultPrime);
  std::mt19937_64 rng(202);
  for (std::size_t n : {7u, 15u, 31u}) {
    std::vector<Fe> xs;
    for (std::size_t i = 1; i <= n; ++i) xs.push_back(f.from_u64(i));
    for (std::size_t dim = 2; dim + 2 <= n && c.ok; ++dim) {
      const std::size_t cap = (n - dim) / 2;
      for (int trial = 0; trial < 200 && c.ok; ++trial) {
        Poly p(dim);
        for (Fe& x : p) x = f.from_u64(rng());
        std::vector<Fe> ys(n);
        for (std::size_t i = 0; i < n; ++i) ys[i] = eval_poly(f, p, xs[i]);
        const std::size_t w = rng() % (cap + 1);
        std::vector<std::size_t> hit;
        while (hit.size() < w) {
          std::size_t pos = rng() % n;
          bool seen = false;
          for (std::size_t h : hit) seen |= h == pos;
          if (!seen) hit.push_back(pos);
        }
        std::sort(hit.begin(), hit.end());
        for (std::size_t pos : hit) {
          Fe v = ys[pos];
          while (v == ys[pos]) v = f.from_u64(rng());
          ys[pos] = v;
        }
        auto dec = rs_decode(f, xs, ys, dim, cap);
        c.expect(dec.has_value() && dec->poly == p && dec->error_positions == hit,
                 "in-capacity decode failed at N=" + std::to_string(n) +
                     " dim=" + std::to_string(dim) + " weight=" + std::to_string(w));
      }
    }
  }
  if (!c.ok) return c;

  // past capacity, small-field oracle: every degree-<3 polynomial over GF(11)
  // is enumerated to find the codewords within the claimed budget
  PrimeField f11(11);
  std::vector<Fe> xs;
  for (std::size_t i = 1; i <= 7; ++i) xs.push_back(f11.from_u64(i));
  const std::size_t dim = 3, cap = 2;
  for (int inst = 0; inst < 50 && c.ok; ++inst) {
    Poly planted(dim);
    for (Fe& x : planted) x = f11.from_u64(rng());
    std::vector<Fe> ys(7);
    for (std::size_t i = 0; i < 7; ++i) ys[i] = eval_poly(f11, planted, xs[i]);
    std::vector<std::size_t> hit;
    while (hit.size() < cap + 1) {
      std::size_t pos = rng() % 7;
      bool seen = false;
      for (std::size_t h : hit) seen |= h == pos;
      if (!seen) hit.push_back(pos);
    }
    for (std::size_t pos : hit) {
      Fe v = ys[pos];
      while (v == ys[pos]) v = f11.from_u64(rng());
      ys[pos] = v;
    }
    std::vector<Poly> nearby;
    Poly q(dim);
    for (std::uint64_t a = 0; a < 11; ++a)
      for (std::uint64_t b = 0; b < 11; ++b)
        for (std::uint64_t d2 = 0; d2 < 11; ++d2) {
          q[0] = f11.from_u64(a);
          q[1] = f11.from_u64(b);
          q[2] = f11.from_u64(d2);
          std::size_t dist = 0;
          for (std::size_t i = 0; i < 7; ++i)
            if (eval_poly(f11, q, xs[i]) != ys[i]) ++dist;
          if (dist <= cap) nearby.push_back(q);
        }
    auto dec = rs_decode(f11, xs, ys, dim, cap);
    if (dec.has_value()) {
      bool in_oracle = false;
      for (const Poly& cand : nearby) in_oracle |= cand == dec->poly;
      c.expect(in_oracle, "decoder returned a word the oracle says is out of budget");
      c.expect(dec->poly != planted, "decoder silently agreed with the planted word");
    } else {
      c.expect(nearby.empty(), "decoder missed a word the oracle found within budget");
    }
  }
  return c;
}

// 3: coded verification under a full-budget random adversary must reproduce
// the adversary-free uncoded results for every shard and epoch.
inline Check coded_matches_uncoded() {
  Check c;
  PrimeField f(PrimeField::kDefaultPrime);
  ArithmeticCircuit pair = parse_circuit(pair_product_text());
  struct Cell {
    std::size_t n, k;
    bool circuit;
  };
  for (Cell cell : {Cell{15, 5, false}, Cell{30, 10, false}, Cell{21, 3, true}}) {
    CapacityReport cap =
        capacity(SchemeKind::PolyShard, cell.n, cell.k, Rational{1, 3}, cell.circuit ? 2 : 1);
    for (std::uint64_t seed = 1; seed <= 20 && c.ok; ++seed) {
      RunConfig cfg;
      cfg.scheme = SchemeKind::PolyShard;
      cfg.n = cell.n;
      cfg.k = cell.k;
      cfg.accounts = 8;
      cfg.epochs = 50;
      cfg.mint = 1000;
      cfg.workload_seed = seed;
      cfg.invalid_rate = cell.circuit ? 0.0 : 0.25;
      cfg.rule = cell.circuit ? AcceptRule::Always : AcceptRule::NonNegative;
      cfg.circuit = cell.circuit ? &pair : nullptr;
      cfg.adversary.mu = Rational{cap.beta, cell.n};
      cfg.adversary.strategy = AdversaryStrategy::RandomValues;
      cfg.adversary.seed = 1000 + seed;
      RunResult res = run(f, cfg);

      VerifyFn vf = cell.circuit ? VerifyFn{VerifyFn::Kind::Circuit, &pair, cfg.rule}
                                 : VerifyFn{VerifyFn::Kind::Balance, nullptr, cfg.rule};
      Workload w = gen_workload(
          f, {cfg.k, cfg.accounts, cfg.epochs, cfg.invalid_rate, cfg.mint, cfg.workload_seed});
      GroundTruth truth = ground_truth(f, w, vf);
      bool same = res.total_violations == 0;
      for (std::size_t e = 0; e < cfg.epochs && same; ++e)
        for (std::size_t s = 0; s < cfg.k && same; ++s)
          same = res.decoded_h[e][s] == truth.h[e][s] && res.decoded_e[e][s] == truth.e[e][s];
      c.expect(same, "divergence at N=" + std::to_string(cell.n) + " K=" +
                         std::to_string(cell.k) + " seed=" + std::to_string(seed));
    }
  }
  return c;
}

// 4: tolerated-corruption counts at ratio 3, degree 1.
inline Check security_table() {
  Check c;
  const std::size_t ns[] = {15, 30, 60, 90, 120, 150};
  const std::size_t full[] = {7, 15, 30, 45, 60, 75};
  const std::size_t poly[] = {5, 10, 20, 30, 40, 50};
  for (std::size_t i = 0; i < 6; ++i) {
    const std::size_t n = ns[i], k = n / 3;
    c.expect(capacity(SchemeKind::FullReplication, n, k, Rational{1, 3}, 1).beta == full[i],
             "replication row at N=" + std::to_string(n));
    c.expect(capacity(SchemeKind::UncodedSharding, n, k, Rational{1, 3}, 1).beta == 1,
             "sharding row at N=" + std::to_string(n));
    c.expect(capacity(SchemeKind::PolyShard, n, k, Rational{1, 3}, 1).beta == poly[i],
             "coded row at N=" + std::to_string(n));
  }
  return c;
}

// 5: storage-efficiency factors, and the simulator's measured element counts
// must equal the closed form.
inline Check storage_table() {
  Check c;
  const std::size_t ns[] = {15, 30, 60, 90, 120, 150};
  for (std::size_t n : ns) {
    const std::size_t k = n / 3;
    c.expect(capacity(SchemeKind::FullReplication, n, k, Rational{1, 3}, 1).gamma == 1,
             "replication gamma at N=" + std::to_string(n));
    c.expect(capacity(SchemeKind::UncodedSharding, n, k, Rational{1, 3}, 1).gamma == k,
             "sharding gamma at N=" + std::to_string(n));
    c.expect(capacity(SchemeKind::PolyShard, n, k, Rational{1, 3}, 1).gamma == k,
             "coded gamma at N=" + std::to_string(n));
  }
  if (!c.ok) return c;

  PrimeField f(PrimeField::kDefaultPrime);
  for (SchemeKind kind : {SchemeKind::FullReplication, SchemeKind::UncodedSharding,
                          SchemeKind::PolyShard}) {
    RunConfig cfg;
    cfg.scheme = kind;
    cfg.n = 15;
    cfg.k = 5;
    cfg.accounts = 4;
    cfg.epochs = 3;
    RunResult res = run(f, cfg);
    // full ledger: K shards, genesis plus one block per epoch, 2M elements per
    // block
    const std::uint64_t ledger = 5ull * 4 * 2 * 4;
    const std::uint64_t per_node = kind == SchemeKind::FullReplication ? ledger : ledger / 5;
    c.expect(res.stored_full_elements == ledger && res.stored_per_node_elements == per_node,
             std::string("measured storage off for ") + scheme_name(kind));
    c.expect(!res.records.empty() &&
                 res.records.back().gamma == (kind == SchemeKind::FullReplication ? 1 : 5),
             std::string("measured gamma off for ") + scheme_name(kind));
  }
  return c;
}

// 6: operation-count throughput laws at desk scale.  Replication pins 1,
// sharding pins K at every epoch; the coded scheme must land in [0.8K, K] by
// the final epoch and never regress over the last half.  The summary across K
// must grow linearly for sharding and the coded scheme and stay flat for
// replication.
inline Check throughput_laws() {
  Check c;
  PrimeField f(PrimeField::kDefaultPrime);
  std::vector<double> poly_final;
  for (std::size_t k : {5u, 10u, 20u}) {
    RunConfig base;
    base.n = 3 * k;
    base.k = k;
    base.accounts = 200;
    base.epochs = 200;

    RunConfig cfg = base;
    cfg.scheme = SchemeKind::FullReplication;
    RunResult full = run(f, cfg);
    for (const MetricsRecord& r : full.records)
      c.expect(r.lambda == 1.0, "replication throughput drifted from 1 at K=" +
                                    std::to_string(k) + " epoch " + std::to_string(r.epoch));

    cfg.scheme = SchemeKind::UncodedSharding;
    RunResult shard = run(f, cfg);
    for (const MetricsRecord& r : shard.records)
      c.expect(r.lambda == static_cast<double>(k),
               "sharding throughput drifted from K at K=" + std::to_string(k) + " epoch " +
                   std::to_string(r.epoch));

    cfg.scheme = SchemeKind::PolyShard;
    RunResult coded = run(f, cfg);
    const double lam = coded.records.back().lambda;
    c.expect(lam >= 0.8 * static_cast<double>(k) && lam <= static_cast<double>(k),
             "coded throughput out of band at K=" + std::to_string(k));
    for (std::size_t i = coded.records.size() / 2; i + 1 < coded.records.size(); ++i)
      c.expect(coded.records[i].lambda <= coded.records[i + 1].lambda,
               "coded throughput regressed in the last half at K=" + std::to_string(k));
    poly_final.push_back(lam);
    if (!c.ok) return c;
  }
  // scaling shape: coded and sharded grow with N, replication stays flat
  c.expect(poly_final[1] > 1.5 * poly_final[0] && poly_final[2] > 1.5 * poly_final[1],
           "coded throughput did not scale with N");
  return c;
}

// 7: appending the encoded new block equals re-encoding the grown chains from
// scratch, for every node and every epoch.
inline Check incremental_append() {
  Check c;
  PrimeField f(PrimeField::kDefaultPrime);
  RunConfig cfg;
  cfg.scheme = SchemeKind::PolyShard;
  cfg.n = 15;
  cfg.k = 5;
  cfg.accounts = 4;
  cfg.epochs = 100;
  cfg.invalid_rate = 0.3;
  cfg.workload_seed = 7;
  cfg.adversary.mu = Rational{1, 5};
  cfg.adversary.seed = 77;
  RunResult res = run(f, cfg);
  c.expect(res.total_violations == 0, "reference run saw violations");
  if (!c.ok) return c;
  for (std::size_t i = 0; i < cfg.n && c.ok; ++i) {
    c.expect(res.coded_chains[i].blocks.size() == cfg.epochs + 1, "chain length off");
    for (std::size_t m = 0; m < res.coded_chains[i].blocks.size() && c.ok; ++m) {
      std::vector<Block> column;
      for (std::size_t s = 0; s < cfg.k; ++s) column.push_back(res.truth_chains[s].blocks[m]);
      c.expect(res.coded_chains[i].blocks[m] == encode_block(f, column, res.rows[i]),
               "append diverged from re-encode at node " + std::to_string(i) + " block " +
                   std::to_string(m));
    }
  }
  return c;
}

// 8: one coded chain answers both the linear balance check and a bundled
// degree-2 product check, and the encoding tables of the two runs match byte
// for byte.
inline Check shared_coded_chain() {
  Check c;
  PrimeField f(PrimeField::kDefaultPrime);
  const std::size_t k = 5, n = 15, len = 6;
  Grid g = make_grid(f, k, n);
  std::vector<std::vector<Fe>> rows = lagrange_rows(f, g);
  std::mt19937_64 rng(808);

  std::vector<Block> proposals;
  std::vector<SubChain> chains;
  for (std::size_t s = 0; s < k; ++s) {
    proposals.push_back(random_block(f, rng, len));
    SubChain ch{static_cast<std::uint32_t>(s), {}};
    ch.blocks.push_back(random_block(f, rng, len));
    ch.blocks.push_back(random_block(f, rng, len));
    chains.push_back(ch);
  }
  std::vector<Block> coded_prop(n);
  std::vector<SubChain> coded_chain(n);
  for (std::size_t i = 0; i < n; ++i) {
    coded_prop[i] = encode_block(f, proposals, rows[i]);
    coded_chain[i].shard = 0;
    for (std::size_t m = 0; m < 2; ++m) {
      std::vector<Block> column;
      for (std::size_t s = 0; s < k; ++s) column.push_back(chains[s].blocks[m]);
      coded_chain[i].blocks.push_back(encode_block(f, column, rows[i]));
    }
  }

  VerifyFn bal{VerifyFn::Kind::Balance, nullptr, AcceptRule::NonNegative};
  ArithmeticCircuit pair = parse_circuit(pair_product_text());
  VerifyFn circ{VerifyFn::Kind::Circuit, &pair, AcceptRule::Always};

  std::vector<std::vector<Fe>> msg_bal(n), msg_circ(n);
  for (std::size_t i = 0; i < n; ++i) {
    msg_bal[i] = bal(f, coded_prop[i], coded_chain[i]);
    msg_circ[i] = circ(f, coded_prop[i], coded_chain[i]);
  }
  auto dec_bal = coded_decode(f, g, msg_bal, k, 0);
  auto dec_circ = coded_decode(f, g, msg_circ, 2 * (k - 1) + 1, 0);
  c.expect(dec_bal.has_value() && dec_circ.has_value(), "shared-chain decode failed");
  if (!c.ok) return c;
  for (std::size_t s = 0; s < k; ++s) {
    c.expect((*dec_bal)[s] == bal(f, proposals[s], chains[s]),
             "balance answer off for shard " + std::to_string(s));
    c.expect((*dec_circ)[s] == circ(f, proposals[s], chains[s]),
             "product answer off for shard " + std::to_string(s));
  }
  if (!c.ok) return c;

  // same network, two verification functions: identical coefficient tables
  RunConfig a;
  a.scheme = SchemeKind::PolyShard;
  a.n = n;
  a.k = k;
  a.accounts = 4;
  a.epochs = 3;
  RunConfig b = a;
  b.circuit = &pair;
  b.rule = AcceptRule::Always;
  RunResult ra = run(f, a), rb = run(f, b);
  c.expect(ra.rows.size() == rb.rows.size(), "row tables differ in size");
  for (std::size_t i = 0; i < ra.rows.size() && c.ok; ++i) {
    c.expect(ra.rows[i].size() == rb.rows[i].size() &&
                 std::memcmp(ra.rows[i].data(), rb.rows[i].data(),
                             ra.rows[i].size() * sizeof(Fe)) == 0,
             "row tables differ at node " + std::to_string(i));
  }
  return c;
}

// 9: every boolean function on 3 bits lifts to a polynomial that reproduces
// its truth table over GF(2) and GF(2^4).
inline Check boolean_lifting() {
  Check c;
  BinaryField f2(1), f16(4);
  for (unsigned fn = 0; fn < 256 && c.ok; ++fn) {
    std::vector<bool> table(8);
    for (unsigned i = 0; i < 8; ++i) table[i] = (fn >> i) & 1u;
    BooleanPolynomial p = bool_to_poly(table);
    for (unsigned i = 0; i < 8 && c.ok; ++i) {
      std::vector<Fe> x2, x16;
      for (unsigned b = 0; b < 3; ++b) {
        x2.push_back(f2.embed_bit((i >> b) & 1u));
        x16.push_back(f16.embed_bit((i >> b) & 1u));
      }
      c.expect(eval_bool_poly(f2, p, x2) == f2.embed_bit(table[i] ? 1 : 0),
               "GF(2) mismatch for function " + std::to_string(fn));
      c.expect(eval_bool_poly(f16, p, x16) == f16.embed_bit(table[i] ? 1 : 0),
               "GF(16) mismatch for function " + std::to_string(fn));
    }
  }
  return c;
}

// 10: layered coded evaluation of the four-factor circuit at K = 5, N = 15
// with exactly 3 corrupted nodes per layer matches direct evaluation; the
// supported-shard-count formula is spot-checked at three network sizes.
inline Check layered_verification() {
  Check c;
  c.expect(capacity(SchemeKind::IterativePolyShard, 15, 1, Rational{1, 5}, 4).k_max == 5,
           "supported shards at N=15");
  c.expect(capacity(SchemeKind::IterativePolyShard, 30, 1, Rational{1, 5}, 4).k_max == 9,
           "supported shards at N=30");
  c.expect(capacity(SchemeKind::IterativePolyShard, 150, 1, Rational{1, 5}, 4).k_max == 45,
           "supported shards at N=150");
  if (!c.ok) return c;

  PrimeField f(PrimeField::kDefaultPrime);
  ArithmeticCircuit circ = parse_circuit(four_factor_text());
  const std::size_t k = 5, n = 15;
  Grid g = make_grid(f, k, n);
  std::vector<std::vector<Fe>> rows = lagrange_rows(f, g);
  for (std::uint64_t seed = 1; seed <= 20 && c.ok; ++seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::vector<Fe>> inputs(k, std::vector<Fe>(circ.inputs));
    for (auto& v : inputs)
      for (Fe& x : v) x = f.from_u64(rng());
    auto tamper = [&](std::size_t, std::vector<std::vector<Fe>>& messages) {
      std::vector<std::size_t> bad;
      while (bad.size() < 3) {
        std::size_t i = rng() % n;
        bool seen = false;
        for (std::size_t b : bad) seen |= b == i;
        if (!seen) bad.push_back(i);
      }
      for (std::size_t i : bad) messages[i] = corrupt_message(f, messages[i], rng);
    };
    IterativeResult res = iterative_epoch(f, circ, g, inputs, rows, 3, tamper);
    c.expect(res.ok, "layered decode failed at seed " + std::to_string(seed));
    for (std::size_t s = 0; s < k && c.ok; ++s)
      c.expect(res.outputs[s] == eval_circuit(f, circ, inputs[s]),
               "shard " + std::to_string(s) + " diverged at seed " + std::to_string(seed));
  }
  return c;
}

}  // namespace acceptance

// Runs the checklist, printing one line per check.  Returns all results;
// callers turn failures into a nonzero exit code.
inline std::vector<CriterionResult> run_acceptance(std::ostream& out) {
  using Clock = std::chrono::steady_clock;
  struct Entry {
    int id;
    const char* name;
    acceptance::Check (*fn)();
    double limit_s;  // 0 means no pinned budget
  };
  const Entry entries[] = {
      {1, "lagrange-identity", acceptance::lagrange_identity, 10.0},
      {2, "decode-capacity", acceptance::decode_capacity, 0.0},
      {3, "coded-matches-uncoded", acceptance::coded_matches_uncoded, 120.0},
      {4, "security-table", acceptance::security_table, 0.0},
      {5, "storage-table", acceptance::storage_table, 0.0},
      {6, "throughput-laws", acceptance::throughput_laws, 300.0},
      {7, "incremental-append", acceptance::incremental_append, 0.0},
      {8, "shared-coded-chain", acceptance::shared_coded_chain, 0.0},
      {9, "boolean-lifting", acceptance::boolean_lifting, 0.0},
      {10, "layered-verification", acceptance::layered_verification, 0.0},
  };
  std::vector<CriterionResult> results;
  for (const Entry& e : entries) {
    CriterionResult r;
    r.id = e.id;
    r.name = e.name;
    auto t0 = Clock::now();
    try {
      acceptance::Check c = e.fn();
      r.pass = c.ok;
      r.note = c.note;
    } catch (const std::exception& ex) {
      r.pass = false;
      r.note = std::string("exception: ") + ex.what();
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - t0).count();
    if (r.pass && e.limit_s > 0.0 && r.seconds > e.limit_s) {
      r.pass = false;
      r.note = "exceeded the " + std::to_string(static_cast<int>(e.limit_s)) + " s budget";
    }
    char line[192];
    std::snprintf(line, sizeof line, "%s %2d %-24s (%.2f s)%s%s", r.pass ? "PASS" : "FAIL", r.id,
                  r.name.c_str(), r.seconds, r.note.empty() ? "" : "  ",
                  r.note.c_str());
    out << line << '\n';
    results.push_back(r);
  }
  std::size_t passed = 0;
  for (const CriterionResult& r : results) passed += r.pass ? 1 : 0;
  out << passed << "/" << results.size() << " checks passed\n";
  return results;
}

}  // namespace polyshard
