#pragma once

// Epoch-driven simulation. One run holds the canonical adversary-free chains
// (the ground truth), the honest nodes' storage for the chosen scheme, and a
// fixed corrupted-node set. Every epoch: nodes compute verification messages,
// the adversary replaces the corrupted ones, the scheme's recovery step runs,
// accepted blocks are appended, and the metrics row is recorded.
//
// Operation accounting: per-node compute that is identical across a group of
// nodes is executed once and booked once per member. Coded nodes hold
// distinct data, so their work is executed and booked individually. Recovery
// runs once network-wide and is booked once; replica votes are comparisons
// and cost nothing. Setup artifacts (the encoding rows, the zero-error decode
// weight table, genesis encoding) are built outside the counted field.

#include <polyshard/adversary.hpp>
#include <polyshard/circuit.hpp>
#include <polyshard/field.hpp>
#include <polyshard/ledger.hpp>
#include <polyshard/poly.hpp>
#include <polyshard/schemes.hpp>

#include <algorithm>
#include <chrono>
#include <cstddef>
#include <cstdint>
#include <cstdio>
#include <optional>
#include <ostream>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace polyshard {

struct RunConfig {
  SchemeKind scheme = SchemeKind::PolyShard;
  std::size_t n = 15;
  std::size_t k = 5;
  const ArithmeticCircuit* circuit = nullptr;  // null: ledger balance check
  AcceptRule rule = AcceptRule::NonNegative;
  std::size_t accounts = 200;
  std::size_t epochs = 200;
  double invalid_rate = 0.0;
  std::uint64_t mint = 1000;
  std::uint64_t workload_seed = 1;
  AdversarySpec adversary;  // adversary.mu is the run's corruption rate
  bool allow_over_budget = false;  // permit runs past the coded capacity
  bool check_agreement = true;     // redundant second decode as a tripwire
  std::string run_id = "run";      // single CSV token, no commas
};

struct MetricsRecord {
  std::size_t epoch = 0;  // 1-based
  std::uint64_t c_rho = 0;
  std::uint64_t c_psi = 0;
  std::uint64_t c_chi = 0;
  std::uint64_t c_f = 0;
  double lambda = 0.0;
  std::size_t gamma = 0;
  std::size_t beta = 0;
  std::size_t violations = 0;
  double wall_ms = 0.0;
};

struct GroundTruth {
  std::vector<std::vector<std::vector<Fe>>> h;  // [epoch][shard]
  std::vector<std::vector<int>> e;              // [epoch][shard]
  std::vector<SubChain> final_chains;
};

struct RunResult {
  std::vector<MetricsRecord> records;
  std::vector<std::vector<std::vector<Fe>>> decoded_h;  // [epoch][shard]
  std::vector<std::vector<int>> decoded_e;
  std::vector<SubChain> truth_chains;   // adversary-free reference, final state
  std::vector<SubChain> honest_chains;  // replica kinds: the shared uncoded storage
  std::vector<SubChain> coded_chains;   // coded kinds: one per node
  std::vector<std::vector<Fe>> rows;    // coded kinds: encoding coefficients
  std::vector<std::size_t> corrupt_set;
  std::uint64_t stored_full_elements = 0;
  std::uint64_t stored_per_node_elements = 0;
  std::size_t total_violations = 0;
};

// Adversary-free sequential verification of every shard; the reference every
// scheme is measured against.
template <FieldLike F>
GroundTruth ground_truth(const F& f, const Workload& w, const VerifyFn& vf) {
  GroundTruth t;
  for (std::size_t k = 0; k < w.params.shards; ++k)
    t.final_chains.push_back(SubChain{static_cast<std::uint32_t>(k), {w.mint[k]}});
  for (std::size_t e = 0; e < w.params.epochs; ++e) {
    std::vector<std::vector<Fe>> h;
    std::vector<int> accept;
    for (std::size_t k = 0; k < w.params.shards; ++k) {
      h.push_back(vf(f, w.proposals[e][k], t.final_chains[k]));
      accept.push_back(apply_accept(f, h.back(), vf.rule));
      t.final_chains[k].blocks.push_back(finalize_block(f, w.proposals[e][k], accept.back()));
    }
    t.h.push_back(std::move(h));
    t.e.push_back(std::move(accept));
  }
  return t;
}

inline std::size_t config_degree(const RunConfig& cfg) {
  return cfg.circuit == nullptr ? 1 : circuit_degree(*cfg.circuit);
}

inline void validate_config(const RunConfig& cfg) {
  if (cfg.n == 0 || cfg.k == 0)
    throw std::invalid_argument("config: node and shard counts must be positive");
  if (cfg.k > cfg.n) throw std::invalid_argument("config: shard count cannot exceed node count");
  if (cfg.accounts == 0) throw std::invalid_argument("config: accounts must be positive");
  detail::check_rate(cfg.adversary.mu);
  if (cfg.circuit != nullptr) {
    if (auto v = validate_circuit(*cfg.circuit); v.has_value())
      throw std::invalid_argument("config: circuit fails shape validation at gate " + v->gate);
  }
  const std::size_t d = config_degree(cfg);
  switch (cfg.scheme) {
    case SchemeKind::FullReplication:
      break;
    case SchemeKind::UncodedSharding:
      if (cfg.n % cfg.k != 0)
        throw std::invalid_argument("config: the shard count must divide the node count");
      break;
    case SchemeKind::PolyShard: {
      if (cfg.circuit != nullptr && cfg.circuit->inputs != 2)
        throw std::invalid_argument("config: direct circuit verification needs a two-input circuit");
      const std::size_t dim = (cfg.k - 1) * d + 1;
      if (dim > cfg.n)
        throw std::invalid_argument("config: decode dimension exceeds the node count");
      if (!cfg.allow_over_budget &&
          cfg.k > capacity(cfg.scheme, cfg.n, cfg.k, cfg.adversary.mu, d).k_max)
        throw std::invalid_argument("config: shard count exceeds the coded capacity at this rate");
      break;
    }
    case SchemeKind::IterativePolyShard: {
      if (cfg.circuit == nullptr)
        throw std::invalid_argument("config: the layered scheme needs a circuit");
      const std::size_t dim = 2 * (cfg.k - 1) + 1;
      if (dim > cfg.n)
        throw std::invalid_argument("config: decode dimension exceeds the node count");
      if (!cfg.allow_over_budget &&
          cfg.k > capacity(cfg.scheme, cfg.n, cfg.k, cfg.adversary.mu, d).k_max)
        throw std::invalid_argument("config: shard count exceeds the coded capacity at this rate");
      break;
    }
  }
  if (cfg.adversary.strategy == AdversaryStrategy::TargetedShard && cfg.n % cfg.k != 0)
    throw std::invalid_argument("config: targeting a shard needs a divisible network");
}

namespace detail {

inline std::uint64_t chain_elements(const SubChain& chain) {
  std::uint64_t total = 0;
  for (const Block& b : chain.blocks) total += b.send.size() + b.receive.size();
  return total;
}

inline std::uint64_t chain_elements(const std::vector<SubChain>& chains) {
  std::uint64_t total = 0;
  for (const SubChain& c : chains) total += chain_elements(c);
  return total;
}

template <FieldLike F>
struct Engine {
  const F& base;
  const RunConfig& cfg;
  OpCounter ops;
  CountedField<F> cf;

  std::size_t n, k, m_accounts;
  VerifyFn vf;
  Workload w;
  GroundTruth truth;
  std::vector<SubChain> truth_now;

  Grid grid;  // coded kinds
  std::vector<std::vector<Fe>> rows, weights;
  std::size_t dim = 0, budget = 0;
  std::vector<SubChain> honest;   // replica kinds
  std::vector<SubChain> coded;    // coded kinds, per node
  std::vector<std::size_t> corrupt;
  std::vector<char> is_corrupt;
  std::mt19937_64 lie_rng;

  RunResult out;

  Engine(const F& b, const RunConfig& c)
      : base(b), cfg(c), cf(b, ops), n(c.n), k(c.k), m_accounts(c.accounts),
        lie_rng(c.adversary.seed ^ 0x9e3779b97f4a7c15ULL) {}

  std::uint64_t taken() const { return ops.total(); }

  template <class Fld>
  std::vector<std::vector<Fe>> shard_results(const Fld& fld, const std::vector<Block>& props,
                                             const std::vector<SubChain>& chains) const {
    std::vector<std::vector<Fe>> h;
    for (std::size_t s = 0; s < k; ++s) h.push_back(vf(fld, props[s], chains[s]));
    return h;
  }

  template <class Fld>
  void coded_compute(const Fld& fld, const std::vector<Block>& props,
                     const std::vector<SubChain>& stores, std::vector<Block>& coded_props,
                     std::vector<std::vector<Fe>>& g) const {
    coded_props.clear();
    g.clear();
    for (std::size_t i = 0; i < n; ++i) {
      coded_props.push_back(encode_block(fld, props, rows[i]));
      g.push_back(vf(fld, coded_props.back(), stores[i]));
    }
  }

  template <class Fld>
  std::optional<std::vector<std::vector<Fe>>> coded_recover(
      const Fld& fld, const std::vector<std::vector<Fe>>& sent) const {
    if (budget == 0) return coded_decode(fld, grid, sent, dim, 0, &weights);
    return coded_decode(fld, grid, sent, dim, budget);
  }

  // Replica-side recovery: an exact-equality vote per shard. Full replication
  // polls every node; sharding polls the q nodes assigned to the shard.
  void vote_recover(const std::vector<std::vector<std::vector<Fe>>>& sent,
                    std::vector<std::vector<Fe>>& dec_h, std::vector<int>& dec_e) const {
    const bool sharded = cfg.scheme == SchemeKind::UncodedSharding;
    const std::size_t q = n / k;
    for (std::size_t s = 0; s < k; ++s) {
      std::vector<std::vector<Fe>> candidates;
      if (sharded)
        for (std::size_t i = s * q; i < (s + 1) * q; ++i) candidates.push_back(sent[i][0]);
      else
        for (std::size_t i = 0; i < n; ++i) candidates.push_back(sent[i][s]);
      VoteResult v = majority_vote(candidates);
      if (v.tie) {
        dec_h.push_back({});
        dec_e.push_back(0);
      } else {
        dec_h.push_back(v.value);
        dec_e.push_back(apply_accept(base, v.value, cfg.rule));
      }
    }
  }

  void pick_corrupt() {
    const std::size_t per_shard = n % k == 0 ? n / k : n;
    if (cfg.epochs == 0 || corrupt_count(cfg.adversary.mu, n) == 0) return;
    DamageFn damage;
    if (cfg.adversary.strategy == AdversaryStrategy::WorstCaseSearch)
      damage = [this](const std::vector<std::size_t>& s) { return probe_damage(s); };
    corrupt = select_corrupt(cfg.adversary, n, per_shard, damage);
    is_corrupt.assign(n, 0);
    for (std::size_t i : corrupt) is_corrupt[i] = 1;
  }

  // Scores a candidate set on the first epoch with unit-offset lies; used
  // only by the worst-case placement search. Runs uncounted.
  std::size_t probe_damage(const std::vector<std::size_t>& s) const {
    const std::vector<Block>& props = w.proposals[0];
    std::vector<std::vector<Fe>> dec_h;
    std::vector<int> dec_e;
    if (cfg.scheme == SchemeKind::PolyShard) {
      std::vector<Block> cp;
      std::vector<std::vector<Fe>> g;
      coded_compute(base, props, coded, cp, g);
      for (std::size_t i : s)
        for (Fe& v : g[i]) v = base.add(v, base.one());
      auto dec = coded_recover(base, g);
      if (!dec.has_value()) return 2 * k + 2;
      dec_h = *dec;
      for (const auto& h : dec_h) dec_e.push_back(apply_accept(base, h, cfg.rule));
    } else {
      std::vector<std::vector<Fe>> h = shard_results(base, props, honest);
      std::vector<std::vector<std::vector<Fe>>> sent(n);
      const bool sharded = cfg.scheme == SchemeKind::UncodedSharding;
      const std::size_t q = n / k;
      for (std::size_t i = 0; i < n; ++i) {
        if (sharded)
          sent[i] = {h[shard_of(i, q)]};
        else
          sent[i] = h;
      }
      for (std::size_t i : s)
        for (auto& msg : sent[i])
          for (Fe& v : msg) v = base.add(v, base.one());
      vote_recover(sent, dec_h, dec_e);
    }
    std::size_t bad = 0;
    for (std::size_t s2 = 0; s2 < k; ++s2)
      bad += dec_h[s2] != truth.h[0][s2] || dec_e[s2] != truth.e[0][s2];
    return 2 * bad;
  }

  RunResult go() {
    validate_config(cfg);
    vf = cfg.circuit == nullptr ? VerifyFn{VerifyFn::Kind::Balance, nullptr, cfg.rule}
                                : VerifyFn{VerifyFn::Kind::Circuit, cfg.circuit, cfg.rule};
    if (cfg.scheme == SchemeKind::IterativePolyShard) return go_layered();

    w = gen_workload(base,
                     {k, m_accounts, cfg.epochs, cfg.invalid_rate, cfg.mint, cfg.workload_seed});
    truth = ground_truth(base, w, vf);
    truth_now.clear();
    for (std::size_t s = 0; s < k; ++s)
      truth_now.push_back(SubChain{static_cast<std::uint32_t>(s), {w.mint[s]}});

    const std::size_t d = config_degree(cfg);
    const bool is_coded = cfg.scheme == SchemeKind::PolyShard;
    if (is_coded) {
      grid = make_grid(base, k, n);
      rows = lagrange_rows(base, grid);
      dim = (k - 1) * d + 1;
      budget = std::min(corrupt_count(cfg.adversary.mu, n), (n - dim) / 2);
      if (budget == 0) weights = decode_weights(base, grid, dim);
      for (std::size_t i = 0; i < n; ++i)
        coded.push_back(
            SubChain{static_cast<std::uint32_t>(i), {encode_block(base, w.mint, rows[i])}});
    } else {
      for (std::size_t s = 0; s < k; ++s)
        honest.push_back(SubChain{static_cast<std::uint32_t>(s), {w.mint[s]}});
    }
    is_corrupt.assign(n, 0);
    pick_corrupt();

    const std::size_t beta =
        capacity(cfg.scheme, n, k, cfg.adversary.mu, d).beta;
    for (std::size_t e = 1; e <= cfg.epochs; ++e) {
      const auto t0 = std::chrono::steady_clock::now();
      const std::vector<Block>& props = w.proposals[e - 1];
      MetricsRecord rec;
      rec.epoch = e;
      rec.beta = beta;

      // reference cost: one uncoded verification of shard 0
      std::uint64_t snap = taken();
      vf(cf, props[0], truth_now[0]);
      rec.c_f = taken() - snap;

      std::vector<std::vector<Fe>> dec_h;
      std::vector<int> dec_e;
      bool decode_failed = false, disagreement = false;

      if (is_coded) {
        std::vector<Block> coded_props;
        std::vector<std::vector<Fe>> g;
        snap = taken();
        coded_compute(cf, props, coded, coded_props, g);
        rec.c_rho = taken() - snap;

        for (std::size_t i : corrupt) g[i] = corrupt_message(base, g[i], lie_rng);

        snap = taken();
        auto dec = coded_recover(cf, g);
        rec.c_psi = taken() - snap;
        if (cfg.check_agreement && coded_recover(base, g) != dec) disagreement = true;
        if (!dec.has_value()) {
          decode_failed = true;
          dec_h.assign(k, {});
          dec_e.assign(k, 0);
        } else {
          dec_h = std::move(*dec);
          for (const auto& h : dec_h) dec_e.push_back(apply_accept(base, h, cfg.rule));
        }

        // chain update: accepted epochs append the already-computed coded
        // proposal; partial rejections subtract the rejected terms; total
        // rejection appends a zero block
        std::size_t rejected = 0;
        for (int a : dec_e) rejected += a == 0;
        snap = taken();
        if (rejected == 0) {
          for (std::size_t i = 0; i < n; ++i) coded[i].blocks.push_back(coded_props[i]);
        } else if (rejected == k) {
          Block zero;
          zero.send.assign(m_accounts, base.zero());
          zero.receive.assign(m_accounts, base.zero());
          for (std::size_t i = 0; i < n; ++i) coded[i].blocks.push_back(zero);
        } else {
          for (std::size_t i = 0; i < n; ++i) {
            Block adj = coded_props[i];
            for (std::size_t s = 0; s < k; ++s) {
              if (dec_e[s] == 1) continue;
              for (std::size_t c = 0; c < m_accounts; ++c) {
                adj.send[c] = cf.sub(adj.send[c], cf.mul(rows[i][s], props[s].send[c]));
                adj.receive[c] = cf.sub(adj.receive[c], cf.mul(rows[i][s], props[s].receive[c]));
              }
            }
            coded[i].blocks.push_back(std::move(adj));
          }
        }
        rec.c_chi = taken() - snap;
      } else {
        const bool sharded = cfg.scheme == SchemeKind::UncodedSharding;
        const std::size_t q = n / k;
        std::vector<std::vector<Fe>> h(k);
        if (sharded) {
          for (std::size_t s = 0; s < k; ++s) {
            snap = taken();
            h[s] = vf(cf, props[s], honest[s]);
            rec.c_rho += (taken() - snap) * q;
          }
        } else {
          snap = taken();
          h = shard_results(cf, props, honest);
          rec.c_rho = (taken() - snap) * n;
        }

        // corrupted replicas collude on one lie per shard per epoch
        std::vector<std::vector<Fe>> lies;
        for (std::size_t s = 0; s < k; ++s) lies.push_back(corrupt_message(base, h[s], lie_rng));
        std::vector<std::vector<std::vector<Fe>>> sent(n);
        for (std::size_t i = 0; i < n; ++i) {
          if (sharded) {
            const std::size_t s = shard_of(i, q);
            sent[i] = {is_corrupt[i] ? lies[s] : h[s]};
          } else {
            sent[i] = is_corrupt[i] ? lies : h;
          }
        }
        vote_recover(sent, dec_h, dec_e);  // comparisons only, zero ops

        for (std::size_t s = 0; s < k; ++s)
          honest[s].blocks.push_back(finalize_block(base, props[s], dec_e[s]));
      }

      for (std::size_t s = 0; s < k; ++s)
        truth_now[s].blocks.push_back(finalize_block(base, props[s], truth.e[e - 1][s]));

      rec.violations = (decode_failed ? 1 : 0) + (disagreement ? 1 : 0);
      for (std::size_t s = 0; s < k; ++s)
        rec.violations += dec_h[s] != truth.h[e - 1][s] || dec_e[s] != truth.e[e - 1][s];

      const std::uint64_t full_elems = chain_elements(truth_now);
      const std::uint64_t per_node =
          is_coded ? chain_elements(coded[0])
                   : (cfg.scheme == SchemeKind::FullReplication ? chain_elements(honest)
                                                                : chain_elements(honest[0]));
      rec.gamma = per_node == 0 ? k : static_cast<std::size_t>(full_elems / per_node);
      out.stored_full_elements = full_elems;
      out.stored_per_node_elements = per_node;

      const std::uint64_t denom = rec.c_rho + rec.c_psi + rec.c_chi;
      rec.lambda = (denom == 0 || rec.c_f == 0)
                       ? 0.0
                       : static_cast<double>(k * n * rec.c_f) / static_cast<double>(denom);
      rec.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
      out.total_violations += rec.violations;
      out.decoded_h.push_back(std::move(dec_h));
      out.decoded_e.push_back(std::move(dec_e));
      out.records.push_back(rec);
    }

    out.truth_chains = std::move(truth_now);
    out.honest_chains = std::move(honest);
    out.coded_chains = std::move(coded);
    out.rows = rows;
    out.corrupt_set = corrupt;
    return out;
  }

  // Layered coded evaluation: every epoch runs the whole circuit on fresh
  // per-shard inputs. No chains are kept, so storage efficiency is reported
  // as the closed form K.
  RunResult go_layered() {
    const ArithmeticCircuit& c = *cfg.circuit;
    grid = make_grid(base, k, n);
    rows = lagrange_rows(base, grid);
    dim = 2 * (k - 1) + 1;
    budget = std::min(corrupt_count(cfg.adversary.mu, n), (n - dim) / 2);
    if (budget == 0) weights = decode_weights(base, grid, dim);

    std::mt19937_64 input_rng(cfg.workload_seed);
    std::vector<std::vector<std::vector<Fe>>> inputs(cfg.epochs);
    for (auto& per_epoch : inputs) {
      per_epoch.resize(k);
      for (auto& x : per_epoch) {
        x.resize(c.inputs);
        for (Fe& v : x) v = base.from_u64(input_rng());
      }
    }
    for (std::size_t e = 0; e < cfg.epochs; ++e) {
      std::vector<std::vector<Fe>> h;
      std::vector<int> accept;
      for (std::size_t s = 0; s < k; ++s) {
        h.push_back(eval_circuit(base, c, inputs[e][s]));
        accept.push_back(apply_accept(base, h.back(), cfg.rule));
      }
      truth.h.push_back(std::move(h));
      truth.e.push_back(std::move(accept));
    }

    is_corrupt.assign(n, 0);
    if (cfg.epochs > 0 && corrupt_count(cfg.adversary.mu, n) > 0) {
      if (cfg.adversary.strategy == AdversaryStrategy::WorstCaseSearch)
        throw std::invalid_argument("config: worst-case search is not defined for layered runs");
      corrupt = select_corrupt(cfg.adversary, n, n % k == 0 ? n / k : n);
      for (std::size_t i : corrupt) is_corrupt[i] = 1;
    }
    const std::size_t beta = capacity(cfg.scheme, n, k, cfg.adversary.mu, 1).beta;

    for (std::size_t e = 1; e <= cfg.epochs; ++e) {
      const auto t0 = std::chrono::steady_clock::now();
      MetricsRecord rec;
      rec.epoch = e;
      rec.beta = beta;
      rec.gamma = k;

      std::uint64_t snap = taken();
      eval_circuit(cf, c, inputs[e - 1][0]);
      rec.c_f = taken() - snap;

      bool failed = false, disagreement = false;
      std::vector<std::vector<Fe>> cur = inputs[e - 1];
      std::size_t layer = 1;
      for (; layer <= c.layers.size(); ++layer) {
        const std::size_t arity = cur[0].size();
        std::vector<std::vector<Fe>> messages(n);
        snap = taken();
        for (std::size_t i = 0; i < n; ++i) {
          std::vector<Fe> coded_in(arity, cf.zero());
          for (std::size_t s = 0; s < k; ++s)
            for (std::size_t t = 0; t < arity; ++t)
              coded_in[t] = cf.add(coded_in[t], cf.mul(rows[i][s], cur[s][t]));
          messages[i] = eval_layer(cf, c, layer, coded_in);
        }
        rec.c_rho += taken() - snap;

        for (std::size_t i : corrupt) messages[i] = corrupt_message(base, messages[i], lie_rng);

        snap = taken();
        auto dec = coded_recover(cf, messages);
        rec.c_psi += taken() - snap;
        if (cfg.check_agreement && coded_recover(base, messages) != dec) disagreement = true;
        if (!dec.has_value()) {
          failed = true;
          break;
        }
        cur = std::move(*dec);
      }

      std::vector<std::vector<Fe>> dec_h;
      std::vector<int> dec_e;
      if (failed) {
        dec_h.assign(k, {});
        dec_e.assign(k, 0);
      } else {
        dec_h = cur;
        for (const auto& h : dec_h) dec_e.push_back(apply_accept(base, h, cfg.rule));
      }
      rec.violations = (failed ? 1 : 0) + (disagreement ? 1 : 0);
      for (std::size_t s = 0; s < k; ++s)
        rec.violations += dec_h[s] != truth.h[e - 1][s] || dec_e[s] != truth.e[e - 1][s];

      const std::uint64_t denom = rec.c_rho + rec.c_psi + rec.c_chi;
      rec.lambda = (denom == 0 || rec.c_f == 0)
                       ? 0.0
                       : static_cast<double>(k * n * rec.c_f) / static_cast<double>(denom);
      rec.wall_ms =
          std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
              .count();
      out.total_violations += rec.violations;
      out.decoded_h.push_back(std::move(dec_h));
      out.decoded_e.push_back(std::move(dec_e));
      out.records.push_back(rec);
    }
    out.rows = rows;
    out.corrupt_set = corrupt;
    return out;
  }
};

}  // namespace detail

template <FieldLike F>
RunResult run(const F& base, const RunConfig& cfg) {
  detail::Engine<F> engine(base, cfg);
  return engine.go();
}

inline void write_csv(std::ostream& os, const RunConfig& cfg,
                      const std::vector<MetricsRecord>& records) {
  os << "run_id,scheme,n,k,mu,epoch,c_rho_total,c_psi_total,c_chi_total,c_f,lambda,gamma,beta,"
        "violations,wall_ms\n";
  char lam[32], wall[32];
  for (const MetricsRecord& r : records) {
    std::snprintf(lam, sizeof lam, "%.6f", r.lambda);
    std::snprintf(wall, sizeof wall, "%.3f", r.wall_ms);
    os << cfg.run_id << ',' << scheme_name(cfg.scheme) << ',' << cfg.n << ',' << cfg.k << ','
       << cfg.adversary.mu.num << '/' << cfg.adversary.mu.den << ',' << r.epoch << ',' << r.c_rho
       << ',' << r.c_psi << ',' << r.c_chi << ',' << r.c_f << ',' << lam << ',' << r.gamma << ','
       << r.beta << ',' << r.violations << ',' << wall << '\n';
  }
}

}  // namespace polyshard
