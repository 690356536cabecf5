#pragma once

#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

#include "field.hpp"

namespace polyshard {

/// Payment between two accounts of one shard. Amounts are positive; the
/// ledger embedding turns sends into negated field elements.
struct Transaction {
  std::uint32_t sender = 0;
  std::uint32_t receiver = 0;
  std::uint64_t amount = 0;
};

/// Net per-account effect of one epoch on one shard: send holds the negated
/// outgoing totals, receive the incoming totals. Both have M entries. The
/// same layout carries coded blocks, whose entries are linear mixes of the
/// uncoded ones.
struct Block {
  std::vector<Fe> send;
  std::vector<Fe> receive;
  friend bool operator==(const Block&, const Block&) = default;
};

struct SubChain {
  std::uint32_t shard = 0;
  std::vector<Block> blocks; // index 0 is the mint block
  friend bool operator==(const SubChain&, const SubChain&) = default;
};

template <class F>
Block make_block(const F& f, const std::vector<Transaction>& txs, std::size_t accounts) {
  Block b;
  b.send.assign(accounts, f.zero());
  b.receive.assign(accounts, f.zero());
  for (const auto& tx : txs) {
    if (tx.sender >= accounts || tx.receiver >= accounts)
      throw std::invalid_argument("make_block: account index out of range");
    if (tx.sender == tx.receiver)
      throw std::invalid_argument("make_block: self transfer");
    if (tx.amount == 0) throw std::invalid_argument("make_block: zero amount");
    Fe amt = f.from_u64(tx.amount);
    b.send[tx.sender] = f.sub(b.send[tx.sender], amt);
    b.receive[tx.receiver] = f.add(b.receive[tx.receiver], amt);
  }
  return b;
}

/// Genesis block: every account receives the mint amount, nothing is sent.
template <class F>
Block mint_block(const F& f, std::size_t accounts, std::uint64_t amount) {
  Block b;
  b.send.assign(accounts, f.zero());
  b.receive.assign(accounts, f.from_u64(amount));
  return b;
}

/// h = proposal.send + sum over the chain of (send + receive). Entry a is the
/// balance account a would be left with if the proposal were applied, ignoring
/// the proposal's own receives. Exactly 2*M*len(chain) additions.
template <class F>
std::vector<Fe> verify_balance(const F& f, const Block& proposal, const SubChain& chain) {
  std::size_t m = proposal.send.size();
  std::vector<Fe> h = proposal.send;
  for (const Block& b : chain.blocks) {
    if (b.send.size() != m || b.receive.size() != m)
      throw std::invalid_argument("verify_balance: account count mismatch in chain");
    for (std::size_t c = 0; c < m; ++c)
      h[c] = f.add(h[c], f.add(b.send[c], b.receive[c]));
  }
  return h;
}

enum class AcceptRule { NonNegative, Always, AllZero };

/// 1 = accept. NonNegative reads the signed representative and so needs a
/// prime field; the other rules are order-free.
template <class F>
int apply_accept(const F& f, const std::vector<Fe>& h, AcceptRule rule) {
  switch (rule) {
    case AcceptRule::Always:
      return 1;
    case AcceptRule::AllZero:
      for (Fe v : h)
        if (v != f.zero()) return 0;
      return 1;
    case AcceptRule::NonNegative:
      for (Fe v : h)
        if (f.signed_repr(v) < 0) return 0;
      return 1;
  }
  return 0;
}

template <class F>
Block finalize_block(const F& f, const Block& b, int e) {
  if (e != 0 && e != 1) throw std::invalid_argument("finalize_block: vote must be 0 or 1");
  if (e == 1) return b;
  Block z;
  z.send.assign(b.send.size(), f.zero());
  z.receive.assign(b.receive.size(), f.zero());
  return z;
}

namespace detail {

/// Deterministic bounded draw; std::uniform_int_distribution is not portable
/// across standard libraries.
inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  return rng() % n;
}

} // namespace detail

struct WorkloadParams {
  std::size_t shards = 1;
  std::size_t accounts = 1;
  std::size_t epochs = 0;
  double invalid_rate = 0.0;
  std::uint64_t mint_amount = 1000;
  std::uint64_t seed = 1;
};

/// Pre-generated transaction stream: per epoch, one proposed block per shard,
/// plus the ground-truth accept label derived while generating. Labels and
/// proposals are independent of any scheme; rejected proposals leave balances
/// untouched, mirroring the zero-block append done by honest nodes.
struct Workload {
  WorkloadParams params;
  std::vector<Block> mint;                       // one per shard
  std::vector<std::vector<Block>> proposals;     // [epoch][shard]
  std::vector<std::vector<int>> labels;          // [epoch][shard], ground truth
};

template <class F>
Workload gen_workload(const F& f, const WorkloadParams& p) {
  if (p.shards == 0 || p.accounts == 0)
    throw std::invalid_argument("gen_workload: shards and accounts must be positive");
  if (p.invalid_rate < 0.0 || p.invalid_rate > 1.0)
    throw std::invalid_argument("gen_workload: invalid_rate must lie in [0,1]");
  Workload w;
  w.params = p;
  std::mt19937_64 rng(p.seed);
  // threshold comparison keeps the invalid draw integer-exact
  const std::uint64_t inv_threshold =
      p.invalid_rate >= 1.0 ? ~0ULL
                            : static_cast<std::uint64_t>(p.invalid_rate * 18446744073709551615.0);

  std::vector<std::vector<std::uint64_t>> bal(p.shards,
                                              std::vector<std::uint64_t>(p.accounts, p.mint_amount));
  for (std::size_t k = 0; k < p.shards; ++k) w.mint.push_back(mint_block(f, p.accounts, p.mint_amount));

  w.proposals.resize(p.epochs);
  w.labels.resize(p.epochs);
  for (std::size_t t = 0; t < p.epochs; ++t) {
    for (std::size_t k = 0; k < p.shards; ++k) {
      bool want_invalid = p.invalid_rate >= 1.0 || (p.invalid_rate > 0.0 && rng() <= inv_threshold);
      std::vector<Transaction> txs;
      if (want_invalid && p.accounts >= 2) {
        // one deliberate overspend; own-epoch receives cannot fund sends, so
        // balance + 1 is already unaffordable
        std::uint32_t a = static_cast<std::uint32_t>(detail::bounded(rng, p.accounts));
        std::uint32_t b = static_cast<std::uint32_t>(detail::bounded(rng, p.accounts - 1));
        if (b >= a) ++b;
        txs.push_back({a, b, bal[k][a] + 1 + detail::bounded(rng, 5)});
        w.labels[t].push_back(0);
        w.proposals[t].push_back(make_block(f, txs, p.accounts));
        continue;
      }
      std::size_t ntx = 1 + detail::bounded(rng, 4);
      std::vector<std::uint64_t> remaining = bal[k];
      std::vector<std::uint64_t> received(p.accounts, 0);
      for (std::size_t j = 0; j < ntx; ++j) {
        std::vector<std::uint32_t> funded;
        for (std::uint32_t a = 0; a < p.accounts; ++a)
          if (remaining[a] > 0) funded.push_back(a);
        if (funded.empty() || p.accounts < 2) break;
        std::uint32_t a = funded[detail::bounded(rng, funded.size())];
        std::uint32_t b = static_cast<std::uint32_t>(detail::bounded(rng, p.accounts - 1));
        if (b >= a) ++b;
        std::uint64_t amt = 1 + detail::bounded(rng, remaining[a]);
        txs.push_back({a, b, amt});
        remaining[a] -= amt;
        received[b] += amt;
      }
      for (std::size_t a = 0; a < p.accounts; ++a) bal[k][a] = remaining[a] + received[a];
      w.labels[t].push_back(1);
      w.proposals[t].push_back(make_block(f, txs, p.accounts));
    }
  }
  return w;
}

} // namespace polyshard
