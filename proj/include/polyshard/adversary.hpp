#pragma once

// Byzantine behavior: which nodes lie, and what they send instead. The
// corrupted set is fixed for a run (chosen after shard assignment is known);
// lies replace broadcast messages only, never a node's local storage.

#include <polyshard/field.hpp>
#include <polyshard/ledger.hpp>
#include <polyshard/schemes.hpp>

#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <random>
#include <stdexcept>
#include <vector>

namespace polyshard {

enum class AdversaryStrategy { RandomValues, TargetedShard, WorstCaseSearch };

struct AdversarySpec {
  Rational mu{0, 1};
  AdversaryStrategy strategy = AdversaryStrategy::RandomValues;
  std::size_t target_shard = 0;  // TargetedShard only
  std::uint64_t seed = 0;
};

// Scores a candidate corrupt set; higher is worse for the network. The
// caller decides what counts as damage (decode failures, silent divergence).
using DamageFn = std::function<std::size_t(const std::vector<std::size_t>&)>;

// Picks the floor(mu*n) node ids that will lie. Deterministic given its
// arguments: random selection draws from AdversarySpec.seed, targeted and
// worst-case ignore it. Worst-case enumerates every subset (n <= 20) and
// keeps the first maximizer of the damage callback in lexicographic order.
inline std::vector<std::size_t> select_corrupt(const AdversarySpec& spec, std::size_t n,
                                               std::size_t per_shard,
                                               const DamageFn& damage = {}) {
  const std::size_t m = corrupt_count(spec.mu, n);
  if (m == 0) return {};

  switch (spec.strategy) {
    case AdversaryStrategy::RandomValues: {
      std::mt19937_64 rng(spec.seed);
      std::vector<std::size_t> ids(n);
      std::iota(ids.begin(), ids.end(), 0);
      for (std::size_t i = 0; i < m; ++i)
        std::swap(ids[i], ids[i + detail::bounded(rng, n - i)]);
      ids.resize(m);
      std::sort(ids.begin(), ids.end());
      return ids;
    }
    case AdversaryStrategy::TargetedShard: {
      if (per_shard == 0 || (spec.target_shard + 1) * per_shard > n)
        throw std::invalid_argument("targeted shard does not exist in this network");
      std::vector<std::size_t> ids;
      const std::size_t lo = spec.target_shard * per_shard;
      for (std::size_t i = lo; i < lo + per_shard && ids.size() < m; ++i) ids.push_back(i);
      for (std::size_t i = 0; i < n && ids.size() < m; ++i)
        if (i < lo || i >= lo + per_shard) ids.push_back(i);
      std::sort(ids.begin(), ids.end());
      return ids;
    }
    case AdversaryStrategy::WorstCaseSearch: {
      if (n > 20)
        throw std::invalid_argument("worst-case search is exhaustive and needs n <= 20");
      if (!damage)
        throw std::invalid_argument("worst-case search needs a damage callback");
      std::vector<std::size_t> cur(m), best;
      std::iota(cur.begin(), cur.end(), 0);
      std::size_t best_score = 0;
      bool more = true;
      while (more) {
        const std::size_t score = damage(cur);
        if (best.empty() || score > best_score) {
          best = cur;
          best_score = score;
        }
        // advance to the next m-subset of [0, n)
        more = false;
        for (std::size_t i = m; i-- > 0;) {
          if (cur[i] + (m - i) < n) {
            ++cur[i];
            for (std::size_t j = i + 1; j < m; ++j) cur[j] = cur[j - 1] + 1;
            more = true;
            break;
          }
        }
      }
      return best;
    }
  }
  throw std::logic_error("unreachable");
}

// Replaces a message with fresh uniform field elements, redrawing until it
// differs from the original in at least one coordinate. Empty messages have
// nothing to corrupt and pass through.
template <FieldLike F>
std::vector<Fe> corrupt_message(const F& f, const std::vector<Fe>& msg, std::mt19937_64& rng) {
  if (msg.empty()) return {};
  std::vector<Fe> out(msg.size());
  do {
    for (Fe& v : out) v = f.from_u64(rng());
  } while (out == msg);
  return out;
}

}  // namespace polyshard
