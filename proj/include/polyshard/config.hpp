#pragma once

// Key-value run configuration.
//
// Files hold one `key = value` pair per line; blank lines and lines starting
// with '#' are ignored.  Keys:
//
//   scheme          full-replication | uncoded-sharding | polyshard |
//                   iterative-polyshard
//   k               shard count (required for single runs)
//   n               node count (default ratio * k)
//   ratio           n/k used when n is absent (default 3)
//   mu              corrupt fraction, exact: "1/5", "0.2" or "0" (default 0)
//   circuit         path to a circuit file, relative to the config file
//   rule            non-negative | always | all-zero (default non-negative)
//   accounts        accounts per shard (default 200)
//   epochs          epochs to simulate (default 200)
//   invalid_rate    fraction of proposals made invalid (default 0)
//   mint            genesis balance per account (default 1000)
//   workload_seed   seed for workload generation (default 1)
//   adversary       random-values | targeted-shard | worst-case-search
//   target_shard    shard index for targeted-shard (default 0)
//   adversary_seed  seed for corrupt-set and lie sampling (default 0)
//   run_id          label used in CSV output (default "run")
//   allow_over_budget  accept configs whose corrupt set exceeds the decode
//                      budget (default false)
//   check_agreement    count cross-node disagreement as violations (default
//                      true)
//   prime           field modulus (default 2^61 - 1)
//
// Sweep keys; any of these makes the config a sweep:
//
//   sweep_k         comma list of shard counts
//   sweep_mu        comma list of corrupt fractions (default: the single mu)
//   sweep_schemes   comma list of scheme names (default the three single-shot
//                   schemes)
//   seeds           runs per cell, seeded workload_seed .. +seeds-1 (default 1)

#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "circuit.hpp"
#include "field.hpp"
#include "sim.hpp"

namespace polyshard {

struct ParsedConfig {
  RunConfig run;
  std::uint64_t prime = PrimeField::kDefaultPrime;
  std::shared_ptr<ArithmeticCircuit> circuit;  // keeps run.circuit alive

  bool is_sweep = false;
  std::vector<std::size_t> sweep_k;
  std::vector<Rational> sweep_mu;  // empty: use run.adversary.mu everywhere
  std::vector<SchemeKind> sweep_schemes;
  std::size_t seeds = 1;
  std::size_t ratio = 3;
};

namespace detail {

inline std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

inline bool all_of_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

inline std::uint64_t parse_u64(const std::string& key, const std::string& v) {
  if (!all_of_digits(v) || v.size() > 19)
    throw std::runtime_error("config: key '" + key + "' wants a non-negative integer, got '" + v +
                             "'");
  return std::stoull(v);
}

inline bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1") return true;
  if (v == "false" || v == "0") return false;
  throw std::runtime_error("config: key '" + key + "' wants true or false, got '" + v + "'");
}

// Accepts "a/b", decimal "0.2" (denominator a power of ten) or a bare integer.
inline Rational parse_rational(const std::string& key, const std::string& v) {
  auto slash = v.find('/');
  if (slash != std::string::npos) {
    std::string a = v.substr(0, slash), b = v.substr(slash + 1);
    if (!all_of_digits(a) || !all_of_digits(b))
      throw std::runtime_error("config: key '" + key + "' wants a fraction like 1/5, got '" + v +
                               "'");
    Rational r{std::stoull(a), std::stoull(b)};
    if (r.den == 0) throw std::runtime_error("config: key '" + key + "' has denominator zero");
    return r;
  }
  auto dot = v.find('.');
  if (dot != std::string::npos) {
    std::string i = v.substr(0, dot), f = v.substr(dot + 1);
    if (!all_of_digits(i) || !all_of_digits(f) || f.size() > 18)
      throw std::runtime_error("config: key '" + key + "' wants a decimal like 0.2, got '" + v +
                               "'");
    std::uint64_t den = 1;
    for (std::size_t j = 0; j < f.size(); ++j) den *= 10;
    return Rational{std::stoull(i) * den + std::stoull(f), den};
  }
  if (!all_of_digits(v))
    throw std::runtime_error("config: key '" + key + "' wants a rate like 1/5 or 0.2, got '" + v +
                             "'");
  return Rational{std::stoull(v), 1};
}

inline SchemeKind parse_scheme(const std::string& v) {
  if (v == "full-replication") return SchemeKind::FullReplication;
  if (v == "uncoded-sharding") return SchemeKind::UncodedSharding;
  if (v == "polyshard") return SchemeKind::PolyShard;
  if (v == "iterative-polyshard") return SchemeKind::IterativePolyShard;
  throw std::runtime_error("config: unknown scheme '" + v + "'");
}

inline AcceptRule parse_rule(const std::string& v) {
  if (v == "non-negative") return AcceptRule::NonNegative;
  if (v == "always") return AcceptRule::Always;
  if (v == "all-zero") return AcceptRule::AllZero;
  throw std::runtime_error("config: unknown rule '" + v + "'");
}

inline AdversaryStrategy parse_strategy(const std::string& v) {
  if (v == "random-values") return AdversaryStrategy::RandomValues;
  if (v == "targeted-shard") return AdversaryStrategy::TargetedShard;
  if (v == "worst-case-search") return AdversaryStrategy::WorstCaseSearch;
  throw std::runtime_error("config: unknown adversary '" + v + "'");
}

inline std::vector<std::string> split_commas(const std::string& v) {
  std::vector<std::string> out;
  std::string cur;
  std::istringstream in(v);
  while (std::getline(in, cur, ',')) out.push_back(trim(cur));
  return out;
}

}  // namespace detail

// Parses config text.  base_dir anchors relative circuit paths.
inline ParsedConfig parse_config_text(const std::string& text, const std::string& base_dir) {
  ParsedConfig pc;
  pc.sweep_schemes = {SchemeKind::FullReplication, SchemeKind::UncodedSharding,
                      SchemeKind::PolyShard};
  bool have_n = false, have_k = false;
  std::string circuit_path;

  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string s = detail::trim(line);
    if (s.empty() || s[0] == '#') continue;
    auto eq = s.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected `key = value`, got '" + s + "'");
    std::string key = detail::trim(s.substr(0, eq));
    std::string val = detail::trim(s.substr(eq + 1));
    if (key.empty() || val.empty())
      throw std::runtime_error("config line " + std::to_string(lineno) +
                               ": expected `key = value`, got '" + s + "'");

    if (key == "scheme") {
      pc.run.scheme = detail::parse_scheme(val);
    } else if (key == "k") {
      pc.run.k = detail::parse_u64(key, val);
      have_k = true;
    } else if (key == "n") {
      pc.run.n = detail::parse_u64(key, val);
      have_n = true;
    } else if (key == "ratio") {
      pc.ratio = detail::parse_u64(key, val);
      if (pc.ratio == 0) throw std::runtime_error("config: key 'ratio' must be positive");
    } else if (key == "mu") {
      Rational r = detail::parse_rational(key, val);
      if (r.num != 0 && 2 * static_cast<unsigned __int128>(r.num) >= r.den)
        throw std::runtime_error("config: key 'mu' must stay below one half, got '" + val + "'");
      pc.run.adversary.mu = r;
    } else if (key == "circuit") {
      circuit_path = val;
    } else if (key == "rule") {
      pc.run.rule = detail::parse_rule(val);
    } else if (key == "accounts") {
      pc.run.accounts = detail::parse_u64(key, val);
    } else if (key == "epochs") {
      pc.run.epochs = detail::parse_u64(key, val);
    } else if (key == "invalid_rate") {
      try {
        std::size_t used = 0;
        pc.run.invalid_rate = std::stod(val, &used);
        if (used != val.size()) throw std::invalid_argument(val);
      } catch (const std::exception&) {
        throw std::runtime_error("config: key 'invalid_rate' wants a number in [0,1], got '" + val +
                                 "'");
      }
      if (pc.run.invalid_rate < 0.0 || pc.run.invalid_rate > 1.0)
        throw std::runtime_error("config: key 'invalid_rate' wants a number in [0,1], got '" + val +
                                 "'");
    } else if (key == "mint") {
      pc.run.mint = detail::parse_u64(key, val);
    } else if (key == "workload_seed") {
      pc.run.workload_seed = detail::parse_u64(key, val);
    } else if (key == "adversary") {
      pc.run.adversary.strategy = detail::parse_strategy(val);
    } else if (key == "target_shard") {
      pc.run.adversary.target_shard = detail::parse_u64(key, val);
    } else if (key == "adversary_seed") {
      pc.run.adversary.seed = detail::parse_u64(key, val);
    } else if (key == "run_id") {
      pc.run.run_id = val;
    } else if (key == "allow_over_budget") {
      pc.run.allow_over_budget = detail::parse_bool(key, val);
    } else if (key == "check_agreement") {
      pc.run.check_agreement = detail::parse_bool(key, val);
    } else if (key == "prime") {
      pc.prime = detail::parse_u64(key, val);
      if (pc.prime < 3) throw std::runtime_error("config: key 'prime' must be an odd prime >= 3");
    } else if (key == "sweep_k") {
      for (const std::string& tok : detail::split_commas(val))
        pc.sweep_k.push_back(detail::parse_u64(key, tok));
      if (pc.sweep_k.empty()) throw std::runtime_error("config: key 'sweep_k' wants a list");
    } else if (key == "sweep_mu") {
      for (const std::string& tok : detail::split_commas(val)) {
        Rational r = detail::parse_rational(key, tok);
        if (r.num != 0 && 2 * static_cast<unsigned __int128>(r.num) >= r.den)
          throw std::runtime_error("config: key 'sweep_mu' must stay below one half, got '" + tok +
                                   "'");
        pc.sweep_mu.push_back(r);
      }
      if (pc.sweep_mu.empty()) throw std::runtime_error("config: key 'sweep_mu' wants a list");
    } else if (key == "sweep_schemes") {
      pc.sweep_schemes.clear();
      for (const std::string& tok : detail::split_commas(val))
        pc.sweep_schemes.push_back(detail::parse_scheme(tok));
    } else if (key == "seeds") {
      pc.seeds = detail::parse_u64(key, val);
      if (pc.seeds == 0) throw std::runtime_error("config: key 'seeds' must be positive");
    } else {
      throw std::runtime_error("config: unknown key '" + key + "'");
    }
  }

  if (!circuit_path.empty()) {
    std::filesystem::path p(circuit_path);
    if (p.is_relative()) p = std::filesystem::path(base_dir) / p;
    pc.circuit = std::make_shared<ArithmeticCircuit>(load_circuit(p.string()));
    pc.run.circuit = pc.circuit.get();
  }

  pc.is_sweep = !pc.sweep_k.empty() || !pc.sweep_mu.empty();
  if (pc.is_sweep) {
    if (pc.sweep_k.empty()) {
      if (!have_k) throw std::runtime_error("config: a sweep needs 'sweep_k' or a fixed 'k'");
      pc.sweep_k = {pc.run.k};
    }
    return pc;  // cells are validated when the sweep runs
  }

  if (!have_k) throw std::runtime_error("config: key 'k' is required for single runs");
  if (!have_n) pc.run.n = pc.ratio * pc.run.k;
  validate_config(pc.run);
  if (pc.run.rule == AcceptRule::NonNegative) {
    // Accept decisions read balances as signed residues, so honest balances
    // must stay well inside (-p/2, p/2).
    unsigned __int128 budget = static_cast<unsigned __int128>(pc.run.accounts) * pc.run.mint * 4;
    if (budget >= pc.prime)
      throw std::runtime_error(
          "config: accounts * mint is too large for the field's signed range");
  }
  return pc;
}

inline ParsedConfig parse_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config_text(buf.str(), std::filesystem::path(path).parent_path().string());
}

// The two reference scales.  "paper" is the large sweep the tables were
// produced at; "desk" finishes in seconds and shows the same shapes.
inline void apply_preset(ParsedConfig& pc, const std::string& name) {
  if (name == "paper") {
    pc.is_sweep = true;
    pc.sweep_k = {5, 10, 15, 20, 25, 30, 35, 40, 45, 50};
    pc.run.accounts = 2000;
    pc.run.epochs = 1000;
  } else if (name == "desk") {
    pc.is_sweep = true;
    pc.sweep_k = {5, 10, 20};
    pc.run.accounts = 200;
    pc.run.epochs = 200;
  } else {
    throw std::runtime_error("unknown preset '" + name + "' (expected paper or desk)");
  }
  pc.ratio = 3;
  pc.sweep_schemes = {SchemeKind::FullReplication, SchemeKind::UncodedSharding,
                      SchemeKind::PolyShard};
}

}  // namespace polyshard
