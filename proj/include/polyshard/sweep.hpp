#pragma once

// Sweep driver: expands a sweep config into (scheme, K) cells, runs each cell
// for the requested seeds, writes one per-epoch CSV per run plus a summary
// table.  Cells whose parameters violate a scheme constraint are reported and
// skipped rather than aborting the sweep.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <ostream>
#include <string>
#include <vector>

#include "config.hpp"
#include "sim.hpp"

namespace polyshard {

struct SweepCell {
  SchemeKind scheme = SchemeKind::PolyShard;
  std::size_t n = 0;
  std::size_t k = 0;
  Rational mu;
  bool skipped = false;
  std::string status;  // "ok" or the violated constraint
  double lambda_final = 0.0;
  std::uint64_t gamma = 0;
  std::uint64_t beta = 0;
  std::size_t violations = 0;  // summed over seeds
  std::size_t seeds = 0;
};

struct SweepOutcome {
  std::vector<SweepCell> cells;
  std::vector<std::string> run_files;
  std::string summary_file;
};

namespace detail {

inline std::string sanitize_csv(std::string s) {
  for (char& c : s)
    if (c == ',' || c == '\n') c = ';';
  return s;
}

}  // namespace detail

// Runs one configured simulation and writes <out_dir>/<run_id>.csv.
inline RunResult run_to_csv(const ParsedConfig& pc, const RunConfig& cfg,
                            const std::string& out_dir, std::string* path_out = nullptr) {
  PrimeField f(pc.prime);
  RunResult res = run(f, cfg);
  std::filesystem::create_directories(out_dir);
  std::string path = (std::filesystem::path(out_dir) / (cfg.run_id + ".csv")).string();
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  write_csv(out, cfg, res.records);
  if (path_out) *path_out = path;
  return res;
}

inline SweepOutcome run_sweep(const ParsedConfig& pc, const std::string& out_dir,
                              std::ostream& log) {
  SweepOutcome outcome;
  std::vector<Rational> mus = pc.sweep_mu;
  if (mus.empty()) mus.push_back(pc.run.adversary.mu);
  for (SchemeKind scheme : pc.sweep_schemes)
    for (std::size_t k : pc.sweep_k)
      for (const Rational& mu : mus) {
        SweepCell cell;
        cell.scheme = scheme;
        cell.k = k;
        cell.n = pc.ratio * k;
        cell.mu = mu;
        cell.seeds = pc.seeds;

        RunConfig cfg = pc.run;
        cfg.scheme = scheme;
        cfg.k = k;
        cfg.n = cell.n;
        cfg.adversary.mu = mu;
        try {
          validate_config(cfg);
        } catch (const std::exception& ex) {
          cell.skipped = true;
          cell.status = ex.what();
          outcome.cells.push_back(cell);
          continue;
        }

        cell.status = "ok";
        std::string mu_tag = pc.sweep_mu.empty()
                                 ? std::string()
                                 : "-mu" + std::to_string(mu.num) + "-" + std::to_string(mu.den);
        for (std::size_t s = 0; s < pc.seeds; ++s) {
          cfg.workload_seed = pc.run.workload_seed + s;
          cfg.adversary.seed = pc.run.adversary.seed + s;
          cfg.run_id = std::string(scheme_name(scheme)) + "-k" + std::to_string(k) + mu_tag +
                       "-s" + std::to_string(s + 1);
          std::string path;
          RunResult res = run_to_csv(pc, cfg, out_dir, &path);
          outcome.run_files.push_back(path);
          cell.violations += res.total_violations;
          if (s == 0 && !res.records.empty()) {
            const MetricsRecord& last = res.records.back();
            cell.lambda_final = last.lambda;
            cell.gamma = last.gamma;
            cell.beta = last.beta;
          }
        }
        outcome.cells.push_back(cell);
      }

  std::filesystem::create_directories(out_dir);
  outcome.summary_file = (std::filesystem::path(out_dir) / "summary.csv").string();
  std::ofstream sum(outcome.summary_file, std::ios::binary);
  if (!sum) throw std::runtime_error("cannot write " + outcome.summary_file);
  sum << "scheme,n,k,mu,beta,gamma,lambda_final,violations,seeds,status\n";
  for (const SweepCell& c : outcome.cells) {
    sum << scheme_name(c.scheme) << ',' << c.n << ',' << c.k << ',' << c.mu.num << '/'
        << c.mu.den << ',';
    if (c.skipped) {
      sum << ",,,," << c.seeds << ',' << detail::sanitize_csv(c.status) << '\n';
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", c.lambda_final);
      sum << c.beta << ',' << c.gamma << ',' << buf << ',' << c.violations << ',' << c.seeds
          << ",ok\n";
    }
  }

  log << std::left << std::setw(20) << "scheme" << std::right << std::setw(6) << "n"
      << std::setw(5) << "k" << std::setw(9) << "mu" << std::setw(6) << "beta" << std::setw(7)
      << "gamma" << std::setw(14) << "lambda_final" << std::setw(12) << "violations"
      << "  status\n";
  for (const SweepCell& c : outcome.cells) {
    std::string mu_s = std::to_string(c.mu.num) + "/" + std::to_string(c.mu.den);
    log << std::left << std::setw(20) << scheme_name(c.scheme) << std::right << std::setw(6)
        << c.n << std::setw(5) << c.k << std::setw(9) << mu_s;
    if (c.skipped) {
      log << std::setw(6) << "-" << std::setw(7) << "-" << std::setw(14) << "-" << std::setw(12)
          << "-" << "  skipped: " << c.status << '\n';
    } else {
      char buf[32];
      std::snprintf(buf, sizeof buf, "%.6f", c.lambda_final);
      log << std::setw(6) << c.beta << std::setw(7) << c.gamma << std::setw(14) << buf
          << std::setw(12) << c.violations << "  ok\n";
    }
  }
  return outcome;
}

}  // namespace polyshard
