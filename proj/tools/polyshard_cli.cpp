// Command-line front end: single runs, parameter sweeps and the release
// checklist.  Exit codes: 0 success, 1 failure, 2 usage error.

#include <polyshard/acceptance.hpp>
#include <polyshard/config.hpp>
#include <polyshard/sweep.hpp>

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

namespace {

int usage(std::ostream& out) {
  out << "usage: polyshard_cli <command> [options]\n"
         "\n"
         "commands:\n"
         "  run <config>      simulate one configuration, write <run_id>.csv\n"
         "  sweep [<config>]  run a (scheme, K) grid, write per-run CSVs and\n"
         "                    summary.csv; needs a sweep config or --preset\n"
         "  accept            run the release checklist\n"
         "\n"
         "options:\n"
         "  --preset paper|desk  use a built-in sweep scale\n"
         "  --seed <s>           override workload and adversary seeds\n"
         "  --out-dir <dir>      output directory (default .)\n";
  return 2;
}

struct Options {
  std::string command;
  std::string config_path;
  std::string preset;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
};

bool parse_args(int argc, char** argv, Options& opt, std::string& err) {
  std::vector<std::string> args(argv + 1, argv + argc);
  std::size_t i = 0;
  if (i < args.size() && args[i][0] != '-') opt.command = args[i++];
  while (i < args.size()) {
    const std::string& a = args[i];
    auto need_value = [&](const char* flag) -> const std::string* {
      if (i + 1 >= args.size()) {
        err = std::string(flag) + " needs a value";
        return nullptr;
      }
      return &args[++i];
    };
    if (a == "--preset") {
      const std::string* v = need_value("--preset");
      if (!v) return false;
      opt.preset = *v;
    } else if (a == "--seed") {
      const std::string* v = need_value("--seed");
      if (!v) return false;
      try {
        opt.seed = std::stoull(*v);
      } catch (const std::exception&) {
        err = "--seed wants a non-negative integer, got '" + *v + "'";
        return false;
      }
    } else if (a == "--out-dir") {
      const std::string* v = need_value("--out-dir");
      if (!v) return false;
      opt.out_dir = *v;
    } else if (a == "--help" || a == "-h") {
      opt.command = "help";
    } else if (a[0] != '-' && opt.config_path.empty()) {
      opt.config_path = a;
    } else {
      err = "unknown argument '" + a + "'";
      return false;
    }
    ++i;
  }
  return true;
}

int cmd_run(const Options& opt) {
  if (opt.config_path.empty()) {
    std::cerr << "run: a config file is required\n";
    return 2;
  }
  polyshard::ParsedConfig pc = polyshard::parse_config(opt.config_path);
  if (pc.is_sweep) {
    std::cerr << "run: '" << opt.config_path << "' is a sweep config; use the sweep command\n";
    return 2;
  }
  if (opt.seed) {
    pc.run.workload_seed = *opt.seed;
    pc.run.adversary.seed = *opt.seed;
  }
  std::string path;
  polyshard::RunResult res = polyshard::run_to_csv(pc, pc.run, opt.out_dir, &path);
  std::cout << "run " << pc.run.run_id << ": scheme=" << polyshard::scheme_name(pc.run.scheme)
            << " n=" << pc.run.n << " k=" << pc.run.k << " epochs=" << pc.run.epochs << "\n";
  std::cout << "  wrote " << path << "\n";
  if (res.records.empty()) {
    std::cout << "  no epochs simulated\n";
  } else {
    const polyshard::MetricsRecord& last = res.records.back();
    char buf[160];
    std::snprintf(buf, sizeof buf,
                  "  final: lambda=%.6f gamma=%zu beta=%zu violations=%zu", last.lambda,
                  last.gamma, last.beta, res.total_violations);
    std::cout << buf << "\n";
  }
  return 0;
}

int cmd_sweep(const Options& opt) {
  polyshard::ParsedConfig pc;
  if (!opt.config_path.empty()) pc = polyshard::parse_config(opt.config_path);
  if (!opt.preset.empty()) polyshard::apply_preset(pc, opt.preset);
  if (!pc.is_sweep) {
    std::cerr << "sweep: needs a sweep config (sweep_k = ...) or --preset paper|desk\n";
    return 2;
  }
  if (opt.seed) {
    pc.run.workload_seed = *opt.seed;
    pc.run.adversary.seed = *opt.seed;
  }
  polyshard::SweepOutcome out = polyshard::run_sweep(pc, opt.out_dir, std::cout);
  std::cout << "wrote " << out.run_files.size() << " run files and " << out.summary_file << "\n";
  return 0;
}

int cmd_accept() {
  std::vector<polyshard::CriterionResult> results = polyshard::run_acceptance(std::cout);
  for (const polyshard::CriterionResult& r : results)
    if (!r.pass) return 1;
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options opt;
  std::string err;
  if (!parse_args(argc, argv, opt, err)) {
    std::cerr << err << "\n";
    return usage(std::cerr);
  }
  if (opt.command.empty() || opt.command == "help") return usage(std::cout);
  try {
    if (opt.command == "run") return cmd_run(opt);
    if (opt.command == "sweep") return cmd_sweep(opt);
    if (opt.command == "accept") return cmd_accept();
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  std::cerr << "unknown command '" << opt.command << "'\n";
  return usage(std::cerr);
}
