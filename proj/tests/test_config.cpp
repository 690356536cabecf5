#include <catch2/catch_amalgamated.hpp>

#include <polyshard/config.hpp>
#include <polyshard/schemes.hpp>
#include <polyshard/sweep.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

using namespace polyshard;

TEST_CASE("a minimal config fills the documented defaults") {
  ParsedConfig pc = parse_config_text("scheme = polyshard\nk = 5\n", ".");
  CHECK(pc.run.scheme == SchemeKind::PolyShard);
  CHECK(pc.run.k == 5);
  CHECK(pc.run.n == 15);  // ratio 3
  CHECK(pc.run.accounts == 200);
  CHECK(pc.run.epochs == 200);
  CHECK(pc.run.mint == 1000);
  CHECK(pc.run.invalid_rate == 0.0);
  CHECK(pc.run.adversary.mu.num == 0);
  CHECK(pc.run.rule == AcceptRule::NonNegative);
  CHECK(pc.prime == PrimeField::kDefaultPrime);
  CHECK(pc.run.circuit == nullptr);
  CHECK_FALSE(pc.is_sweep);
}

TEST_CASE("explicit values win over derived ones") {
  ParsedConfig pc = parse_config_text(
      "scheme = uncoded-sharding\n"
      "k = 4\n"
      "n = 20\n"
      "accounts = 7\n"
      "epochs = 9\n"
      "mint = 55\n"
      "workload_seed = 3\n"
      "run_id = demo\n"
      "# trailing comment lines are ignored\n",
      ".");
  CHECK(pc.run.scheme == SchemeKind::UncodedSharding);
  CHECK(pc.run.n == 20);
  CHECK(pc.run.accounts == 7);
  CHECK(pc.run.epochs == 9);
  CHECK(pc.run.mint == 55);
  CHECK(pc.run.workload_seed == 3);
  CHECK(pc.run.run_id == "demo");
}

TEST_CASE("corruption rates parse as exact fractions") {
  SECTION("slash form") {
    ParsedConfig pc = parse_config_text("scheme = polyshard\nk = 3\nn = 21\nmu = 2/7\n", ".");
    CHECK(pc.run.adversary.mu.num == 2);
    CHECK(pc.run.adversary.mu.den == 7);
  }
  SECTION("decimal form keeps its digits") {
    ParsedConfig pc = parse_config_text("scheme = polyshard\nk = 5\nn = 25\nmu = 0.2\n", ".");
    CHECK(pc.run.adversary.mu.num == 2);
    CHECK(pc.run.adversary.mu.den == 10);
  }
  SECTION("integer zero") {
    ParsedConfig pc = parse_config_text("scheme = polyshard\nk = 5\nmu = 0\n", ".");
    CHECK(pc.run.adversary.mu.num == 0);
    CHECK(pc.run.adversary.mu.den == 1);
  }
  SECTION("rates at or past one half are rejected by name") {
    CHECK_THROWS_WITH(parse_config_text("scheme = polyshard\nk = 5\nmu = 0.6\n", "."),
                      Catch::Matchers::ContainsSubstring("mu"));
    CHECK_THROWS_WITH(parse_config_text("scheme = polyshard\nk = 5\nmu = 1/2\n", "."),
                      Catch::Matchers::ContainsSubstring("one half"));
  }
  SECTION("garbage is rejected") {
    CHECK_THROWS_AS(parse_config_text("scheme = polyshard\nk = 5\nmu = fast\n", "."),
                    std::runtime_error);
  }
}

TEST_CASE("unknown keys and malformed lines are diagnosed") {
  CHECK_THROWS_WITH(parse_config_text("scheme = polyshard\nk = 5\nspeed = 9\n", "."),
                    Catch::Matchers::ContainsSubstring("speed"));
  CHECK_THROWS_WITH(parse_config_text("scheme = polyshard\nk 5\n", "."),
                    Catch::Matchers::ContainsSubstring("key = value"));
  CHECK_THROWS_WITH(parse_config_text("scheme = hypershard\nk = 5\n", "."),
                    Catch::Matchers::ContainsSubstring("hypershard"));
}

TEST_CASE("scheme rule and strategy names round trip") {
  ParsedConfig pc = parse_config_text(
      "scheme = full-replication\n"
      "k = 2\n"
      "n = 6\n"
      "rule = always\n"
      "adversary = targeted-shard\n"
      "target_shard = 1\n"
      "adversary_seed = 9\n"
      "mu = 1/3\n"
      "check_agreement = false\n"
      "allow_over_budget = true\n",
      ".");
  CHECK(pc.run.scheme == SchemeKind::FullReplication);
  CHECK(pc.run.rule == AcceptRule::Always);
  CHECK(pc.run.adversary.strategy == AdversaryStrategy::TargetedShard);
  CHECK(pc.run.adversary.target_shard == 1);
  CHECK(pc.run.adversary.seed == 9);
  CHECK_FALSE(pc.run.check_agreement);
  CHECK(pc.run.allow_over_budget);
}

TEST_CASE("structural constraints are checked at parse time") {
  SECTION("sharding divisibility") {
    CHECK_THROWS_WITH(parse_config_text("scheme = uncoded-sharding\nk = 4\nn = 10\n", "."),
                      Catch::Matchers::ContainsSubstring("divide"));
  }
  SECTION("coded capacity") {
    CHECK_THROWS_WITH(parse_config_text("scheme = polyshard\nk = 3\nn = 9\nmu = 4/9\n", "."),
                      Catch::Matchers::ContainsSubstring("capacity"));
  }
  SECTION("balances must fit the signed range") {
    CHECK_THROWS_WITH(
        parse_config_text("scheme = polyshard\nk = 2\nn = 6\nprime = 97\naccounts = 3\n", "."),
        Catch::Matchers::ContainsSubstring("signed range"));
  }
}

TEST_CASE("circuit files load relative to the config") {
  const std::string dir = "config_test_tmp";
  std::remove((dir + "/pair.circuit").c_str());
  std::remove(dir.c_str());
  REQUIRE(std::system(("mkdir -p " + dir).c_str()) == 0);
  {
    std::ofstream out(dir + "/pair.circuit");
    out << "layer 1 add a1 x1\nlayer 1 add a2 x2\nlayer 1 mul m1 a1 a2\n";
  }
  ParsedConfig pc = parse_config_text(
      "scheme = polyshard\nk = 2\nn = 7\ncircuit = pair.circuit\nrule = always\n", dir);
  REQUIRE(pc.run.circuit != nullptr);
  CHECK(pc.run.circuit->inputs == 2);
  CHECK(circuit_degree(*pc.run.circuit) == 2);

  SECTION("missing files are named") {
    CHECK_THROWS_WITH(
        parse_config_text("scheme = polyshard\nk = 2\nn = 7\ncircuit = absent.circuit\n", dir),
        Catch::Matchers::ContainsSubstring("absent.circuit"));
  }
  std::remove((dir + "/pair.circuit").c_str());
  std::remove(dir.c_str());
}

TEST_CASE("sweep configs expand to cells") {
  ParsedConfig pc = parse_config_text(
      "sweep_k = 2,3,5\n"
      "sweep_schemes = full-replication,polyshard\n"
      "seeds = 4\n"
      "ratio = 3\n"
      "accounts = 8\n"
      "epochs = 6\n",
      ".");
  CHECK(pc.is_sweep);
  CHECK(pc.sweep_k == std::vector<std::size_t>{2, 3, 5});
  REQUIRE(pc.sweep_schemes.size() == 2);
  CHECK(pc.sweep_schemes[0] == SchemeKind::FullReplication);
  CHECK(pc.sweep_schemes[1] == SchemeKind::PolyShard);
  CHECK(pc.seeds == 4);
  CHECK(pc.ratio == 3);

  SECTION("a rate list also makes a sweep, over the fixed k") {
    ParsedConfig mus = parse_config_text("k = 5\nsweep_mu = 0, 1/5, 1/3\n", ".");
    CHECK(mus.is_sweep);
    CHECK(mus.sweep_k == std::vector<std::size_t>{5});
    REQUIRE(mus.sweep_mu.size() == 3);
    CHECK(mus.sweep_mu[1].num == 1);
    CHECK(mus.sweep_mu[1].den == 5);
    CHECK_THROWS_WITH(parse_config_text("k = 5\nsweep_mu = 1/2\n", "."),
                      Catch::Matchers::ContainsSubstring("one half"));
    CHECK_THROWS_WITH(parse_config_text("sweep_mu = 1/5\n", "."),
                      Catch::Matchers::ContainsSubstring("sweep"));
  }
}

TEST_CASE("sweeps write per-run files and a summary") {
  const std::string dir = "sweep_run_tmp";
  std::filesystem::remove_all(dir);
  ParsedConfig pc = parse_config_text(
      "sweep_k = 2\n"
      "sweep_mu = 0, 1/3\n"
      "sweep_schemes = polyshard\n"
      "seeds = 2\n"
      "accounts = 3\n"
      "epochs = 4\n",
      ".");
  std::ostringstream log;
  SweepOutcome out = run_sweep(pc, dir, log);
  REQUIRE(out.cells.size() == 2);
  CHECK(out.run_files.size() == 4);
  CHECK(std::filesystem::exists(dir + "/polyshard-k2-mu0-1-s1.csv"));
  CHECK(std::filesystem::exists(dir + "/polyshard-k2-mu1-3-s2.csv"));
  std::ifstream sum(out.summary_file);
  std::string header, row1, row2;
  std::getline(sum, header);
  std::getline(sum, row1);
  std::getline(sum, row2);
  CHECK(header == "scheme,n,k,mu,beta,gamma,lambda_final,violations,seeds,status");
  CHECK(row1.substr(0, 19) == "polyshard,6,2,0/1,2");
  CHECK(row2.substr(0, 19) == "polyshard,6,2,1/3,2");
  std::filesystem::remove_all(dir);

  SECTION("an empty sweep still writes the summary header") {
    std::filesystem::remove_all("sweep_empty_tmp");
    ParsedConfig empty;
    empty.sweep_schemes.clear();
    std::ostringstream quiet;
    SweepOutcome none = run_sweep(empty, "sweep_empty_tmp", quiet);
    CHECK(none.cells.empty());
    CHECK(none.run_files.empty());
    std::ifstream s(none.summary_file);
    std::string line, rest;
    std::getline(s, line);
    CHECK(line == "scheme,n,k,mu,beta,gamma,lambda_final,violations,seeds,status");
    CHECK_FALSE(std::getline(s, rest));
    std::filesystem::remove_all("sweep_empty_tmp");
  }

  SECTION("cells that fail validation are reported, not fatal") {
    // the layered scheme without a circuit cannot run; its cell must be
    // skipped with the constraint named while the sweep completes
    ParsedConfig bad = parse_config_text(
        "sweep_k = 3\nsweep_schemes = iterative-polyshard\nratio = 3\nepochs = 2\naccounts = 2\n",
        ".");
    std::filesystem::remove_all("sweep_skip_tmp");
    std::ostringstream quiet;
    SweepOutcome out2 = run_sweep(bad, "sweep_skip_tmp", quiet);
    REQUIRE(out2.cells.size() == 1);
    CHECK(out2.cells[0].skipped);
    CHECK(out2.cells[0].status.find("circuit") != std::string::npos);
    CHECK(out2.run_files.empty());
    std::filesystem::remove_all("sweep_skip_tmp");
  }
}

TEST_CASE("presets pin the two reference scales") {
  SECTION("paper scale") {
    ParsedConfig pc;
    apply_preset(pc, "paper");
    CHECK(pc.is_sweep);
    CHECK(pc.sweep_k == std::vector<std::size_t>{5, 10, 15, 20, 25, 30, 35, 40, 45, 50});
    CHECK(pc.run.accounts == 2000);
    CHECK(pc.run.epochs == 1000);
    CHECK(pc.sweep_schemes.size() == 3);
  }
  SECTION("desk scale") {
    ParsedConfig pc;
    apply_preset(pc, "desk");
    CHECK(pc.sweep_k == std::vector<std::size_t>{5, 10, 20});
    CHECK(pc.run.accounts == 200);
    CHECK(pc.run.epochs == 200);
  }
  SECTION("unknown preset") {
    ParsedConfig pc;
    CHECK_THROWS_WITH(apply_preset(pc, "galaxy"), Catch::Matchers::ContainsSubstring("galaxy"));
  }
}

TEST_CASE("config files load from disk") {
  const std::string path = "config_roundtrip_tmp.cfg";
  {
    std::ofstream out(path);
    out << "scheme = polyshard\nk = 2\nn = 6\nrun_id = fromfile\n";
  }
  ParsedConfig pc = parse_config(path);
  CHECK(pc.run.run_id == "fromfile");
  std::remove(path.c_str());
  CHECK_THROWS_WITH(parse_config("no_such_file.cfg"),
                    Catch::Matchers::ContainsSubstring("no_such_file.cfg"));
}
