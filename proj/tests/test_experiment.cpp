#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include <json.hpp>

#include "aoi_lab/experiment.hpp"
#include "aoi_lab/io.hpp"

using namespace aoi_lab;

TEST_CASE("builtin settings reproduce the simulation table") {
  ExperimentConfig s1a = builtin_setting("1.a");
  REQUIRE(s1a.mu.size() == 5);
  std::vector<double> expected = {0.1, 0.15, 0.2, 0.25, 0.3};
  for (std::size_t i = 0; i < expected.size(); ++i) {
    CHECK(s1a.mu[i] == doctest::Approx(expected[i]).epsilon(1e-12));
  }
  CHECK(s1a.horizon == 10000);
  CHECK(s1a.replications == 1000);
  CHECK(s1a.setting_id == "1.a");

  ExperimentConfig s2a = builtin_setting("2.a");
  REQUIRE(s2a.mu.size() == 2);
  CHECK(s2a.mu[0] == doctest::Approx(0.05).epsilon(1e-12));
  CHECK(s2a.mu[1] == doctest::Approx(0.9).epsilon(1e-12));

  ExperimentConfig s2c = builtin_setting("2.c");
  REQUIRE(s2c.mu.size() == 6);
  for (std::size_t i = 0; i < 6; ++i) {
    CHECK(s2c.mu[i] == doctest::Approx(0.05 + 0.17 * static_cast<double>(i)).epsilon(1e-12));
  }
  CHECK(s2c.mu.back() == 0.9);  // endpoint pinned exactly

  for (const char* id : {"1.b", "1.c", "1.d", "1.e", "2.b", "2.d", "2.e"}) {
    ExperimentConfig config = builtin_setting(id);
    CHECK(config.setting_id == id);
    CHECK(config.instance().mu_min() > 0.0);
  }
  CHECK(builtin_setting("2.e").mu.size() == 10);

  CHECK_THROWS_WITH_AS(builtin_setting("9.z"), "unknown setting id '9.z'",
                       std::invalid_argument);
}

TEST_CASE("config validation") {
  ExperimentConfig config = builtin_setting("1.a");
  validate(config);
  config.policies = {"ucb", "made-up"};
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config = builtin_setting("1.a");
  config.policies.clear();
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config = builtin_setting("1.a");
  config.replications = 0;
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
  config = builtin_setting("1.a");
  config.record_times = {0};
  CHECK_THROWS_AS(validate(config), std::invalid_argument);
}

TEST_CASE("default record grid is sorted, unique, ends at the horizon") {
  auto times = default_record_times(10000);
  REQUIRE(!times.empty());
  CHECK(times.front() == 1);
  CHECK(times.back() == 10000);
  CHECK(times.size() <= 201);
  CHECK(times.size() > 150);
  for (std::size_t i = 1; i < times.size(); ++i) REQUIRE(times[i] > times[i - 1]);

  auto tiny = default_record_times(3);
  CHECK(tiny.back() == 3);
}

TEST_CASE("genie roster regret is exactly zero") {
  ExperimentConfig config = builtin_setting("1.a");
  config.horizon = 500;
  config.replications = 20;
  config.seed = 11;
  config.policies = {"genie"};
  auto curves = run_experiment(config);
  const RegretCurve& curve = curves.at("genie");
  for (double m : curve.mean_regret) CHECK(m == 0.0);
  for (double s : curve.stderr_regret) CHECK(s == 0.0);
}

TEST_CASE("single-channel instances have zero regret for every policy") {
  ExperimentConfig config;
  config.setting_id = "single";
  config.mu = {0.6};
  config.horizon = 400;
  config.replications = 10;
  config.seed = 3;
  config.policies = policy_registry();
  auto curves = run_experiment(config);
  for (const auto& [name, curve] : curves) {
    for (double m : curve.mean_regret) CHECK(m == 0.0);
  }
}

TEST_CASE("identical config and seed give identical curves; worker count is irrelevant") {
  ExperimentConfig config = builtin_setting("1.b");
  config.horizon = 800;
  config.replications = 16;
  config.seed = 29;
  config.policies = {"ucb", "aa-q-ts"};

  auto a = run_experiment(config);
  auto b = run_experiment(config);
  REQUIRE(a.size() == b.size());
  for (const auto& [name, curve] : a) {
    CHECK(curve.mean_regret == b.at(name).mean_regret);
    CHECK(curve.stderr_regret == b.at(name).stderr_regret);
    CHECK(curve.times == b.at(name).times);
  }

  setenv("AOI_LAB_THREADS", "1", 1);
  auto serial = run_experiment(config);
  unsetenv("AOI_LAB_THREADS");
  for (const auto& [name, curve] : a) {
    CHECK(curve.mean_regret == serial.at(name).mean_regret);
  }
}

TEST_CASE("coupled regret paths are monotone and nonnegative in the mean") {
  ExperimentConfig config = builtin_setting("1.c");
  config.horizon = 1500;
  config.replications = 30;
  config.seed = 41;
  config.policies = {"ucb", "ts", "uniform-random"};
  auto curves = run_experiment(config);
  for (const auto& [name, curve] : curves) {
    double prev = 0.0;
    for (double m : curve.mean_regret) {
      REQUIRE(m >= prev - 1e-9);
      prev = m;
    }
    for (double s : curve.stderr_regret) REQUIRE(s >= 0.0);
  }
}

TEST_CASE("doubling replications shrinks stderr by about sqrt(2)") {
  ExperimentConfig config = builtin_setting("1.c");
  config.horizon = 1000;
  config.seed = 7;
  config.policies = {"ucb"};

  config.replications = 200;
  double se1 = run_experiment(config).at("ucb").stderr_regret.back();
  config.replications = 400;
  double se2 = run_experiment(config).at("ucb").stderr_regret.back();
  CHECK(se1 / se2 == doctest::Approx(std::sqrt(2.0)).epsilon(0.20));
}

TEST_CASE("coupled and independent modes agree in expectation") {
  ExperimentConfig config = builtin_setting("1.c");
  config.horizon = 1000;
  config.replications = 400;
  config.seed = 13;
  config.policies = {"ucb"};

  auto coupled = run_experiment(config);
  config.coupling = CouplingMode::kIndependent;
  config.seed = 14;
  auto independent = run_experiment(config);

  double m1 = coupled.at("ucb").mean_regret.back();
  double s1 = coupled.at("ucb").stderr_regret.back();
  double m2 = independent.at("ucb").mean_regret.back();
  double s2 = independent.at("ucb").stderr_regret.back();
  double pooled = std::sqrt(s1 * s1 + s2 * s2);
  CHECK(std::abs(m1 - m2) <= 3.0 * pooled);
}

TEST_CASE("explicit record times are honored") {
  ExperimentConfig config = builtin_setting("2.a");
  config.horizon = 2000;
  config.replications = 5;
  config.seed = 2;
  config.policies = {"ts"};
  config.record_times = {1000, 2000, 500};
  auto curves = run_experiment(config);
  CHECK(curves.at("ts").times == std::vector<std::int64_t>{500, 1000, 2000});
}

TEST_CASE("final regret table covers every setting and policy") {
  std::vector<ExperimentConfig> configs;
  for (const char* id : {"1.a", "2.a"}) {
    ExperimentConfig config = builtin_setting(id);
    config.horizon = 300;
    config.replications = 8;
    config.seed = 5;
    configs.push_back(config);
  }
  std::vector<std::string> roster = {"genie", "ucb", "ts"};
  auto table = final_regret_table(configs, roster);
  REQUIRE(table.size() == 6);
  for (const auto& entry : table) {
    CHECK(std::isfinite(entry.mean_regret));
    CHECK(std::isfinite(entry.stderr_regret));
    CHECK(entry.replications == 8);
    if (entry.policy == "genie") CHECK(entry.mean_regret == 0.0);
  }
  CHECK(table[0].setting_id == "1.a");
  CHECK(table[3].setting_id == "2.a");
}

TEST_CASE("csv serialization is stable and matches the documented header") {
  ExperimentConfig config = builtin_setting("2.a");
  config.horizon = 50;
  config.replications = 4;
  config.seed = 1;
  config.policies = {"genie", "ucb"};
  config.record_times = {1, 50};
  auto curves = run_experiment(config);
  std::string csv = regret_curves_csv(curves);
  CHECK(csv.substr(0, csv.find('\n')) == "policy,t,mean_regret,stderr,replications");
  CHECK(csv.find("genie,1,0,0,4\n") != std::string::npos);
  CHECK(csv == regret_curves_csv(curves));

  std::vector<RegretTableEntry> entries = {{"1.a", "ucb", 12.5, 0.25, 100}};
  CHECK(regret_table_csv(entries) ==
        "setting,policy,mean_regret,stderr,replications\n1.a,ucb,12.5,0.25,100\n");
}

TEST_CASE("sha1 known vectors and the git blob frame") {
  CHECK(sha1_hex("") == "da39a3ee5e6b4b0d3255bfef95601890afd80709");
  CHECK(sha1_hex("abc") == "a9993e364706816aba3e25717850c26c9cd0d89d");
  CHECK(sha1_hex("The quick brown fox jumps over the lazy dog") ==
        "2fd4e1c67a2d28fced849ee1bb76e7391b93eb12");
  // git hash-object of an empty file
  CHECK(git_blob_sha1("") == "e69de29bb2d1d6434b8b29ae775ad8c2e48c5391");
  // echo 'hello' | git hash-object --stdin
  CHECK(git_blob_sha1("hello\n") == "ce013625030ba8dba906f756967f9e9ca394464a");
}

TEST_CASE("config json round trip") {
  ExperimentConfig config = builtin_setting("1.d");
  config.replications = 77;
  config.seed = 1234;
  config.coupling = CouplingMode::kIndependent;
  config.init_mode = InitAgeMode::kUnit;
  config.thr = 3;
  ExperimentConfig parsed = load_config_json(config_json(config));
  CHECK(parsed.setting_id == "1.d");
  CHECK(parsed.mu == config.mu);
  CHECK(parsed.replications == 77);
  CHECK(parsed.seed == 1234);
  CHECK(parsed.coupling == CouplingMode::kIndependent);
  CHECK(parsed.init_mode == InitAgeMode::kUnit);
  CHECK(parsed.thr == 3);
  CHECK(parsed.policies == config.policies);
}

TEST_CASE("config loading accepts setting bases, overrides, and raw instances") {
  ExperimentConfig from_setting = load_config_json(R"({"setting": "2.b", "seed": 9})");
  CHECK(from_setting.mu.size() == 4);
  CHECK(from_setting.seed == 9);

  ExperimentConfig raw = load_config_json(
      R"({"mu": [0.25, 0.75], "horizon": 123, "policies": ["ts"], "coupling": "independent",
          "out": "results"})");
  CHECK(raw.setting_id == "custom");
  CHECK(raw.horizon == 123);
  CHECK(raw.policies == std::vector<std::string>{"ts"});
  CHECK(raw.coupling == CouplingMode::kIndependent);
  CHECK(raw.out_dir == "results");

  CHECK_THROWS_AS(load_config_json("not json"), std::invalid_argument);
  CHECK_THROWS_AS(load_config_json("{}"), std::invalid_argument);
  CHECK_THROWS_AS(load_config_json(R"({"setting": "9.q"})"), std::invalid_argument);
  CHECK_THROWS_AS(load_config_json(R"({"mu": [0.5], "coupling": "sideways"})"),
                  std::invalid_argument);
}

TEST_CASE("manifest embeds config, bound report and output hashes") {
  ExperimentConfig config = builtin_setting("1.a");
  std::map<std::string, OutputFileInfo> outputs;
  outputs["1.a.csv"] = {git_blob_sha1("data\n"), 5};
  auto j = nlohmann::json::parse(manifest_json(config, outputs));
  CHECK(j.at("seed").get<std::uint64_t>() == 0);
  CHECK(j.at("config").at("setting_id") == "1.a");
  CHECK(j.at("bound_report").is_object());
  CHECK(j.at("outputs").at("1.a.csv").at("bytes").get<int>() == 5);
  CHECK(j.at("analytic_genie").at("expected_aoi").get<double>() ==
        doctest::Approx(1.0 / 0.3).epsilon(1e-12));
  CHECK(j.at("analytic_genie").at("expected_cumulative_aoi").get<double>() ==
        doctest::Approx(10000.0 / 0.3).epsilon(1e-12));

  // a gapless instance cannot evaluate the bounds; the manifest says why
  ExperimentConfig flat;
  flat.setting_id = "flat";
  flat.mu = {0.4, 0.4};
  flat.policies = {"ucb"};
  auto j2 = nlohmann::json::parse(manifest_json(flat, {}));
  CHECK(j2.at("bound_report").is_null());
  CHECK(j2.contains("bounds_error"));
}

TEST_CASE("write_file refuses to clobber without force") {
  std::string path = "test_experiment_overwrite.tmp";
  std::remove(path.c_str());
  write_file(path, "one", false);
  CHECK_THROWS_AS(write_file(path, "two", false), OverwriteRefused);
  CHECK(read_file(path) == "one");
  write_file(path, "two", true);
  CHECK(read_file(path) == "two");
  std::remove(path.c_str());
}
