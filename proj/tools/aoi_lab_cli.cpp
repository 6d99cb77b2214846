// aoi-lab: run AoI-bandit experiments, evaluate regret bounds, verify the
// schedule-exchange inequalities, and dump exact expected-AoI values.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aoi_lab/bounds.hpp"
#include "aoi_lab/exact_aoi.hpp"
#include "aoi_lab/experiment.hpp"
#include "aoi_lab/io.hpp"
#include "aoi_lab/rng.hpp"

namespace {

using namespace aoi_lab;

std::vector<std::string> split_list(const std::string& csv) {
  std::vector<std::string> items;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) items.push_back(item);
  }
  return items;
}

std::string sanitize_filename(const std::string& name) {
  std::string out = name;
  for (char& c : out) {
    bool ok = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') ||
              c == '.' || c == '-' || c == '_';
    if (!ok) c = '_';
  }
  return out.empty() ? std::string("experiment") : out;
}

struct Overrides {
  std::optional<std::int64_t> horizon;
  std::optional<int> reps;
  std::optional<std::uint64_t> seed;
  std::string policies;
  std::optional<std::int64_t> thr;
  std::string coupling;
  std::string init;
  std::string profile;

  void apply(ExperimentConfig& config) const {
    if (profile == "ci") config.replications = 100;
    if (profile == "full") config.replications = 1000;
    if (horizon) config.horizon = *horizon;
    if (reps) config.replications = *reps;
    if (seed) config.seed = *seed;
    if (!policies.empty()) config.policies = split_list(policies);
    if (thr) config.thr = *thr;
    if (coupling == "coupled") config.coupling = CouplingMode::kCoupled;
    if (coupling == "independent") config.coupling = CouplingMode::kIndependent;
    if (init == "geometric") config.init_mode = InitAgeMode::kGeometricGenie;
    if (init == "unit") config.init_mode = InitAgeMode::kUnit;
  }
};

void add_override_flags(CLI::App* cmd, Overrides& o) {
  cmd->add_option("--T", o.horizon, "Horizon (slots)")->check(CLI::PositiveNumber);
  cmd->add_option("--reps", o.reps, "Replications")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Master seed");
  cmd->add_option("--policies", o.policies, "Comma list of policy names");
  cmd->add_option("--thr", o.thr, "AA-Q explore-age threshold")->check(CLI::PositiveNumber);
  cmd->add_option("--coupling", o.coupling, "Service coupling")
      ->check(CLI::IsMember({"coupled", "independent"}));
  cmd->add_option("--init", o.init, "Initial-age mode")
      ->check(CLI::IsMember({"geometric", "unit"}));
  cmd->add_option("--profile", o.profile, "Replication preset: ci=100, full=1000")
      ->check(CLI::IsMember({"ci", "full"}));
}

ExperimentConfig resolve_config(const std::string& setting, const std::string& config_path,
                                const Overrides& overrides) {
  if (setting.empty() && config_path.empty()) {
    throw std::invalid_argument("pass either --setting or --config");
  }
  ExperimentConfig config =
      config_path.empty() ? builtin_setting(setting) : load_config_file(config_path);
  overrides.apply(config);
  return config;
}

void emit(const std::string& content, const std::string& out_path, bool force) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content, force);
    std::cerr << "wrote " << out_path << '\n';
  }
}

int cmd_run(const ExperimentConfig& config, const std::string& out_dir, bool force,
            bool full_dump) {
  ExperimentConfig effective = config;
  effective.full_dump = full_dump || config.full_dump;
  validate(effective);

  std::string dir = !out_dir.empty() ? out_dir
                    : !config.out_dir.empty() ? config.out_dir
                                              : std::string(".");
  std::filesystem::create_directories(dir);
  std::string base = sanitize_filename(effective.setting_id);
  std::string csv_path = dir + "/" + base + ".csv";
  std::string manifest_path = dir + "/" + base + ".manifest.json";
  // Check both targets up front so a refused manifest cannot strand a fresh CSV.
  if (!force) {
    if (std::filesystem::exists(csv_path)) throw OverwriteRefused(csv_path);
    if (std::filesystem::exists(manifest_path)) throw OverwriteRefused(manifest_path);
  }

  auto curves = run_experiment(effective);
  std::string csv = regret_curves_csv(curves);
  write_file(csv_path, csv, force);

  std::map<std::string, OutputFileInfo> outputs;
  outputs[base + ".csv"] = {git_blob_sha1(csv), csv.size()};
  write_file(manifest_path, manifest_json(effective, outputs), force);

  std::cerr << "wrote " << csv_path << '\n' << "wrote " << manifest_path << '\n';
  return 0;
}

int cmd_table(const std::vector<std::string>& settings, const Overrides& overrides,
              const std::string& out_path, bool force) {
  if (settings.empty()) throw std::invalid_argument("pass --settings with at least one id");
  std::vector<ExperimentConfig> configs;
  for (const auto& id : settings) {
    ExperimentConfig config = builtin_setting(id);
    overrides.apply(config);
    configs.push_back(std::move(config));
  }
  std::vector<std::string> roster =
      overrides.policies.empty() ? std::vector<std::string>{} : split_list(overrides.policies);
  auto table = final_regret_table(configs, roster);
  emit(regret_table_csv(table), out_path, force);
  return 0;
}

int cmd_bounds(const ExperimentConfig& config, const BoundParams& params,
               std::optional<double> counts, const std::string& out_path, bool force) {
  BoundReport report = eval_bounds(config.instance(), config.horizon, params, counts);
  emit(bound_report_json(report) + "\n", out_path, force);
  return 0;
}

int cmd_verify_lemmas(std::int64_t max_horizon, int max_channels, int trials,
                      std::uint64_t seed, const std::string& out_path, bool force) {
  if (max_channels < 2) throw std::invalid_argument("--max-K must be >= 2");
  if (max_horizon < 1) throw std::invalid_argument("--max-T must be >= 1");
  const double tol = 1e-9;
  RngStream rng(SplitMix64::mix(seed));
  std::int64_t worsen_bad = 0, cluster_bad = 0, cap_bad = 0;
  for (int trial = 0; trial < trials; ++trial) {
    int k = 2 + rng.uniform_below(max_channels - 1);
    std::vector<double> mu(k);
    for (double& m : mu) m = 0.05 + 0.9 * rng.uniform01();
    Instance instance(mu);
    FixedSchedule schedule;
    schedule.channels.resize(1 + rng.uniform_below(static_cast<int>(max_horizon)));
    for (int& c : schedule.channels) c = rng.uniform_below(k);
    schedule.pre_history = rng.uniform_below(k);

    double base = exact_cumulative_aoi(instance, schedule);
    FixedSchedule worsened = worsen_suboptimal(schedule, instance);
    double worse = exact_cumulative_aoi(instance, worsened);
    FixedSchedule clustered = cluster_worst_first(worsened, instance);
    double clustered_value = exact_cumulative_aoi(instance, clustered);
    double cap = cumulative_aoi_upper_bound(instance, schedule.horizon(),
                                            suboptimal_count(schedule, instance));
    if (base > worse + tol) ++worsen_bad;
    if (worse > clustered_value + tol) ++cluster_bad;
    if (base > cap + tol) ++cap_bad;
  }
  std::ostringstream out;
  out << "check,trials,violations\n";
  out << "exchange_worsen_suboptimal," << trials << ',' << worsen_bad << '\n';
  out << "exchange_cluster_worst_first," << trials << ',' << cluster_bad << '\n';
  out << "cumulative_aoi_cap," << trials << ',' << cap_bad << '\n';
  emit(out.str(), out_path, force);
  return (worsen_bad + cluster_bad + cap_bad) == 0 ? 0 : 2;
}

int cmd_oracle(const ExperimentConfig& config, const std::string& schedule_csv, int pre_1based,
               const std::string& transform, const std::string& out_path, bool force) {
  Instance instance = config.instance();
  FixedSchedule schedule;
  for (const auto& item : split_list(schedule_csv)) {
    std::size_t pos = 0;
    int channel = std::stoi(item, &pos);
    if (pos != item.size()) throw std::invalid_argument("bad schedule entry '" + item + "'");
    schedule.channels.push_back(channel - 1);  // CLI channels are 1-based
  }
  if (schedule.channels.empty()) throw std::invalid_argument("--schedule is empty");
  schedule.pre_history = pre_1based > 0 ? pre_1based - 1 : instance.k_star();

  if (transform == "worsen") {
    schedule = worsen_suboptimal(schedule, instance);
  } else if (transform == "cluster") {
    schedule = cluster_worst_first(schedule, instance);
  }

  std::ostringstream out;
  out << "t,channel,expected_aoi,cumulative_aoi\n";
  double cumulative = 0.0;
  for (std::int64_t t = 1; t <= schedule.horizon(); ++t) {
    double e = exact_expected_aoi(instance, schedule, t);
    cumulative += e;
    out << t << ',' << schedule.channels[t - 1] + 1 << ',' << format_double(e) << ','
        << format_double(cumulative) << '\n';
  }
  emit(out.str(), out_path, force);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AoI-bandit simulation lab"};
  app.require_subcommand(1);

  std::string setting, config_path, out, transform = "none", schedule_csv, settings_csv;
  bool force = false, full_dump = false;
  Overrides overrides;
  BoundParams params;
  std::optional<double> counts;
  int pre_1based = 0;
  std::int64_t max_horizon = 8;
  int max_channels = 4, trials = 500;
  std::uint64_t lemma_seed = 7;

  CLI::App* run = app.add_subcommand("run", "Run one experiment; writes CSV + manifest");
  run->add_option("--setting", setting, "Builtin setting id (1.a..1.e, 2.a..2.e)");
  run->add_option("--config", config_path, "JSON config file")->excludes("--setting");
  add_override_flags(run, overrides);
  run->add_option("--out", out, "Output directory (default: current directory)");
  run->add_flag("--force", force, "Overwrite existing outputs");
  run->add_flag("--full-dump", full_dump, "Record every slot instead of the log grid");

  CLI::App* table = app.add_subcommand("table", "Regret at the horizon per (setting, policy)");
  table->add_option("--settings", settings_csv, "Comma list of builtin setting ids")->required();
  add_override_flags(table, overrides);
  table->add_option("--out", out, "Output file (default: stdout)");
  table->add_flag("--force", force, "Overwrite existing outputs");

  CLI::App* bounds = app.add_subcommand("bounds", "Evaluate the regret bounds numerically");
  bounds->add_option("--setting", setting, "Builtin setting id");
  bounds->add_option("--config", config_path, "JSON config file")->excludes("--setting");
  bounds->add_option("--T", overrides.horizon, "Horizon")->check(CLI::PositiveNumber);
  bounds->add_option("--alpha", params.alpha, "Consistency exponent in (0,1)")
      ->default_val(0.5);
  bounds->add_option("--C", params.consistency_c, "Consistency constant C > 0")
      ->default_val(1.0);
  bounds->add_option("--t0", params.t0, "Q-policy crossover horizon")->default_val(1.0);
  bounds->add_option("--counts", counts, "Expected sub-optimal uses, for the counts-based cap");
  bounds->add_option("--out", out, "Output file (default: stdout)");
  bounds->add_flag("--force", force, "Overwrite existing outputs");

  CLI::App* verify = app.add_subcommand(
      "verify-lemmas", "Randomized check of the schedule-exchange inequalities");
  verify->add_option("--max-T", max_horizon, "Max schedule length")->default_val(8);
  verify->add_option("--max-K", max_channels, "Max channels")->default_val(4);
  verify->add_option("--trials", trials, "Random (instance, schedule) pairs")->default_val(500);
  verify->add_option("--seed", lemma_seed, "Seed")->default_val(7);
  verify->add_option("--out", out, "Output file (default: stdout)");
  verify->add_flag("--force", force, "Overwrite existing outputs");

  CLI::App* oracle = app.add_subcommand("oracle", "Exact expected AoI of a fixed schedule");
  oracle->add_option("--setting", setting, "Builtin setting id");
  oracle->add_option("--config", config_path, "JSON config file")->excludes("--setting");
  oracle->add_option("--schedule", schedule_csv, "Comma list of 1-based channels")->required();
  oracle->add_option("--pre", pre_1based, "1-based pre-history channel (default: best)");
  oracle->add_option("--transform", transform, "Schedule transform to apply first")
      ->check(CLI::IsMember({"none", "worsen", "cluster"}));
  oracle->add_option("--out", out, "Output file (default: stdout)");
  oracle->add_flag("--force", force, "Overwrite existing outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 1;
  }

  try {
    if (run->parsed()) {
      return cmd_run(resolve_config(setting, config_path, overrides), out, force, full_dump);
    }
    if (table->parsed()) {
      return cmd_table(split_list(settings_csv), overrides, out, force);
    }
    if (bounds->parsed()) {
      ExperimentConfig config = resolve_config(setting, config_path, overrides);
      return cmd_bounds(config, params, counts, out, force);
    }
    if (verify->parsed()) {
      return cmd_verify_lemmas(max_horizon, max_channels, trials, lemma_seed, out, force);
    }
    if (oracle->parsed()) {
      ExperimentConfig config = resolve_config(setting, config_path, overrides);
      return cmd_oracle(config, schedule_csv, pre_1based, transform, out, force);
    }
  } catch (const OverwriteRefused& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::out_of_range& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
