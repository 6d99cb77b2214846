#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "aoi_lab/environment.hpp"
#include "aoi_lab/instance.hpp"

namespace aoi_lab {

struct ExperimentConfig {
  std::string setting_id;
  std::vector<double> mu;
  std::int64_t horizon = 10000;
  int replications = 1000;
  std::uint64_t seed = 0;
  std::vector<std::string> policies;
  CouplingMode coupling = CouplingMode::kCoupled;
  InitAgeMode init_mode = InitAgeMode::kGeometricGenie;
  std::int64_t thr = 2;
  std::vector<std::int64_t> record_times;  // empty: default log-spaced grid
  bool full_dump = false;                  // record every slot
  std::string out_dir;                     // consumed by the CLI; empty: cwd

  Instance instance() const { return Instance(mu); }
};

// Throws std::invalid_argument on empty roster, unknown policy names, or
// out-of-range horizon / replication counts.
void validate(const ExperimentConfig& config);

// The ten builtin settings: "1.a".."1.e" hold K=5 with ranges [0.1,0.3] ..
// [0.1,0.7]; "2.a".."2.e" hold the range [0.05,0.9] with K = 2,4,6,8,10.
// Probabilities are equally spaced, both endpoints included; defaults are
// T=10000, R=1000, the eight bandit policies plus the genie.
ExperimentConfig builtin_setting(std::string_view id);

// 200 log-spaced slots plus the horizon itself, deduplicated, ascending.
std::vector<std::int64_t> default_record_times(std::int64_t horizon);

struct RegretCurve {
  std::string policy;
  std::vector<std::int64_t> times;
  std::vector<double> mean_regret;
  std::vector<double> stderr_regret;
  int replications = 0;
};

// Monte-Carlo estimate of each roster policy's AoI regret curve. All policies
// of a replication share one environment stream (and hence identical channel
// service and initial age) and are differenced path-wise against the coupled
// genie. Deterministic in (config, seed) regardless of worker count.
std::map<std::string, RegretCurve> run_experiment(const ExperimentConfig& config);

struct RegretTableEntry {
  std::string setting_id;
  std::string policy;
  double mean_regret = 0.0;
  double stderr_regret = 0.0;
  int replications = 0;
};

// Regret at the horizon for every (setting, policy) pair.
std::vector<RegretTableEntry> final_regret_table(const std::vector<ExperimentConfig>& configs,
                                                 const std::vector<std::string>& policies);

// Worker threads for replication-level parallelism; capped by the
// AOI_LAB_THREADS environment variable when set.
int worker_count();

}  // namespace aoi_lab
