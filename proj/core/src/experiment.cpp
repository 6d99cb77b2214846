#include "aoi_lab/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "aoi_lab/policies.hpp"

namespace aoi_lab {

void validate(const ExperimentConfig& config) {
  Instance instance(config.mu);  // throws on bad probabilities
  (void)instance;
  if (config.horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (config.replications < 1) throw std::invalid_argument("replications must be >= 1");
  if (config.policies.empty()) throw std::invalid_argument("policy roster is empty");
  for (const auto& name : config.policies) {
    if (!is_registered_policy(name)) {
      throw std::invalid_argument("unknown policy '" + name + "'");
    }
  }
  if (config.thr < 1) throw std::invalid_argument("thr must be >= 1");
  for (std::int64_t t : config.record_times) {
    if (t < 1 || t > config.horizon) {
      throw std::invalid_argument("record time outside 1..horizon");
    }
  }
}

ExperimentConfig builtin_setting(std::string_view id) {
  struct SettingSpec {
    const char* id;
    double lo, hi;
    int arms;
  };
  static const SettingSpec table[] = {
      {"1.a", 0.1, 0.3, 5},  {"1.b", 0.1, 0.4, 5},  {"1.c", 0.1, 0.5, 5},
      {"1.d", 0.1, 0.6, 5},  {"1.e", 0.1, 0.7, 5},  {"2.a", 0.05, 0.9, 2},
      {"2.b", 0.05, 0.9, 4}, {"2.c", 0.05, 0.9, 6}, {"2.d", 0.05, 0.9, 8},
      {"2.e", 0.05, 0.9, 10},
  };
  for (const auto& s : table) {
    if (id != s.id) continue;
    ExperimentConfig config;
    config.setting_id = s.id;
    config.mu.resize(s.arms);
    double spacing = (s.hi - s.lo) / static_cast<double>(s.arms - 1);
    for (int i = 0; i < s.arms; ++i) {
      config.mu[i] = i == s.arms - 1 ? s.hi : s.lo + spacing * static_cast<double>(i);
    }
    config.policies = {"ucb",   "ts",       "q-ucb",   "q-ts", "aa-ucb",
                       "aa-ts", "aa-q-ucb", "aa-q-ts", "genie"};
    return config;
  }
  throw std::invalid_argument("unknown setting id '" + std::string(id) + "'");
}

std::vector<std::int64_t> default_record_times(std::int64_t horizon) {
  std::vector<std::int64_t> times;
  const int points = 200;
  double log_h = std::log(static_cast<double>(horizon));
  for (int i = 0; i < points; ++i) {
    double x = std::exp(log_h * static_cast<double>(i) / static_cast<double>(points - 1));
    std::int64_t t = std::clamp<std::int64_t>(static_cast<std::int64_t>(std::llround(x)), 1,
                                              horizon);
    times.push_back(t);
  }
  times.push_back(horizon);
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());
  return times;
}

int worker_count() {
  unsigned hw = std::thread::hardware_concurrency();
  int workers = hw == 0 ? 1 : static_cast<int>(hw);
  if (const char* env = std::getenv("AOI_LAB_THREADS")) {
    char* end = nullptr;
    long cap = std::strtol(env, &end, 10);
    if (end != env && cap >= 1) workers = std::min<long>(workers, cap);
  }
  return workers;
}

namespace {

// Runs fn(0..count-1) across the worker pool; completion order is free but
// each index writes only its own slice, so results are order-independent.
// The first exception wins and is rethrown after the pool drains.
template <typename Fn>
void parallel_for(int count, const Fn& fn) {
  int workers = std::min(worker_count(), count);
  if (workers <= 1) {
    for (int i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<int> next{0};
  std::atomic<bool> failed{false};
  std::exception_ptr error;
  std::mutex error_mutex;
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      try {
        for (int i = next.fetch_add(1); i < count && !failed.load(); i = next.fetch_add(1)) {
          fn(i);
        }
      } catch (...) {
        std::scoped_lock lock(error_mutex);
        if (!error) error = std::current_exception();
        failed.store(true);
      }
    });
  }
  for (auto& th : pool) th.join();
  if (error) std::rethrow_exception(error);
}

}  // namespace

std::map<std::string, RegretCurve> run_experiment(const ExperimentConfig& config) {
  validate(config);
  Instance instance = config.instance();

  std::vector<std::int64_t> times;
  if (config.full_dump) {
    times.resize(config.horizon);
    for (std::int64_t t = 1; t <= config.horizon; ++t) times[t - 1] = t;
  } else if (config.record_times.empty()) {
    times = default_record_times(config.horizon);
  } else {
    times = config.record_times;
    std::sort(times.begin(), times.end());
    times.erase(std::unique(times.begin(), times.end()), times.end());
  }

  const int reps = config.replications;
  const std::size_t points = times.size();
  const std::size_t lanes = config.policies.size();

  PolicyOptions options;
  options.thr = config.thr;

  // samples[lane][rep * points + p]; filled in parallel, reduced in rep order.
  std::vector<std::vector<double>> samples(lanes, std::vector<double>(reps * points, 0.0));

  parallel_for(reps, [&](int rep) {
    RngStream env = RngStream::derive(config.seed, static_cast<std::uint64_t>(rep), 0);
    std::vector<std::int64_t> genie =
        run_genie(instance, config.horizon, env, config.coupling, config.init_mode);
    for (std::size_t lane = 0; lane < lanes; ++lane) {
      const std::string& name = config.policies[lane];
      RngStream policy_rng = RngStream::derive(
          config.seed, static_cast<std::uint64_t>(rep),
          static_cast<std::uint64_t>(policy_lane(name)));
      auto policy = make_policy(name, instance, options);
      RngStream env_replay = RngStream::derive(config.seed, static_cast<std::uint64_t>(rep), 0);
      Trajectory traj = run_policy(instance, *policy, config.horizon, env_replay, policy_rng,
                                   config.coupling, config.init_mode, genie);
      for (std::size_t p = 0; p < points; ++p) {
        samples[lane][static_cast<std::size_t>(rep) * points + p] =
            traj.cum_regret[times[p] - 1];
      }
    }
  });

  std::map<std::string, RegretCurve> curves;
  for (std::size_t lane = 0; lane < lanes; ++lane) {
    RegretCurve curve;
    curve.policy = config.policies[lane];
    curve.times = times;
    curve.mean_regret.resize(points);
    curve.stderr_regret.resize(points);
    curve.replications = reps;
    for (std::size_t p = 0; p < points; ++p) {
      double sum = 0.0;
      for (int rep = 0; rep < reps; ++rep) {
        sum += samples[lane][static_cast<std::size_t>(rep) * points + p];
      }
      double mean = sum / static_cast<double>(reps);
      double ss = 0.0;
      for (int rep = 0; rep < reps; ++rep) {
        double d = samples[lane][static_cast<std::size_t>(rep) * points + p] - mean;
        ss += d * d;
      }
      curve.mean_regret[p] = mean;
      curve.stderr_regret[p] =
          reps > 1 ? std::sqrt(ss / static_cast<double>(reps - 1) / static_cast<double>(reps))
                   : 0.0;
    }
    curves.emplace(curve.policy, std::move(curve));
  }
  return curves;
}

std::vector<RegretTableEntry> final_regret_table(const std::vector<ExperimentConfig>& configs,
                                                 const std::vector<std::string>& policies) {
  std::vector<RegretTableEntry> table;
  for (const ExperimentConfig& base : configs) {
    ExperimentConfig config = base;
    if (!policies.empty()) config.policies = policies;
    auto curves = run_experiment(config);
    for (const auto& name : config.policies) {
      const RegretCurve& curve = curves.at(name);
      RegretTableEntry entry;
      entry.setting_id = config.setting_id;
      entry.policy = name;
      entry.mean_regret = curve.mean_regret.back();
      entry.stderr_regret = curve.stderr_regret.back();
      entry.replications = curve.replications;
      table.push_back(std::move(entry));
    }
  }
  return table;
}

}  // namespace aoi_lab
