#pragma once

// Brute-force reference oracles for the exact-AoI machinery. These stay
// independent of the closed-form implementation they are used to check:
// expectations come from enumerating every success/failure pattern, not from
// the product-sum recurrence.

#include <cstdint>
#include <vector>

#include "aoi_lab/environment.hpp"
#include "aoi_lab/exact_aoi.hpp"
#include "aoi_lab/instance.hpp"
#include "aoi_lab/rng.hpp"

namespace aoi_lab::testing {

// E[a(t)] by enumerating the 2^t outcome paths of slots 1..t. Paths with no
// success contribute t + 1/mu_pre: the age entering slot 1 is the stationary
// Geometric(mu_pre) age of the pre-history channel, and expectation is linear.
inline double enum_expected_aoi(const Instance& instance, const FixedSchedule& schedule,
                                std::int64_t t) {
  double total = 0.0;
  for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << t); ++mask) {
    double prob = 1.0;
    std::int64_t last_success = 0;
    for (std::int64_t slot = 1; slot <= t; ++slot) {
      bool success = (mask >> (slot - 1)) & 1u;
      double mu = instance.mu(schedule.channels[slot - 1]);
      prob *= success ? mu : 1.0 - mu;
      if (success) last_success = slot;
    }
    double age = last_success > 0
                     ? static_cast<double>(t - last_success + 1)
                     : static_cast<double>(t) + 1.0 / instance.mu(schedule.pre_history);
    total += prob * age;
  }
  return total;
}

inline double enum_cumulative_aoi(const Instance& instance, const FixedSchedule& schedule) {
  double total = 0.0;
  for (std::int64_t t = 1; t <= schedule.horizon(); ++t) {
    total += enum_expected_aoi(instance, schedule, t);
  }
  return total;
}

// Monte-Carlo estimate of E[a(t)]: sample the stationary pre-history age,
// then play out the scheduled slots.
inline double mc_expected_aoi(const Instance& instance, const FixedSchedule& schedule,
                              std::int64_t t, int paths, RngStream& rng) {
  double sum = 0.0;
  for (int i = 0; i < paths; ++i) {
    std::int64_t age = rng.geometric_age(instance.mu(schedule.pre_history));
    for (std::int64_t slot = 1; slot <= t; ++slot) {
      age = step(age, rng.bernoulli(instance.mu(schedule.channels[slot - 1])));
    }
    sum += static_cast<double>(age);
  }
  return sum / static_cast<double>(paths);
}

inline Instance random_instance(RngStream& rng, int max_channels, double lo = 0.05,
                                double hi = 0.95) {
  int k = 1 + rng.uniform_below(max_channels);
  std::vector<double> mu(k);
  for (double& m : mu) m = lo + (hi - lo) * rng.uniform01();
  return Instance(mu);
}

inline FixedSchedule random_schedule(RngStream& rng, const Instance& instance,
                                     std::int64_t max_horizon) {
  FixedSchedule schedule;
  schedule.channels.resize(1 + rng.uniform_below(static_cast<int>(max_horizon)));
  for (int& c : schedule.channels) c = rng.uniform_below(instance.num_channels());
  schedule.pre_history = rng.uniform_below(instance.num_channels());
  return schedule;
}

}  // namespace aoi_lab::testing
