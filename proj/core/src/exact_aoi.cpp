#include "aoi_lab/exact_aoi.hpp"

#include <stdexcept>
#include <string>

namespace aoi_lab {
namespace {

void check_schedule(const FixedSchedule& schedule, const Instance& instance) {
  for (int c : schedule.channels) {
    if (c < 0 || c >= instance.num_channels()) {
      throw std::invalid_argument("schedule references channel " + std::to_string(c + 1) +
                                  " outside the instance");
    }
  }
  if (schedule.pre_history < 0 || schedule.pre_history >= instance.num_channels()) {
    throw std::invalid_argument("pre-history channel outside the instance");
  }
}

}  // namespace

std::int64_t suboptimal_count(const FixedSchedule& schedule, const Instance& instance) {
  check_schedule(schedule, instance);
  std::int64_t n = 0;
  for (int c : schedule.channels) {
    if (instance.mu(c) < instance.mu_star()) ++n;
  }
  return n;
}

FixedSchedule worsen_suboptimal(const FixedSchedule& schedule, const Instance& instance) {
  check_schedule(schedule, instance);
  FixedSchedule out = schedule;
  for (int& c : out.channels) {
    if (instance.mu(c) < instance.mu_star()) c = instance.k_worst();
  }
  return out;
}

FixedSchedule cluster_worst_first(const FixedSchedule& schedule, const Instance& instance) {
  std::int64_t n = suboptimal_count(schedule, instance);
  FixedSchedule out;
  out.pre_history = schedule.pre_history;
  out.channels.assign(schedule.channels.size(), instance.k_star());
  for (std::int64_t i = 0; i < n; ++i) out.channels[i] = instance.k_worst();
  return out;
}

double exact_expected_aoi(const Instance& instance, const FixedSchedule& schedule,
                          std::int64_t t) {
  check_schedule(schedule, instance);
  if (t < 1 || t > schedule.horizon()) {
    throw std::out_of_range("slot " + std::to_string(t) + " outside schedule of length " +
                            std::to_string(schedule.horizon()));
  }
  double mu_pre = instance.mu(schedule.pre_history);
  if (!(mu_pre > 0.0)) {
    throw std::domain_error("pre-history channel has zero success probability; tail diverges");
  }
  // E[a(t)] = sum_{tau>=0} P(a(t) > tau), where P(a(t) > tau) multiplies one
  // failure factor per slot t, t-1, ..., t-tau+1.
  double expected = 1.0;
  double prod = 1.0;
  for (std::int64_t s = t; s >= 1; --s) {
    prod *= 1.0 - instance.mu(schedule.channels[s - 1]);
    expected += prod;
  }
  expected += prod * (1.0 - mu_pre) / mu_pre;
  return expected;
}

double exact_cumulative_aoi(const Instance& instance, const FixedSchedule& schedule) {
  double total = 0.0;
  for (std::int64_t t = 1; t <= schedule.horizon(); ++t) {
    total += exact_expected_aoi(instance, schedule, t);
  }
  return total;
}

double cumulative_aoi_upper_bound(const Instance& instance, std::int64_t horizon,
                                  std::int64_t suboptimal_slots) {
  double mu_star = instance.mu_star();
  double mu_min = instance.mu_min();
  return static_cast<double>(horizon) / mu_star + (1.0 - mu_star) / (mu_star * mu_min) +
         (1.0 / mu_min - 1.0 / mu_star) * static_cast<double>(suboptimal_slots);
}

}  // namespace aoi_lab
