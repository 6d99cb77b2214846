#pragma once

#include <cstdint>
#include <vector>

#include "aoi_lab/instance.hpp"

namespace aoi_lab {

// A deterministic channel assignment for slots 1..T, plus the channel assumed
// for every slot t <= 0 (the system has been transmitting forever).
struct FixedSchedule {
  std::vector<int> channels;  // 0-based channel index per slot
  int pre_history = 0;

  std::int64_t horizon() const { return static_cast<std::int64_t>(channels.size()); }
};

// Slots whose channel is strictly worse than mu_star. Value-based, so a tie
// for the best probability never counts as sub-optimal.
std::int64_t suboptimal_count(const FixedSchedule& schedule, const Instance& instance);

// Replaces every sub-optimal slot by the worst channel; optimal slots and the
// pre-history are untouched.
FixedSchedule worsen_suboptimal(const FixedSchedule& schedule, const Instance& instance);

// Worst channel in slots 1..N, the optimal channel thereafter, N being the
// schedule's sub-optimal slot count.
FixedSchedule cluster_worst_first(const FixedSchedule& schedule, const Instance& instance);

// Exact E[a(t)] for the age measured after slot t's transmission: the sum of
// P(a(t) > tau), a finite product over scheduled slots back to slot 1 closed
// by a geometric tail through the pre-history channel. No truncation error.
double exact_expected_aoi(const Instance& instance, const FixedSchedule& schedule,
                          std::int64_t t);

// Sum of exact_expected_aoi over slots 1..T; 0 for an empty schedule.
double exact_cumulative_aoi(const Instance& instance, const FixedSchedule& schedule);

// Closed-form cap on the cumulative expected AoI of any schedule with
// `suboptimal_slots` sub-optimal uses:
//   T/mu* + (1-mu*)/(mu* mu_min) + (1/mu_min - 1/mu*) N.
double cumulative_aoi_upper_bound(const Instance& instance, std::int64_t horizon,
                                  std::int64_t suboptimal_slots);

}  // namespace aoi_lab
