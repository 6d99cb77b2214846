#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "aoi_lab/exact_aoi.hpp"
#include "support/oracles.hpp"

using namespace aoi_lab;
using namespace aoi_lab::testing;

TEST_CASE("stationary schedule on the best channel gives 1/mu_star at every slot") {
  Instance instance({0.5, 0.2});
  FixedSchedule schedule;
  schedule.channels.assign(12, 0);
  schedule.pre_history = 0;
  for (std::int64_t t = 1; t <= 12; ++t) {
    CHECK(exact_expected_aoi(instance, schedule, t) == doctest::Approx(2.0).epsilon(1e-12));
  }
}

TEST_CASE("single-slot schedule keeps the stationary law") {
  Instance instance({0.5});
  FixedSchedule schedule;
  schedule.channels = {0};
  schedule.pre_history = 0;
  CHECK(exact_expected_aoi(instance, schedule, 1) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hand-evaluated two-slot schedule") {
  // mu = (0.8, 0.2), slots (2, 1), pre-history 1:
  // E[a(2)] = 1 + (1-0.8) (1 + (1-0.2)/0.8) = 1.4
  Instance instance({0.8, 0.2});
  FixedSchedule schedule;
  schedule.channels = {1, 0};
  schedule.pre_history = 0;
  double value = exact_expected_aoi(instance, schedule, 2);
  CHECK(value == doctest::Approx(1.4).epsilon(1e-12));

  // cross-check by Monte-Carlo over 1e6 sample paths
  RngStream rng(12345);
  double mc = mc_expected_aoi(instance, schedule, 2, 1000000, rng);
  CHECK(std::abs(mc - 1.4) < 0.005);

  // and by full path enumeration
  CHECK(enum_expected_aoi(instance, schedule, 2) == doctest::Approx(value).epsilon(1e-12));
}

TEST_CASE("cumulative values") {
  SUBCASE("all-optimal schedule is T/mu_star with the stationary start") {
    Instance instance({0.5});
    FixedSchedule schedule;
    schedule.channels.assign(10, 0);
    CHECK(exact_cumulative_aoi(instance, schedule) == doctest::Approx(20.0).epsilon(1e-12));
  }
  SUBCASE("empty schedule sums to zero") {
    Instance instance({0.5});
    FixedSchedule schedule;
    CHECK(exact_cumulative_aoi(instance, schedule) == 0.0);
  }
  SUBCASE("three-slot mixed schedule matches path enumeration to 1e-12") {
    Instance instance({0.9, 0.1});
    FixedSchedule schedule;
    schedule.channels = {0, 1, 0};
    schedule.pre_history = 0;
    double value = exact_cumulative_aoi(instance, schedule);
    CHECK(value == doctest::Approx(enum_cumulative_aoi(instance, schedule)).epsilon(1e-12));
    CHECK(value == doctest::Approx(194.0 / 45.0).epsilon(1e-12));
  }
}

TEST_CASE("oracle agrees with enumeration on random pairs") {
  RngStream rng(777);
  for (int trial = 0; trial < 120; ++trial) {
    Instance instance = random_instance(rng, 4);
    FixedSchedule schedule = random_schedule(rng, instance, 10);
    for (std::int64_t t = 1; t <= schedule.horizon(); ++t) {
      double exact = exact_expected_aoi(instance, schedule, t);
      double brute = enum_expected_aoi(instance, schedule, t);
      REQUIRE(std::abs(exact - brute) < 1e-9);
    }
  }
}

TEST_CASE("worsen_suboptimal") {
  Instance instance({0.9, 0.5, 0.1});
  FixedSchedule schedule;
  schedule.channels = {0, 1, 2};
  schedule.pre_history = 0;

  FixedSchedule worsened = worsen_suboptimal(schedule, instance);
  CHECK(worsened.channels == std::vector<int>{0, 2, 2});
  CHECK(worsened.pre_history == 0);
  CHECK(suboptimal_count(worsened, instance) == suboptimal_count(schedule, instance));

  FixedSchedule all_optimal;
  all_optimal.channels = {0, 0, 0};
  CHECK(worsen_suboptimal(all_optimal, instance).channels == all_optimal.channels);
}

TEST_CASE("cluster_worst_first") {
  Instance instance({0.9, 0.5, 0.1});
  FixedSchedule schedule;
  schedule.channels = {0, 2, 2};
  CHECK(cluster_worst_first(schedule, instance).channels == std::vector<int>{2, 2, 0});

  FixedSchedule all_optimal;
  all_optimal.channels = {0, 0};
  CHECK(cluster_worst_first(all_optimal, instance).channels == all_optimal.channels);

  RngStream rng(5);
  for (int trial = 0; trial < 100; ++trial) {
    Instance inst = random_instance(rng, 4);
    FixedSchedule s = random_schedule(rng, inst, 8);
    FixedSchedule clustered = cluster_worst_first(s, inst);
    // no optimal slot may precede a worst slot
    bool seen_optimal = false;
    for (int c : clustered.channels) {
      if (c == inst.k_star()) seen_optimal = true;
      if (seen_optimal) CHECK(c == inst.k_star());
    }
    CHECK(suboptimal_count(clustered, inst) <= suboptimal_count(s, inst));
  }
}

TEST_CASE("exchange inequalities and the cumulative cap hold on a random grid") {
  RngStream rng(99);
  int checked = 0;
  for (int trial = 0; trial < 500; ++trial) {
    Instance instance = random_instance(rng, 4);
    FixedSchedule schedule = random_schedule(rng, instance, 8);
    double base = exact_cumulative_aoi(instance, schedule);
    FixedSchedule worsened = worsen_suboptimal(schedule, instance);
    double worse = exact_cumulative_aoi(instance, worsened);
    FixedSchedule clustered = cluster_worst_first(worsened, instance);
    double clustered_value = exact_cumulative_aoi(instance, clustered);
    REQUIRE(base <= worse + 1e-9);
    REQUIRE(worse <= clustered_value + 1e-9);
    double cap = cumulative_aoi_upper_bound(instance, schedule.horizon(),
                                            suboptimal_count(schedule, instance));
    REQUIRE(base <= cap + 1e-9);
    ++checked;
  }
  CHECK(checked == 500);
}

TEST_CASE("schedule validation") {
  Instance instance({0.5, 0.5});
  FixedSchedule schedule;
  schedule.channels = {0, 1};
  CHECK_THROWS_AS(exact_expected_aoi(instance, schedule, 0), std::out_of_range);
  CHECK_THROWS_AS(exact_expected_aoi(instance, schedule, 3), std::out_of_range);
  FixedSchedule bad;
  bad.channels = {2};
  CHECK_THROWS_AS(exact_expected_aoi(instance, bad, 1), std::invalid_argument);
  FixedSchedule bad_pre;
  bad_pre.channels = {0};
  bad_pre.pre_history = 7;
  CHECK_THROWS_AS(exact_cumulative_aoi(instance, bad_pre), std::invalid_argument);
}
