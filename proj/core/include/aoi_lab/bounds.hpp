#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "aoi_lab/instance.hpp"

namespace aoi_lab {

// Constants the regret bounds leave open; supplied by the caller.
struct BoundParams {
  double alpha = 0.5;        // consistency exponent, in (0, 1)
  double consistency_c = 1.; // C in the alpha-consistency definition, > 0
  double t0 = 1.0;           // crossover horizon of the Q-policy bounds, >= 1
};

// Numeric values of the regret bounds for one instance and horizon. The TS
// upper bound is only known up to constants, so just its computable shape is
// reported; the K/T^2 remainder of the Q-policy bounds is evaluated with a
// unit constant and echoed separately as a heuristic.
struct BoundReport {
  double lower_bound = 0.0;
  double ucb_upper = 0.0;
  double ts_upper_shape = 0.0;
  double q_ucb_upper = 0.0;
  double q_ts_upper = 0.0;
  double q_tail_heuristic = 0.0;
  std::optional<double> counts_upper;  // set when expected sub-optimal uses given
  BoundParams constants_used;
  std::int64_t horizon = 0;
};

// KL divergence between Bernoulli(p) and Bernoulli(q). Returns +inf where the
// divergence is infinite (q in {0,1} with p != q).
double bernoulli_kl(double p, double q);

// Evaluates the lower bound, the UCB/TS upper bounds and the Q-policy upper
// bounds at the given horizon. Throws std::domain_error when delta == 0 (the
// 1/delta^2 terms are undefined) or the KL in the lower bound is non-finite
// (mu_star == 1), and std::invalid_argument for out-of-range params.
// When `expected_suboptimal_uses` is given, also reports the cumulative-AoI
// regret cap (1/mu_min - 1/mu_star) * E[N] + (1-mu*)/(mu* mu_min).
BoundReport eval_bounds(const Instance& instance, std::int64_t horizon,
                        const BoundParams& params,
                        std::optional<double> expected_suboptimal_uses = std::nullopt);

// Stable JSON rendering (sorted keys).
std::string bound_report_json(const BoundReport& report);

}  // namespace aoi_lab
