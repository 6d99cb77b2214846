#include "aoi_lab/bounds.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include <json.hpp>

namespace aoi_lab {
namespace {

constexpr double kPi = 3.14159265358979323846;

double linear_branch(const Instance& instance, std::int64_t horizon) {
  return (1.0 / instance.mu_min() - 1.0 / instance.mu_star()) * static_cast<double>(horizon);
}

}  // namespace

double bernoulli_kl(double p, double q) {
  if (p < 0.0 || p > 1.0 || q < 0.0 || q > 1.0) {
    throw std::invalid_argument("bernoulli_kl arguments must lie in [0, 1]");
  }
  if (p == q) return 0.0;
  double inf = std::numeric_limits<double>::infinity();
  if (q <= 0.0 || q >= 1.0) return inf;
  double value = 0.0;
  if (p > 0.0) value += p * std::log(p / q);
  if (p < 1.0) value += (1.0 - p) * std::log((1.0 - p) / (1.0 - q));
  return value;
}

BoundReport eval_bounds(const Instance& instance, std::int64_t horizon,
                        const BoundParams& params,
                        std::optional<double> expected_suboptimal_uses) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (!(params.alpha > 0.0) || !(params.alpha < 1.0)) {
    throw std::invalid_argument("alpha must lie in (0, 1)");
  }
  if (!(params.consistency_c > 0.0)) throw std::invalid_argument("C must be positive");
  if (!(params.t0 >= 1.0)) throw std::invalid_argument("t0 must be >= 1");

  double mu_star = instance.mu_star();
  double mu_min = instance.mu_min();
  double delta = instance.delta();
  double k = static_cast<double>(instance.num_channels());
  double t = static_cast<double>(horizon);
  double log_t = std::log(t);

  if (delta <= 0.0) {
    throw std::domain_error("delta == 0: bound formulas with 1/delta^2 are undefined");
  }
  double kl = bernoulli_kl(mu_min, (mu_star + 1.0) / 2.0);
  if (!std::isfinite(kl) || kl <= 0.0) {
    throw std::domain_error("KL(mu_min, (mu_star+1)/2) is not finite and positive");
  }

  BoundReport report;
  report.constants_used = params;
  report.horizon = horizon;

  double d_mu = delta / kl;
  report.lower_bound = (k - 1.0) * d_mu / mu_star *
                       ((1.0 - params.alpha) * log_t -
                        std::log(4.0 * k * params.consistency_c));

  double reciprocal_gap = 1.0 / mu_min - 1.0 / mu_star;
  double additive = (1.0 - mu_star) / (mu_star * mu_min);
  if (horizon > instance.num_channels()) {
    report.ucb_upper = additive + reciprocal_gap * (k - 1.0) *
                                      (32.0 * log_t / (delta * delta) + 1.0 + kPi * kPi / 3.0);
    report.ts_upper_shape = additive + reciprocal_gap * k * log_t;
  } else {
    report.ucb_upper = linear_branch(instance, horizon);
    report.ts_upper_shape = linear_branch(instance, horizon);
  }

  report.q_tail_heuristic = k / (t * t);
  if (t > params.t0) {
    // c log T + 1 + c K log^4 T, all over mu_min; mu_star == 1 gives c = 0.
    double c = mu_star >= 1.0 ? 0.0 : -1.0 / std::log1p(-mu_star);
    double log4 = log_t * log_t * log_t * log_t;
    double q_bound = (c * log_t + 1.0 + c * k * log4 + report.q_tail_heuristic) / mu_min;
    report.q_ucb_upper = q_bound;
    report.q_ts_upper = q_bound;
  } else {
    report.q_ucb_upper = linear_branch(instance, horizon);
    report.q_ts_upper = linear_branch(instance, horizon);
  }

  if (expected_suboptimal_uses) {
    if (*expected_suboptimal_uses < 0.0) {
      throw std::invalid_argument("expected sub-optimal-use count must be >= 0");
    }
    report.counts_upper = additive + reciprocal_gap * *expected_suboptimal_uses;
  }
  return report;
}

std::string bound_report_json(const BoundReport& report) {
  nlohmann::json j;
  j["lower_bound"] = report.lower_bound;
  j["ucb_upper"] = report.ucb_upper;
  j["ts_upper_shape"] = report.ts_upper_shape;
  j["ts_shape_constant_free"] = true;
  j["q_ucb_upper"] = report.q_ucb_upper;
  j["q_ts_upper"] = report.q_ts_upper;
  j["q_tail_heuristic_unit_constant"] = report.q_tail_heuristic;
  if (report.counts_upper) j["counts_upper"] = *report.counts_upper;
  j["constants_used"] = {{"alpha", report.constants_used.alpha},
                         {"C", report.constants_used.consistency_c},
                         {"t0", report.constants_used.t0}};
  j["horizon"] = report.horizon;
  return j.dump(2);
}

}  // namespace aoi_lab
