#include "aoi_lab/instance.hpp"

#include <stdexcept>
#include <string>
#include <utility>

namespace aoi_lab {

Instance::Instance(std::vector<double> mu) : mu_(std::move(mu)) {
  if (mu_.empty()) {
    throw std::invalid_argument("instance needs at least one channel");
  }
  for (std::size_t k = 0; k < mu_.size(); ++k) {
    if (!(mu_[k] > 0.0) || !(mu_[k] <= 1.0)) {
      throw std::invalid_argument("channel " + std::to_string(k + 1) +
                                  " success probability " + std::to_string(mu_[k]) +
                                  " outside (0, 1]");
    }
  }
  k_star_ = 0;
  k_worst_ = 0;
  for (int k = 1; k < num_channels(); ++k) {
    if (mu_[k] > mu_[k_star_]) k_star_ = k;
    if (mu_[k] < mu_[k_worst_]) k_worst_ = k;
  }
  mu_star_ = mu_[k_star_];
  mu_min_ = mu_[k_worst_];

  double second_best = 0.0;
  bool any = false;
  for (int k = 0; k < num_channels(); ++k) {
    if (k == k_star_) continue;
    if (!any || mu_[k] > second_best) second_best = mu_[k];
    any = true;
  }
  delta_ = any ? mu_star_ - second_best : 0.0;
}

}  // namespace aoi_lab
