#pragma once

#include <cstdint>
#include <vector>

namespace aoi_lab {

// A problem instance: the per-channel success probabilities and the derived
// quantities every other component keys off.
class Instance {
 public:
  // Throws std::invalid_argument unless all probabilities lie in (0, 1].
  explicit Instance(std::vector<double> mu);

  int num_channels() const { return static_cast<int>(mu_.size()); }
  double mu(int channel) const { return mu_[channel]; }
  const std::vector<double>& probabilities() const { return mu_; }

  double mu_star() const { return mu_star_; }
  double mu_min() const { return mu_min_; }

  // Gap between the best and the second-best channel; 0 for single-channel
  // instances (no second best exists).
  double delta() const { return delta_; }

  // Smallest index attaining the max / min success probability.
  int k_star() const { return k_star_; }
  int k_worst() const { return k_worst_; }

 private:
  std::vector<double> mu_;
  double mu_star_ = 0.0;
  double mu_min_ = 0.0;
  double delta_ = 0.0;
  int k_star_ = 0;
  int k_worst_ = 0;
};

}  // namespace aoi_lab
