#include "aoi_lab/policies.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace aoi_lab {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lowest index among maximizers.
int argmax(const std::vector<double>& values) {
  int best = 0;
  for (int k = 1; k < static_cast<int>(values.size()); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

int argmax_mu_hat(const PolicyState& state) {
  int best = 0;
  for (int k = 1; k < state.num_channels(); ++k) {
    if (state.mu_hat(k) > state.mu_hat(best)) best = k;
  }
  return best;
}

// Channel for the AoI-aware exploit branch: the empirical best once any
// success has been observed. Until then every estimate is exactly 0, the
// argmax tie would pin the exploit loop to channel 1 regardless of outcomes,
// and a high-age start can never leave it; sampling an unused channel instead
// forces one observation before the estimates are trusted, like the +inf
// index rule for unused channels.
int exploit_channel(const PolicyState& state) {
  int best = argmax_mu_hat(state);
  if (state.mu_hat(best) > 0.0) return best;
  for (int k = 0; k < state.num_channels(); ++k) {
    if (state.uses[k] == 0) return k;
  }
  return best;
}

Decision ts_sample(const PolicyState& state, RngStream& rng, Branch branch) {
  std::vector<double> theta(state.num_channels());
  for (int k = 0; k < state.num_channels(); ++k) {
    theta[k] = rng.beta(state.alpha(k), state.beta(k));
  }
  return {argmax(theta), branch};
}

Decision ucb_argmax(const PolicyState& state, Branch branch) {
  std::vector<double> index(state.num_channels());
  for (int k = 0; k < state.num_channels(); ++k) index[k] = ucb_index(state, k);
  return {argmax(index), branch};
}

Decision q_ucb_exploit(const PolicyState& state) {
  std::vector<double> index(state.num_channels());
  for (int k = 0; k < state.num_channels(); ++k) index[k] = q_ucb_index(state, k);
  return {argmax(index), Branch::kExploit};
}

double effective_limit(const PolicyState& state, std::optional<double> limit_override) {
  return limit_override ? *limit_override : aa_limit(state);
}

}  // namespace

std::int64_t PolicyState::total_uses() const {
  return std::accumulate(uses.begin(), uses.end(), std::int64_t{0});
}

const char* branch_name(Branch b) {
  switch (b) {
    case Branch::kForcedInit: return "forced-init";
    case Branch::kExplore: return "explore";
    case Branch::kExploit: return "exploit";
  }
  return "unknown";
}

void update(PolicyState& state, int channel, int reward_bit) {
  if (channel < 0 || channel >= state.num_channels()) {
    throw std::out_of_range("channel index out of range in update()");
  }
  if (reward_bit != 0 && reward_bit != 1) {
    throw std::invalid_argument("reward must be 0 or 1");
  }
  state.uses[channel] += 1;
  state.successes[channel] += reward_bit;
  state.t += 1;
}

double ucb_index(const PolicyState& state, int k) {
  if (state.uses[k] == 0) return kInf;
  double log_t = std::log(static_cast<double>(state.t));
  return state.mu_hat(k) + std::sqrt(8.0 * log_t / static_cast<double>(state.uses[k]));
}

double q_ucb_index(const PolicyState& state, int k) {
  if (state.uses[k] == 0) return kInf;
  double log_t = std::log(static_cast<double>(state.t));
  return state.mu_hat(k) + std::sqrt(log_t * log_t / (2.0 * static_cast<double>(state.uses[k])));
}

double explore_gate_probability(int num_channels, std::int64_t t) {
  double log_t = std::log(static_cast<double>(t));
  double p = 3.0 * static_cast<double>(num_channels) * log_t * log_t / static_cast<double>(t);
  return std::min(1.0, p);
}

double aa_limit(const PolicyState& state) {
  double limit = kInf;
  for (int k = 0; k < state.num_channels(); ++k) {
    double ratio = static_cast<double>(state.alpha(k) + state.beta(k)) /
                   static_cast<double>(state.alpha(k));
    limit = std::min(limit, ratio);
  }
  return limit;
}

Decision ucb_decide(const PolicyState& state, std::int64_t /*current_age*/) {
  if (state.t <= state.num_channels()) {
    return {static_cast<int>(state.t - 1), Branch::kForcedInit};
  }
  return ucb_argmax(state, Branch::kExploit);
}

Decision ts_decide(const PolicyState& state, std::int64_t /*current_age*/, RngStream& rng) {
  return ts_sample(state, rng, Branch::kExploit);
}

Decision q_ucb_decide(const PolicyState& state, std::int64_t /*current_age*/, RngStream& rng) {
  if (rng.bernoulli(explore_gate_probability(state.num_channels(), state.t))) {
    return {rng.uniform_below(state.num_channels()), Branch::kExplore};
  }
  return q_ucb_exploit(state);
}

Decision q_ts_decide(const PolicyState& state, std::int64_t /*current_age*/, RngStream& rng) {
  if (rng.bernoulli(explore_gate_probability(state.num_channels(), state.t))) {
    return {rng.uniform_below(state.num_channels()), Branch::kExplore};
  }
  return ts_sample(state, rng, Branch::kExploit);
}

Decision aa_ts_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng,
                      std::optional<double> limit_override) {
  if (static_cast<double>(current_age) > effective_limit(state, limit_override)) {
    return {exploit_channel(state), Branch::kExploit};
  }
  return ts_sample(state, rng, Branch::kExplore);
}

Decision aa_ucb_decide(const PolicyState& state, std::int64_t current_age,
                       std::optional<double> limit_override) {
  if (state.t <= state.num_channels()) {
    return {static_cast<int>(state.t - 1), Branch::kForcedInit};
  }
  if (static_cast<double>(current_age) > effective_limit(state, limit_override)) {
    return {exploit_channel(state), Branch::kExploit};
  }
  return ucb_argmax(state, Branch::kExplore);
}

Decision aa_q_ucb_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng,
                         std::int64_t thr) {
  bool gate = rng.bernoulli(explore_gate_probability(state.num_channels(), state.t));
  if (gate && current_age < thr) {
    return {rng.uniform_below(state.num_channels()), Branch::kExplore};
  }
  return q_ucb_exploit(state);
}

Decision aa_q_ts_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng,
                        std::int64_t thr) {
  bool gate = rng.bernoulli(explore_gate_probability(state.num_channels(), state.t));
  if (gate && current_age < thr) {
    return {rng.uniform_below(state.num_channels()), Branch::kExplore};
  }
  return ts_sample(state, rng, Branch::kExploit);
}

namespace {

class UcbPolicy final : public Policy {
 public:
  using Policy::Policy;
  Decision decide(std::int64_t age, RngStream&) override { return ucb_decide(state_, age); }
  std::string_view name() const override { return "ucb"; }
};

class TsPolicy final : public Policy {
 public:
  using Policy::Policy;
  Decision decide(std::int64_t age, RngStream& rng) override {
    return ts_decide(state_, age, rng);
  }
  std::string_view name() const override { return "ts"; }
};

class QUcbPolicy final : public Policy {
 public:
  using Policy::Policy;
  Decision decide(std::int64_t age, RngStream& rng) override {
    return q_ucb_decide(state_, age, rng);
  }
  std::string_view name() const override { return "q-ucb"; }
};

class QTsPolicy final : public Policy {
 public:
  using Policy::Policy;
  Decision decide(std::int64_t age, RngStream& rng) override {
    return q_ts_decide(state_, age, rng);
  }
  std::string_view name() const override { return "q-ts"; }
};

class AaUcbPolicy final : public Policy {
 public:
  AaUcbPolicy(int num_channels, std::optional<double> limit_override)
      : Policy(num_channels), limit_override_(limit_override) {}
  Decision decide(std::int64_t age, RngStream&) override {
    return aa_ucb_decide(state_, age, limit_override_);
  }
  std::string_view name() const override { return "aa-ucb"; }

 private:
  std::optional<double> limit_override_;
};

class AaTsPolicy final : public Policy {
 public:
  AaTsPolicy(int num_channels, std::optional<double> limit_override)
      : Policy(num_channels), limit_override_(limit_override) {}
  Decision decide(std::int64_t age, RngStream& rng) override {
    return aa_ts_decide(state_, age, rng, limit_override_);
  }
  std::string_view name() const override { return "aa-ts"; }

 private:
  std::optional<double> limit_override_;
};

class AaQUcbPolicy final : public Policy {
 public:
  AaQUcbPolicy(int num_channels, std::int64_t thr) : Policy(num_channels), thr_(thr) {}
  Decision decide(std::int64_t age, RngStream& rng) override {
    return aa_q_ucb_decide(state_, age, rng, thr_);
  }
  std::string_view name() const override { return "aa-q-ucb"; }

 private:
  std::int64_t thr_;
};

class AaQTsPolicy final : public Policy {
 public:
  AaQTsPolicy(int num_channels, std::int64_t thr) : Policy(num_channels), thr_(thr) {}
  Decision decide(std::int64_t age, RngStream& rng) override {
    return aa_q_ts_decide(state_, age, rng, thr_);
  }
  std::string_view name() const override { return "aa-q-ts"; }

 private:
  std::int64_t thr_;
};

class GeniePolicy final : public Policy {
 public:
  GeniePolicy(int num_channels, int k_star) : Policy(num_channels), k_star_(k_star) {}
  Decision decide(std::int64_t, RngStream&) override { return {k_star_, Branch::kExploit}; }
  std::string_view name() const override { return "genie"; }

 private:
  int k_star_;
};

class UniformRandomPolicy final : public Policy {
 public:
  using Policy::Policy;
  Decision decide(std::int64_t, RngStream& rng) override {
    return {rng.uniform_below(state_.num_channels()), Branch::kExplore};
  }
  std::string_view name() const override { return "uniform-random"; }
};

}  // namespace

const std::vector<std::string>& policy_registry() {
  static const std::vector<std::string> names = {
      "ucb",   "ts",    "q-ucb",    "q-ts",  "aa-ucb",
      "aa-ts", "aa-q-ucb", "aa-q-ts", "genie", "uniform-random"};
  return names;
}

bool is_registered_policy(std::string_view name) {
  const auto& reg = policy_registry();
  return std::find(reg.begin(), reg.end(), name) != reg.end();
}

int policy_lane(std::string_view name) {
  const auto& reg = policy_registry();
  auto it = std::find(reg.begin(), reg.end(), name);
  if (it == reg.end()) {
    throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
  }
  return static_cast<int>(it - reg.begin()) + 1;
}

std::unique_ptr<Policy> make_policy(std::string_view name, const Instance& instance,
                                    const PolicyOptions& options) {
  int k = instance.num_channels();
  if (name == "ucb") return std::make_unique<UcbPolicy>(k);
  if (name == "ts") return std::make_unique<TsPolicy>(k);
  if (name == "q-ucb") return std::make_unique<QUcbPolicy>(k);
  if (name == "q-ts") return std::make_unique<QTsPolicy>(k);
  if (name == "aa-ucb") return std::make_unique<AaUcbPolicy>(k, options.aa_limit_override);
  if (name == "aa-ts") return std::make_unique<AaTsPolicy>(k, options.aa_limit_override);
  if (name == "aa-q-ucb") return std::make_unique<AaQUcbPolicy>(k, options.thr);
  if (name == "aa-q-ts") return std::make_unique<AaQTsPolicy>(k, options.thr);
  if (name == "genie") return std::make_unique<GeniePolicy>(k, instance.k_star());
  if (name == "uniform-random") return std::make_unique<UniformRandomPolicy>(k);
  throw std::invalid_argument("unknown policy '" + std::string(name) + "'");
}

}  // namespace aoi_lab
