#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "aoi_lab/instance.hpp"
#include "aoi_lab/rng.hpp"

namespace aoi_lab {

// Learning state shared by all bandit policies: use counts and success
// counts per channel, plus the 1-based slot counter. Success counts are kept
// as integers so mu_hat * T_k is integral by construction.
struct PolicyState {
  explicit PolicyState(int num_channels)
      : uses(num_channels, 0), successes(num_channels, 0) {}

  std::int64_t t = 1;  // slot about to be decided
  std::vector<std::int64_t> uses;
  std::vector<std::int64_t> successes;

  int num_channels() const { return static_cast<int>(uses.size()); }
  double mu_hat(int k) const {
    return uses[k] == 0 ? 0.0 : static_cast<double>(successes[k]) / static_cast<double>(uses[k]);
  }
  std::int64_t alpha(int k) const { return successes[k] + 1; }
  std::int64_t beta(int k) const { return uses[k] - successes[k] + 1; }
  std::int64_t total_uses() const;
};

enum class Branch { kForcedInit, kExplore, kExploit };

struct Decision {
  int channel = 0;
  Branch branch = Branch::kExploit;
};

const char* branch_name(Branch b);

// Running-mean update for the scheduled channel; advances the slot counter.
void update(PolicyState& state, int channel, int reward_bit);

// UCB index mu_hat + sqrt(8 ln t / T_k); +inf when the channel is unused.
double ucb_index(const PolicyState& state, int k);

// Q-UCB exploit index mu_hat + sqrt(ln^2 t / (2 T_k)); +inf when unused.
double q_ucb_index(const PolicyState& state, int k);

// Forced-exploration gate probability min{1, 3K ln^2 t / t}.
double explore_gate_probability(int num_channels, std::int64_t t);

// AoI-aware exploit threshold min_k (alpha_k + beta_k) / alpha_k, an
// add-one-smoothed estimate of 1 / mu_hat of the best channel.
double aa_limit(const PolicyState& state);

Decision ucb_decide(const PolicyState& state, std::int64_t current_age);
Decision ts_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng);
Decision q_ucb_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng);
Decision q_ts_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng);
Decision aa_ts_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng,
                      std::optional<double> limit_override = std::nullopt);
Decision aa_ucb_decide(const PolicyState& state, std::int64_t current_age,
                       std::optional<double> limit_override = std::nullopt);
Decision aa_q_ucb_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng,
                         std::int64_t thr);
Decision aa_q_ts_decide(const PolicyState& state, std::int64_t current_age, RngStream& rng,
                        std::int64_t thr);

struct PolicyOptions {
  std::int64_t thr = 2;  // AA-Q variants explore only below this age
  std::optional<double> aa_limit_override;
};

// Uniform decision interface used by the simulation loop: observe the
// current AoI, pick a channel, ingest the binary reward.
class Policy {
 public:
  explicit Policy(int num_channels) : state_(num_channels) {}
  virtual ~Policy() = default;

  virtual Decision decide(std::int64_t current_age, RngStream& rng) = 0;
  virtual void observe(int channel, int reward_bit) { update(state_, channel, reward_bit); }
  virtual std::string_view name() const = 0;

  const PolicyState& state() const { return state_; }
  void reset() { state_ = PolicyState(state_.num_channels()); }

 protected:
  PolicyState state_;
};

// Registry names, in stable order (the order also fixes each policy's rng
// lane): ucb, ts, q-ucb, q-ts, aa-ucb, aa-ts, aa-q-ucb, aa-q-ts, genie,
// uniform-random.
const std::vector<std::string>& policy_registry();
bool is_registered_policy(std::string_view name);
int policy_lane(std::string_view name);  // 1-based lane; throws on unknown name

// Throws std::invalid_argument for names outside the registry.
std::unique_ptr<Policy> make_policy(std::string_view name, const Instance& instance,
                                    const PolicyOptions& options = {});

}  // namespace aoi_lab
