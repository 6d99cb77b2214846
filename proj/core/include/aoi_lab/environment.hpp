#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "aoi_lab/instance.hpp"
#include "aoi_lab/policies.hpp"
#include "aoi_lab/rng.hpp"

namespace aoi_lab {

enum class CouplingMode { kCoupled, kIndependent };
enum class InitAgeMode { kGeometricGenie, kUnit };

// AoI recurrence: reset to 1 on a delivered update, otherwise age by one.
inline std::int64_t step(std::int64_t age, bool success) { return success ? 1 : age + 1; }

// One slot worth of channel service. In coupled mode a single uniform drives
// every channel (channel k succeeds iff u <= mu_k), so a success on some
// channel implies a success on every better channel. In independent mode each
// channel gets its own Bernoulli draw.
struct ChannelDraw {
  std::int64_t t = 0;
  CouplingMode mode = CouplingMode::kCoupled;
  double u = 0.0;
  std::vector<std::uint8_t> bits;  // filled in independent mode only

  bool success(const Instance& instance, int channel) const {
    return mode == CouplingMode::kCoupled ? u <= instance.mu(channel)
                                          : bits[channel] != 0;
  }
};

// Consumes exactly one uniform per slot in coupled mode and K uniforms in
// independent mode, independent of which channel ends up scheduled; streams
// replayed for different policies therefore stay aligned slot by slot.
void sample_draw(ChannelDraw& out, const Instance& instance, std::int64_t t, RngStream& rng,
                 CouplingMode mode);

// Materialized per-channel success bits for one slot.
std::vector<std::uint8_t> draw_slot(const Instance& instance, RngStream& rng, CouplingMode mode);

// Initial age entering slot 1. kGeometricGenie samples the genie's stationary
// age law Geometric(mu_star) on {1, 2, ...}; kUnit starts fresh at 1. Both
// consume exactly one uniform so environment streams stay aligned.
std::int64_t init_age(const Instance& instance, RngStream& rng, InitAgeMode mode);

// Per-replication sample path. cum_regret[t] is the running sum of
// aoi[s] - genie_aoi[s] for s <= t; in coupled mode every increment is >= 0.
struct Trajectory {
  std::vector<int> chosen;
  std::vector<std::int64_t> aoi;
  std::vector<std::int64_t> genie_aoi;
  std::vector<double> cum_regret;
};

// AoI path of the policy that schedules the best channel in every slot.
// `env` is taken by value: passing the same freshly derived stream to
// run_genie and run_policy replays identical channel service.
std::vector<std::int64_t> run_genie(const Instance& instance, std::int64_t horizon,
                                    RngStream env, CouplingMode mode, InitAgeMode init);

// Drives one policy against the shared channel service and the precomputed
// genie path (which must come from the same env stream and init mode).
Trajectory run_policy(const Instance& instance, Policy& policy, std::int64_t horizon,
                      RngStream env, RngStream policy_rng, CouplingMode mode, InitAgeMode init,
                      std::span<const std::int64_t> genie_aoi);

}  // namespace aoi_lab
