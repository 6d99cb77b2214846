#include "aoi_lab/environment.hpp"

#include <cassert>
#include <stdexcept>

namespace aoi_lab {

void sample_draw(ChannelDraw& out, const Instance& instance, std::int64_t t, RngStream& rng,
                 CouplingMode mode) {
  out.t = t;
  out.mode = mode;
  if (mode == CouplingMode::kCoupled) {
    out.u = rng.uniform01();
    out.bits.clear();
  } else {
    out.u = 0.0;
    out.bits.resize(instance.num_channels());
    for (int k = 0; k < instance.num_channels(); ++k) {
      out.bits[k] = rng.bernoulli(instance.mu(k)) ? 1 : 0;
    }
  }
}

std::vector<std::uint8_t> draw_slot(const Instance& instance, RngStream& rng,
                                    CouplingMode mode) {
  ChannelDraw draw;
  sample_draw(draw, instance, 1, rng, mode);
  std::vector<std::uint8_t> bits(instance.num_channels());
  for (int k = 0; k < instance.num_channels(); ++k) {
    bits[k] = draw.success(instance, k) ? 1 : 0;
  }
  return bits;
}

std::int64_t init_age(const Instance& instance, RngStream& rng, InitAgeMode mode) {
  if (mode == InitAgeMode::kUnit) {
    rng.uniform01();  // keep stream positions mode-independent
    return 1;
  }
  return rng.geometric_age(instance.mu_star());
}

std::vector<std::int64_t> run_genie(const Instance& instance, std::int64_t horizon,
                                    RngStream env, CouplingMode mode, InitAgeMode init) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  std::vector<std::int64_t> aoi(horizon);
  std::int64_t age = init_age(instance, env, init);
  ChannelDraw draw;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    aoi[t - 1] = age;
    sample_draw(draw, instance, t, env, mode);
    age = step(age, draw.success(instance, instance.k_star()));
  }
  return aoi;
}

Trajectory run_policy(const Instance& instance, Policy& policy, std::int64_t horizon,
                      RngStream env, RngStream policy_rng, CouplingMode mode, InitAgeMode init,
                      std::span<const std::int64_t> genie_aoi) {
  if (horizon < 1) throw std::invalid_argument("horizon must be >= 1");
  if (static_cast<std::int64_t>(genie_aoi.size()) != horizon) {
    throw std::invalid_argument("genie trajectory length does not match horizon");
  }
  Trajectory traj;
  traj.chosen.resize(horizon);
  traj.aoi.resize(horizon);
  traj.genie_aoi.assign(genie_aoi.begin(), genie_aoi.end());
  traj.cum_regret.resize(horizon);

  std::int64_t age = init_age(instance, env, init);
  double regret = 0.0;
  ChannelDraw draw;
  for (std::int64_t t = 1; t <= horizon; ++t) {
    assert(age >= 1);
    traj.aoi[t - 1] = age;
    regret += static_cast<double>(age - genie_aoi[t - 1]);
    traj.cum_regret[t - 1] = regret;

    Decision d = policy.decide(age, policy_rng);
    sample_draw(draw, instance, t, env, mode);
    bool success = draw.success(instance, d.channel);
    policy.observe(d.channel, success ? 1 : 0);
    traj.chosen[t - 1] = d.channel;
    age = step(age, success);
  }
  return traj;
}

}  // namespace aoi_lab
