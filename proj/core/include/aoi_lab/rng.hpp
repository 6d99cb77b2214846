#pragma once

#include <cmath>
#include <cstdint>

namespace aoi_lab {

// SplitMix64: a counter-based generator (state advances by a fixed gamma,
// output is an avalanche mix of the counter). Streams with different start
// states are order-independent and cheap to derive, which is what the
// per-replication seeding scheme needs.
class SplitMix64 {
 public:
  using result_type = std::uint64_t;

  explicit SplitMix64(std::uint64_t state) : state_(state) {}

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }

  result_type operator()() {
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
    return z ^ (z >> 31);
  }

 private:
  std::uint64_t state_;
};

// A seedable uniform stream plus the handful of variate transforms the
// simulator needs. One stream per (replication, lane); lane 0 is the shared
// environment stream, lanes >= 1 belong to individual policies.
class RngStream {
 public:
  using result_type = std::uint64_t;

  explicit RngStream(std::uint64_t state) : gen_(state) {}

  // Pure function of (master_seed, replication, lane): replications can run
  // in any order or in parallel and still see identical randomness.
  static RngStream derive(std::uint64_t master_seed, std::uint64_t replication,
                          std::uint64_t lane) {
    std::uint64_t s = master_seed ^ (0x9e3779b97f4a7c15ull * replication) ^
                      (0xd1b54a32d192ed03ull * (lane + 1));
    return RngStream(SplitMix64::mix(s));
  }

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~std::uint64_t{0}; }
  result_type operator()() { return gen_(); }

  std::uint64_t next_u64() { return gen_(); }

  // Uniform on [0, 1), 53 random bits.
  double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

  // Uniform on {0, ..., n-1}; n >= 1.
  int uniform_below(int n) {
    return static_cast<int>(
        (static_cast<unsigned __int128>(gen_()) * static_cast<unsigned __int128>(n)) >> 64);
  }

  // Always consumes exactly one draw, so stream positions stay aligned
  // across callers regardless of p.
  bool bernoulli(double p) { return uniform01() < p; }

  // Geometric on {1, 2, ...} with success probability mu: the stationary age
  // of a channel that is used in every slot. Consumes one draw.
  std::int64_t geometric_age(double mu) {
    double u = uniform01();
    if (mu >= 1.0) return 1;
    return 1 + static_cast<std::int64_t>(std::floor(std::log1p(-u) / std::log1p(-mu)));
  }

  // Standard normal via Box-Muller; the spare value is cached per-stream.
  double normal() {
    if (has_spare_) {
      has_spare_ = false;
      return spare_;
    }
    double r = std::sqrt(-2.0 * std::log1p(-uniform01()));
    double theta = 6.283185307179586476925286766559 * uniform01();
    spare_ = r * std::sin(theta);
    has_spare_ = true;
    return r * std::cos(theta);
  }

  // Marsaglia-Tsang; exact for shape >= 1, which covers every Beta posterior
  // shape the policies produce (successes + 1, failures + 1).
  double gamma(double shape) {
    double d = shape - 1.0 / 3.0;
    double c = 1.0 / std::sqrt(9.0 * d);
    for (;;) {
      double x, v;
      do {
        x = normal();
        v = 1.0 + c * x;
      } while (v <= 0.0);
      v = v * v * v;
      double u = uniform01();
      double x2 = x * x;
      if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
      if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
    }
  }

  double beta(std::int64_t alpha, std::int64_t beta_param) {
    double a = gamma(static_cast<double>(alpha));
    double b = gamma(static_cast<double>(beta_param));
    return a / (a + b);
  }

 private:
  SplitMix64 gen_;
  double spare_ = 0.0;
  bool has_spare_ = false;
};

}  // namespace aoi_lab
