#pragma once
// Deterministic random streams. Replica streams are derived from a master
// seed by hashing, so replicas can be generated in any order or in parallel
// and still produce identical draws. Path noise inside a loop is counter
// based (keyed by loop seed and node id), so refining a path or raising its
// resolution never perturbs the values already drawn at coarser nodes.

#include <cmath>
#include <cstdint>
#include <utility>

namespace windsoup::rng {

inline constexpr double kTwoPi = 6.283185307179586476925287;

// SplitMix64 finalizer. Bijective on 64-bit words; used both as the seed
// expander and as the keyed hash behind counter-based noise.
inline constexpr uint64_t mix64(uint64_t z) noexcept {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

// Maps a word to (0,1]; never 0, so log(u) is always finite.
inline constexpr double to_unit01(uint64_t x) noexcept {
  return (static_cast<double>(x >> 11) + 1.0) * 0x1p-53;
}

// xoshiro256++ with SplitMix64 seeding.
class Stream {
 public:
  explicit Stream(uint64_t seed) noexcept {
    uint64_t z = seed;
    for (auto& w : s_) w = mix64(z++);
  }

  // Stream for one replica of an ensemble. Distinct (seed, replica) pairs
  // give streams that are independent for all practical purposes.
  static Stream for_replica(uint64_t master_seed, uint64_t replica_id) noexcept {
    return Stream(mix64(master_seed ^ mix64(0x7265706c696361ULL + replica_id)));
  }

  uint64_t next_u64() noexcept {
    const uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
    const uint64_t t = s_[1] << 17;
    s_[2] ^= s_[0];
    s_[3] ^= s_[1];
    s_[1] ^= s_[2];
    s_[0] ^= s_[3];
    s_[2] ^= t;
    s_[3] = rotl(s_[3], 45);
    return result;
  }

  double uniform01() noexcept { return to_unit01(next_u64()); }

  std::pair<double, double> normal_pair() noexcept {
    const double r = std::sqrt(-2.0 * std::log(uniform01()));
    const double a = kTwoPi * uniform01();
    return {r * std::cos(a), r * std::sin(a)};
  }

  double normal() noexcept {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    auto [g1, g2] = normal_pair();
    spare_ = g2;
    have_spare_ = true;
    return g1;
  }

  // Poisson variate. Product method for small mean, PTRS transformed
  // rejection for large mean; both consume a variable number of words.
  uint64_t poisson(double mean) {
    if (mean <= 0.0) return 0;
    if (mean < 10.0) {
      const double limit = std::exp(-mean);
      uint64_t k = 0;
      double prod = uniform01();
      while (prod > limit) {
        ++k;
        prod *= uniform01();
      }
      return k;
    }
    const double log_mean = std::log(mean);
    const double b = 0.931 + 2.53 * std::sqrt(mean);
    const double a = -0.059 + 0.02483 * b;
    const double inv_alpha = 1.1239 + 1.1328 / (b - 3.4);
    const double v_r = 0.9277 - 3.6224 / (b - 2.0);
    for (;;) {
      const double u = uniform01() - 0.5;
      const double v = uniform01();
      const double us = 0.5 - std::abs(u);
      const double k = std::floor((2.0 * a / us + b) * u + mean + 0.43);
      if (us >= 0.07 && v <= v_r) return static_cast<uint64_t>(k);
      if (k < 0.0 || (us < 0.013 && v > us)) continue;
      if (std::log(v * inv_alpha / (a / (us * us) + b)) <=
          k * log_mean - mean - std::lgamma(k + 1.0)) {
        return static_cast<uint64_t>(k);
      }
    }
  }

 private:
  static constexpr uint64_t rotl(uint64_t x, int k) noexcept {
    return (x << k) | (x >> (64 - k));
  }
  uint64_t s_[4];
  double spare_ = 0.0;
  bool have_spare_ = false;
};

// Standard normal pair attached to (loop seed, node id). Pure function of its
// arguments: the same node always receives the same displacement regardless
// of the order in which nodes are realized.
inline std::pair<double, double> node_gaussian(uint64_t loop_seed,
                                               uint64_t node_id) noexcept {
  const uint64_t h1 = mix64(loop_seed ^ mix64(2 * node_id + 0x9d39247e33776d41ULL));
  const uint64_t h2 = mix64(loop_seed ^ mix64(2 * node_id + 0x2af7398005aaa5c7ULL));
  const double r = std::sqrt(-2.0 * std::log(to_unit01(h1)));
  const double a = kTwoPi * to_unit01(h2);
  return {r * std::cos(a), r * std::sin(a)};
}

}  // namespace windsoup::rng
