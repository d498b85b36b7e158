#pragma once
// Core value types shared by the sampling and analysis layers.

#include <complex>
#include <cstdint>
#include <vector>

namespace windsoup {

using PlanePoint = std::complex<double>;

namespace sampler {

// Time axis of a loop in fixed point: node ids are dyadic numerators over
// 2^kTimeBits, so time i/n on a power-of-two grid has an exact id and the
// midpoint of two ids is again an id. Ids double as noise-counter keys.
inline constexpr int kTimeBits = 48;
inline constexpr uint64_t kTimeOne = 1ULL << kTimeBits;

// Discretized rooted loop. Invariants: vertices.front() == vertices.back()
// == root; times are strictly increasing from 0 to duration; node_ids match
// times (time = duration * id / 2^kTimeBits); base_dt is the step of the
// unrefined grid the loop was first realized on.
struct Loop {
  PlanePoint root{0.0, 0.0};
  double duration = 0.0;
  std::vector<PlanePoint> vertices;
  std::vector<double> times;
  std::vector<uint64_t> node_ids;
  uint64_t noise_seed = 0;
  double base_dt = 0.0;
};

}  // namespace sampler
}  // namespace windsoup
