#pragma once
// Poissonian loop ensembles on a disc. Roots and durations follow the
// dA x dt / (2 pi t^2) intensity restricted to [t_min, t_max]; paths are
// Brownian bridges realized on dyadic grids. Every candidate consumes a
// fixed number of stream draws (noise along the path is counter based), so
// the candidate sequence of a replica is identical at every resolution:
// raising steps_per_unit_time refines the same loops in place, vertex by
// vertex, at the shared dyadic nodes.

#include <windsoup/geometry.hpp>
#include <windsoup/loop.hpp>
#include <windsoup/rng.hpp>

#include <cstdint>
#include <utility>
#include <vector>

namespace windsoup::sampler {

struct SoupConfig {
  double alpha = 1.0;
  geometry::DiscDomain domain{1.0};
  double t_min = 1e-4;
  double t_max = 20.0;
  int steps_per_unit_time = 2048;
  uint64_t seed = 0;
  uint64_t replica_id = 0;
};

struct LoopSoup {
  SoupConfig config;
  std::vector<Loop> loops;
  uint64_t candidates_drawn = 0;
  uint64_t accepted = 0;
};

// Total mass of the root-duration intensity over the domain:
// area * (1/t_min - 1/t_max) / (2 pi). The candidate count of a soup is
// Poisson with mean alpha times this.
double total_intensity_mass(const SoupConfig& config);

// Step count for a loop of the given duration: steps_per_unit_time * duration
// (at least 16), rounded up to a power of two so the grid is dyadic.
int bridge_steps(const SoupConfig& config, double duration);

// Closed Brownian bridge from x to x of the given duration on n_steps
// uniform steps. Power-of-two step counts are built midpoint-first from
// counter-based noise; other counts fall back to a sequential conditional
// construction that consumes stream normals.
Loop sample_bridge(PlanePoint x, double duration, int n_steps, rng::Stream& stream);

// Law-preserving local refinement: segments passing within a few excursion
// lengths of x are bisected (reusing the loop's own noise counters) until
// their extent near x drops below target_resolution. Vertices away from x
// are returned unchanged, so windings and containment tests computed far
// from x are unaffected.
Loop refine_near(const Loop& loop, PlanePoint x, double target_resolution);

// One draw of the root-duration intensity, normalized to a probability on
// domain x [t_min, t_max]. Durations use the exact inverse CDF of dt/t^2.
std::pair<PlanePoint, double> sample_root_and_duration(const SoupConfig& config,
                                                       rng::Stream& stream);

// Root, duration and bridge for one candidate loop, before any confinement
// test. Consumes exactly four stream words.
Loop make_candidate(const SoupConfig& config, rng::Stream& stream);

// Vertex test for keeping a candidate inside the domain, with the
// excursion-compensating margin kExcursionCoeff * sqrt(base_dt).
bool candidate_confined(const Loop& loop, const geometry::DiscDomain& domain);

// Poisson number of candidates, thinned by confinement.
LoopSoup sample_soup(const SoupConfig& config, rng::Stream& stream);

// Same, with the stream derived from (config.seed, config.replica_id).
LoopSoup sample_soup(const SoupConfig& config);

}  // namespace windsoup::sampler
