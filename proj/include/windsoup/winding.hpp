#pragma once
// Winding numbers of discrete loops and per-soup winding bookkeeping. The
// expensive work for one evaluation point is done once by winding_profile:
// loops are prefiltered by expanded bounding box, refined near the point,
// and reduced to (winding, maximal pullback radius) pairs from which counts
// and field values at every exclusion scale follow by thresholding.

#include <windsoup/geometry.hpp>
#include <windsoup/loop.hpp>
#include <windsoup/sampler.hpp>

#include <array>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace windsoup::winding {

// Evaluation point lies on (or within epsilon of) a path segment.
struct PointOnPathError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Turning-angle sum failed to land near an integer multiple of 2 pi.
struct ResidueError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct RawWinding {
  int n = 0;
  double residue = 0.0;       // |turning total/(2 pi) - nearest integer|
  double min_distance = 0.0;  // distance from x to the nearest segment
  int n_completed = 0;        // segments that contributed drawn extra turns
};

// Turning-angle winding of the polygon as given, no refinement, no throwing.
// Requires a closed loop (front == back).
RawWinding raw_winding(const sampler::Loop& loop, PlanePoint x);

// Winding of the continuous bridge the polygon discretizes, exact in law at
// any resolution: the polygon turning angles plus, for every segment whose
// excursion tube reaches x, an integer number of extra turns drawn from the
// angle law given the segment endpoints (exact::segment_angle_weight). The
// draws are counter-based, so the result is a pure function of the loop and
// x. Loops without a node schedule fall back to the plain polygon winding.
RawWinding bridge_winding(const sampler::Loop& loop, PlanePoint x);

// Winding of the Brownian loop around x: refines the path near x to
// target_resolution first, then applies bridge_winding. Throws
// PointOnPathError when x is within epsilon of the refined path and
// ResidueError when the angle sum is not within 0.01 turns of an integer.
int winding_number(const sampler::Loop& loop, PlanePoint x, double epsilon = 1e-9,
                   double target_resolution = 1e-6);

// Per-loop bounding boxes expanded by the excursion allowance
// kRefinePrefilterRadius * sqrt(base_dt); build once per soup and reuse
// across evaluation points.
struct SoupIndex {
  std::vector<std::array<double, 4>> box;  // min_re, max_re, min_im, max_im
};

SoupIndex index_soup(const sampler::LoopSoup& soup);

// Indices of loops whose path could wind around x. Loops outside the
// expanded box stray near x only through an excursion the allowance bounds,
// so the complement has winding zero.
std::vector<std::size_t> spatial_prefilter(const sampler::LoopSoup& soup,
                                           const SoupIndex& index, PlanePoint x);
std::vector<std::size_t> spatial_prefilter(const sampler::LoopSoup& soup,
                                           PlanePoint x);

struct ProfileEntry {
  std::size_t loop_index = 0;
  int n = 0;                  // nonzero winding around the profile point
  double max_pullback = 0.0;  // largest |j_x(v)| over the refined vertices
  double base_dt = 0.0;
};

struct WindingProfile {
  PlanePoint point{0.0, 0.0};
  std::vector<ProfileEntry> entries;
  uint64_t n_ill_conditioned = 0;  // skipped evaluations (point on path etc.)
};

WindingProfile winding_profile(const sampler::LoopSoup& soup, const SoupIndex& index,
                               PlanePoint x, double epsilon = 1e-9,
                               double target_resolution = 1e-6);
WindingProfile winding_profile(const sampler::LoopSoup& soup, PlanePoint x,
                               double epsilon = 1e-9, double target_resolution = 1e-6);

// Sum of windings over profiled loops not contained in the pullback ball of
// the given scale. margin < 0 selects the per-loop resolution-aware margin.
long winding_sum(const WindingProfile& profile, double scale, double margin = -1.0);

struct WindingSpectrum {
  PlanePoint point{0.0, 0.0};
  double exclusion_scale = 0.0;
  std::map<int, uint64_t> counts;  // nonzero winding -> loop count
  uint64_t n_ill_conditioned = 0;
};

WindingSpectrum spectrum_from_profile(const WindingProfile& profile, double scale,
                                      double margin = -1.0);
WindingSpectrum winding_spectrum(const sampler::LoopSoup& soup, PlanePoint x,
                                 double scale, double margin = -1.0);

}  // namespace windsoup::winding
