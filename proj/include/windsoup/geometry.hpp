#pragma once
// Conformal geometry of the disc domain: the uniformizing map that sends a
// marked interior point to the origin, and containment tests against its
// pullback balls. Containment of sampled paths is always tested on vertices
// with a margin compensating the excursions a discrete path hides between
// vertices; the margin scales like sqrt(step) so estimates are stable under
// resolution changes.

#include <windsoup/loop.hpp>

namespace windsoup::geometry {

struct DiscDomain {
  double radius = 1.0;
};

// Preimage of the ball of radius `scale` under the uniformizer at `center`:
// the set { z : |j_center(z)| < scale }. Requires 0 < scale < 1.
struct PullbackBall {
  PlanePoint center{0.0, 0.0};
  double scale = 0.5;
};

// Vertex-margin coefficient: margins are kExcursionCoeff * sqrt(step). The
// value is calibrated so that the overshoot of the true path beyond its
// vertices cancels against the shrunken acceptance region; see the field
// tests for the calibration harness.
inline constexpr double kExcursionCoeff = 0.65;

// Moebius map of the disc of radius `domain.radius` onto the unit disc taking
// x to 0. Throws std::domain_error unless x lies strictly inside the domain.
PlanePoint uniformizer(const DiscDomain& domain, PlanePoint x, PlanePoint z);

bool in_pullback_ball(const PullbackBall& ball, const DiscDomain& domain,
                      PlanePoint z);

// Largest |j_x(v)| over the loop's vertices.
double max_pullback_radius(const sampler::Loop& loop, PlanePoint x,
                           const DiscDomain& domain);

// True when every vertex v satisfies |j_center(v)| < scale * (1 - margin).
// `margin` is a fraction of the ball's scale; pass auto_margin() for the
// resolution-compensating default rather than a fixed fraction.
bool loop_contained_in_ball(const sampler::Loop& loop, const PullbackBall& ball,
                            const DiscDomain& domain, double margin = 0.05);

// Resolution-aware containment margin, as a fraction of a ball of the given
// scale: kExcursionCoeff * sqrt(step) / scale, clamped to [0, 0.35].
double auto_margin(double base_dt, double scale);

}  // namespace windsoup::geometry
