#include <windsoup/geometry.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace windsoup::geometry {

PlanePoint uniformizer(const DiscDomain& domain, PlanePoint x, PlanePoint z) {
  const double r = domain.radius;
  if (!(r > 0.0)) throw std::domain_error("uniformizer: domain radius must be positive");
  if (!(std::abs(x) < r)) throw std::domain_error("uniformizer: base point outside open domain");
  const PlanePoint a = x / r;
  const PlanePoint w = z / r;
  return (w - a) / (1.0 - std::conj(a) * w);
}

bool in_pullback_ball(const PullbackBall& ball, const DiscDomain& domain,
                      PlanePoint z) {
  if (!(ball.scale > 0.0 && ball.scale < 1.0))
    throw std::domain_error("in_pullback_ball: scale must lie in (0,1)");
  return std::abs(uniformizer(domain, ball.center, z)) < ball.scale;
}

double max_pullback_radius(const sampler::Loop& loop, PlanePoint x,
                           const DiscDomain& domain) {
  const double r = domain.radius;
  if (!(r > 0.0)) throw std::domain_error("max_pullback_radius: domain radius must be positive");
  if (!(std::abs(x) < r)) throw std::domain_error("max_pullback_radius: base point outside open domain");
  const PlanePoint a = x / r;
  const PlanePoint ca = std::conj(a);
  double best = 0.0;
  for (const PlanePoint& v : loop.vertices) {
    const PlanePoint w = v / r;
    best = std::max(best, std::abs((w - a) / (1.0 - ca * w)));
  }
  return best;
}

bool loop_contained_in_ball(const sampler::Loop& loop, const PullbackBall& ball,
                            const DiscDomain& domain, double margin) {
  if (!(ball.scale > 0.0 && ball.scale < 1.0))
    throw std::domain_error("loop_contained_in_ball: scale must lie in (0,1)");
  if (!(margin >= 0.0 && margin < 1.0))
    throw std::domain_error("loop_contained_in_ball: margin must lie in [0,1)");
  if (loop.vertices.empty())
    throw std::invalid_argument("loop_contained_in_ball: loop has no vertices");
  const double limit = ball.scale * (1.0 - margin);
  return max_pullback_radius(loop, ball.center, domain) < limit;
}

double auto_margin(double base_dt, double scale) {
  if (!(base_dt >= 0.0)) throw std::domain_error("auto_margin: negative step");
  if (!(scale > 0.0)) throw std::domain_error("auto_margin: scale must be positive");
  return std::clamp(kExcursionCoeff * std::sqrt(base_dt) / scale, 0.0, 0.35);
}

}  // namespace windsoup::geometry
