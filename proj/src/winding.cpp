#include <windsoup/winding.hpp>

#include <windsoup/exact.hpp>

#include <algorithm>
#include <cmath>
#include <limits>

namespace windsoup::winding {

namespace {

constexpr double kTwoPi = rng::kTwoPi;
constexpr double kResidueLimit = 0.01;

// Matches the refinement trigger radius in the sampler: a path segment only
// reaches kPrefilterRadius excursion lengths past its vertices with
// probability around e^{-2 kPrefilterRadius^2}.
constexpr double kPrefilterRadius = 4.0;

// Key salt for the completion draws; keyed on (noise_seed, left node id) so
// the draw is a pure function of the loop and the segment.
constexpr uint64_t kCompletionSalt = 0x39a6f2c41e85d7b3ULL;

// Once the principal-angle class outweighs every other class by e^{60} or
// more, sampling is deterministic and the weights need not be evaluated.
constexpr double kCertainLumpExp = 80.0;

double point_segment_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
  const PlanePoint d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const PlanePoint pa = p - a;
  double t = (pa.real() * d.real() + pa.imag() * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

// Number of extra turns the bridge segment makes around the marked point
// beyond its chord's principal angle delta, drawn from the exact law given
// the segment endpoints. The lattice weights are scanned outward from zero
// against the closed-form total mass (1/2) e^{rho (1 + cos delta)}, so the
// scan usually stops after one or two weight evaluations; the residual mass
// past the scan cap (under 1e-3 of the total, reached only for vanishing
// rho) is folded into the last class, which no small-class statistic can
// distinguish from the truth.
int sample_segment_completion(double rho, double delta, uint64_t noise_seed,
                              uint64_t left_node_id) {
  const double lump_exp = rho * (1.0 + std::cos(delta));
  if (lump_exp > kCertainLumpExp) return 0;
  const double norm = 0.5 * std::exp(lump_exp);
  const double u =
      rng::to_unit01(rng::mix64(noise_seed ^ rng::mix64(left_node_id + kCompletionSalt)));
  const double needed = u * norm;
  double cum = 0.0;
  int m = 0;
  for (int step = 0; step < 4096; ++step) {
    m = step % 2 == 0 ? step / 2 : -(step / 2 + 1);
    const double w = exact::segment_angle_weight(rho, delta + kTwoPi * m);
    cum += std::max(w, 0.0);
    if (cum >= needed) break;
  }
  return m;
}

RawWinding winding_walk(const sampler::Loop& loop, PlanePoint x, bool complete) {
  if (loop.vertices.size() < 3)
    throw std::invalid_argument("raw_winding: loop needs at least three vertices");
  if (loop.vertices.front() != loop.vertices.back())
    throw std::invalid_argument("raw_winding: loop is not closed");
  const bool has_schedule =
      complete && loop.node_ids.size() == loop.vertices.size() && loop.duration > 0.0;
  double total = 0.0;
  double min_dist = std::numeric_limits<double>::infinity();
  long completion = 0;
  int n_completed = 0;
  PlanePoint prev = loop.vertices.front() - x;
  for (std::size_t i = 1; i < loop.vertices.size(); ++i) {
    const PlanePoint cur = loop.vertices[i] - x;
    const double delta =
        std::atan2(prev.real() * cur.imag() - prev.imag() * cur.real(),
                   prev.real() * cur.real() + prev.imag() * cur.imag());
    total += delta;
    const double dist =
        point_segment_distance(x, loop.vertices[i - 1], loop.vertices[i]);
    min_dist = std::min(min_dist, dist);
    if (has_schedule) {
      const double seg_dt = loop.duration *
                            static_cast<double>(loop.node_ids[i] - loop.node_ids[i - 1]) *
                            0x1p-48;
      // Beyond kPrefilterRadius excursion lengths from the chord the segment
      // adds a turn only with probability around e^{-32}; inside, draw the
      // missing turns from the exact law.
      if (seg_dt > 0.0 && dist < kPrefilterRadius * std::sqrt(seg_dt)) {
        const double r1 = std::abs(prev);
        const double r2 = std::abs(cur);
        if (r1 > 0.0 && r2 > 0.0) {
          const int m = sample_segment_completion(r1 * r2 / seg_dt, delta,
                                                  loop.noise_seed, loop.node_ids[i - 1]);
          if (m != 0) {
            completion += m;
            ++n_completed;
          }
        }
      }
    }
    prev = cur;
  }
  const double turns = total / kTwoPi;
  RawWinding out;
  out.min_distance = min_dist;
  if (!std::isfinite(turns)) {  // malformed vertices; surface as residue failure
    out.residue = std::numeric_limits<double>::infinity();
    return out;
  }
  const double rounded = std::round(turns);
  out.n = static_cast<int>(rounded + static_cast<double>(completion));
  out.residue = std::abs(turns - rounded);
  out.n_completed = n_completed;
  return out;
}

}  // namespace

RawWinding raw_winding(const sampler::Loop& loop, PlanePoint x) {
  return winding_walk(loop, x, false);
}

RawWinding bridge_winding(const sampler::Loop& loop, PlanePoint x) {
  return winding_walk(loop, x, true);
}

int winding_number(const sampler::Loop& loop, PlanePoint x, double epsilon,
                   double target_resolution) {
  if (!(epsilon > 0.0)) throw std::domain_error("winding_number: epsilon must be positive");
  const sampler::Loop refined = sampler::refine_near(loop, x, target_resolution);
  const RawWinding w = bridge_winding(refined, x);
  if (w.min_distance <= epsilon)
    throw PointOnPathError("winding_number: point within epsilon of the path");
  if (!(w.residue < kResidueLimit))
    throw ResidueError("winding_number: turning-angle residue too large");
  return w.n;
}

SoupIndex index_soup(const sampler::LoopSoup& soup) {
  SoupIndex index;
  index.box.resize(soup.loops.size());
  for (std::size_t i = 0; i < soup.loops.size(); ++i) {
    const sampler::Loop& loop = soup.loops[i];
    double min_re = loop.root.real(), max_re = loop.root.real();
    double min_im = loop.root.imag(), max_im = loop.root.imag();
    for (const PlanePoint& v : loop.vertices) {
      min_re = std::min(min_re, v.real());
      max_re = std::max(max_re, v.real());
      min_im = std::min(min_im, v.imag());
      max_im = std::max(max_im, v.imag());
    }
    const double pad = kPrefilterRadius * std::sqrt(loop.base_dt);
    index.box[i] = {min_re - pad, max_re + pad, min_im - pad, max_im + pad};
  }
  return index;
}

std::vector<std::size_t> spatial_prefilter(const sampler::LoopSoup& soup,
                                           const SoupIndex& index, PlanePoint x) {
  if (index.box.size() != soup.loops.size())
    throw std::invalid_argument("spatial_prefilter: index does not match soup");
  std::vector<std::size_t> selected;
  for (std::size_t i = 0; i < index.box.size(); ++i) {
    const auto& b = index.box[i];
    if (x.real() > b[0] && x.real() < b[1] && x.imag() > b[2] && x.imag() < b[3])
      selected.push_back(i);
  }
  return selected;
}

std::vector<std::size_t> spatial_prefilter(const sampler::LoopSoup& soup, PlanePoint x) {
  return spatial_prefilter(soup, index_soup(soup), x);
}

WindingProfile winding_profile(const sampler::LoopSoup& soup, const SoupIndex& index,
                               PlanePoint x, double epsilon, double target_resolution) {
  if (!(epsilon > 0.0)) throw std::domain_error("winding_profile: epsilon must be positive");
  WindingProfile profile;
  profile.point = x;
  for (std::size_t i : spatial_prefilter(soup, index, x)) {
    const sampler::Loop refined = sampler::refine_near(soup.loops[i], x, target_resolution);
    const RawWinding w = bridge_winding(refined, x);
    if (w.min_distance <= epsilon || !(w.residue < kResidueLimit)) {
      ++profile.n_ill_conditioned;
      continue;
    }
    if (w.n == 0) continue;
    profile.entries.push_back(
        {i, w.n, geometry::max_pullback_radius(refined, x, soup.config.domain),
         soup.loops[i].base_dt});
  }
  return profile;
}

WindingProfile winding_profile(const sampler::LoopSoup& soup, PlanePoint x,
                               double epsilon, double target_resolution) {
  return winding_profile(soup, index_soup(soup), x, epsilon, target_resolution);
}

long winding_sum(const WindingProfile& profile, double scale, double margin) {
  if (!(scale > 0.0 && scale < 1.0))
    throw std::domain_error("winding_sum: scale must lie in (0,1)");
  long sum = 0;
  for (const ProfileEntry& e : profile.entries) {
    const double m = margin < 0.0 ? geometry::auto_margin(e.base_dt, scale) : margin;
    if (e.max_pullback >= scale * (1.0 - m)) sum += e.n;
  }
  return sum;
}

WindingSpectrum spectrum_from_profile(const WindingProfile& profile, double scale,
                                      double margin) {
  if (!(scale > 0.0 && scale < 1.0))
    throw std::domain_error("winding_spectrum: scale must lie in (0,1)");
  WindingSpectrum spectrum;
  spectrum.point = profile.point;
  spectrum.exclusion_scale = scale;
  spectrum.n_ill_conditioned = profile.n_ill_conditioned;
  for (const ProfileEntry& e : profile.entries) {
    const double m = margin < 0.0 ? geometry::auto_margin(e.base_dt, scale) : margin;
    if (e.max_pullback >= scale * (1.0 - m)) ++spectrum.counts[e.n];
  }
  return spectrum;
}

WindingSpectrum winding_spectrum(const sampler::LoopSoup& soup, PlanePoint x,
                                 double scale, double margin) {
  return spectrum_from_profile(winding_profile(soup, x), scale, margin);
}

}  // namespace windsoup::winding
