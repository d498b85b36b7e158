#include <windsoup/sampler.hpp>

#include <algorithm>
#include <bit>
#include <cmath>
#include <stdexcept>

namespace windsoup::sampler {

namespace {

constexpr double kTwoPi = rng::kTwoPi;

// Segments passing within kRefineRadius excursion lengths of the marked
// point are candidates for bisection; beyond that the path strays near the
// point with probability under e^{-2 kRefineRadius^2}.
constexpr double kRefineRadius = 4.0;

void check_config(const SoupConfig& config) {
  if (!(config.alpha > 0.0)) throw std::domain_error("soup config: alpha must be positive");
  if (!(config.domain.radius > 0.0)) throw std::domain_error("soup config: radius must be positive");
  if (!(config.t_min > 0.0 && config.t_min < config.t_max))
    throw std::domain_error("soup config: need 0 < t_min < t_max");
  if (config.steps_per_unit_time < 1)
    throw std::domain_error("soup config: steps_per_unit_time must be >= 1");
}

double point_segment_distance(PlanePoint p, PlanePoint a, PlanePoint b) {
  const PlanePoint d = b - a;
  const double len2 = std::norm(d);
  if (len2 == 0.0) return std::abs(p - a);
  const PlanePoint pa = p - a;
  double t = (pa.real() * d.real() + pa.imag() * d.imag()) / len2;
  t = std::clamp(t, 0.0, 1.0);
  return std::abs(p - (a + t * d));
}

double time_of(const Loop& loop, uint64_t node_id) {
  return loop.duration * static_cast<double>(node_id) * 0x1p-48;
}

}  // namespace

double total_intensity_mass(const SoupConfig& config) {
  check_config(config);
  const double r = config.domain.radius;
  return 0.5 * r * r * (1.0 / config.t_min - 1.0 / config.t_max);
}

int bridge_steps(const SoupConfig& config, double duration) {
  if (!(duration > 0.0)) throw std::domain_error("bridge_steps: duration must be positive");
  const double raw = std::ceil(static_cast<double>(config.steps_per_unit_time) * duration);
  const uint64_t wanted = std::max<uint64_t>(16, static_cast<uint64_t>(raw));
  if (wanted > (1ULL << 26)) throw std::domain_error("bridge_steps: step count over 2^26");
  return static_cast<int>(std::bit_ceil(wanted));
}

Loop sample_bridge(PlanePoint x, double duration, int n_steps, rng::Stream& stream) {
  if (!(duration > 0.0)) throw std::domain_error("sample_bridge: duration must be positive");
  if (n_steps < 2) throw std::domain_error("sample_bridge: need at least two steps");
  if (!std::isfinite(x.real()) || !std::isfinite(x.imag()))
    throw std::domain_error("sample_bridge: root must be finite");

  const uint64_t n = static_cast<uint64_t>(n_steps);
  Loop loop;
  loop.root = x;
  loop.duration = duration;
  loop.noise_seed = stream.next_u64();
  loop.base_dt = duration / static_cast<double>(n);
  loop.vertices.assign(n + 1, x);
  loop.node_ids.resize(n + 1);
  loop.times.resize(n + 1);

  if (std::has_single_bit(n) && n <= kTimeOne) {
    const uint64_t stride = kTimeOne / n;
    for (uint64_t i = 0; i <= n; ++i) loop.node_ids[i] = i * stride;
    for (uint64_t span = n; span >= 2; span /= 2) {
      const uint64_t half = span / 2;
      const double seg_dt = duration * static_cast<double>(span) / static_cast<double>(n);
      const double sd = std::sqrt(0.25 * seg_dt);
      for (uint64_t i = 0; i < n; i += span) {
        const auto [g1, g2] = rng::node_gaussian(loop.noise_seed, loop.node_ids[i + half]);
        loop.vertices[i + half] = 0.5 * (loop.vertices[i] + loop.vertices[i + span]) +
                                  PlanePoint(sd * g1, sd * g2);
      }
    }
  } else {
    for (uint64_t i = 0; i <= n; ++i)
      loop.node_ids[i] =
          static_cast<uint64_t>((static_cast<unsigned __int128>(i) * kTimeOne) / n);
    for (uint64_t i = 1; i < n; ++i) {
      const double t_prev = time_of(loop, loop.node_ids[i - 1]);
      const double t_here = time_of(loop, loop.node_ids[i]);
      const double remaining = duration - t_prev;
      const double dt = t_here - t_prev;
      const double pull = dt / remaining;
      const double sd = std::sqrt(dt * (duration - t_here) / remaining);
      const auto [g1, g2] = stream.normal_pair();
      loop.vertices[i] = loop.vertices[i - 1] + pull * (x - loop.vertices[i - 1]) +
                         PlanePoint(sd * g1, sd * g2);
    }
  }
  for (uint64_t i = 0; i <= n; ++i) loop.times[i] = time_of(loop, loop.node_ids[i]);
  return loop;
}

namespace {

struct RefineSink {
  const Loop* in;
  PlanePoint x;
  double target;
  Loop out;

  bool should_split(uint64_t ida, uint64_t idb, PlanePoint va, PlanePoint vb) const {
    if (idb - ida <= 1) return false;
    const double seg_dt = in->duration * static_cast<double>(idb - ida) * 0x1p-48;
    const double excursion = std::sqrt(seg_dt);
    const double chord = std::abs(vb - va);
    if (std::max(excursion, chord) <= target) return false;
    return point_segment_distance(x, va, vb) < kRefineRadius * excursion;
  }

  // Emits the refinement of segment (ida, idb) excluding the left endpoint.
  // The left-child recursion depth is bounded by the id-gap halving.
  void descend(uint64_t ida, uint64_t idb, PlanePoint va, PlanePoint vb) {
    while (should_split(ida, idb, va, vb)) {
      const uint64_t mid = ida + (idb - ida) / 2;
      const double seg_dt = in->duration * static_cast<double>(idb - ida) * 0x1p-48;
      const double sd = std::sqrt(0.25 * seg_dt);
      const auto [g1, g2] = rng::node_gaussian(in->noise_seed, mid);
      const PlanePoint vm = 0.5 * (va + vb) + PlanePoint(sd * g1, sd * g2);
      descend(ida, mid, va, vm);
      ida = mid;
      va = vm;
    }
    out.vertices.push_back(vb);
    out.node_ids.push_back(idb);
  }
};

}  // namespace

Loop refine_near(const Loop& loop, PlanePoint x, double target_resolution) {
  if (loop.vertices.size() < 2 || loop.vertices.size() != loop.node_ids.size())
    throw std::invalid_argument("refine_near: malformed loop");
  if (!(loop.duration > 0.0)) throw std::invalid_argument("refine_near: malformed loop");
  if (!(target_resolution > 0.0))
    throw std::domain_error("refine_near: target resolution must be positive");

  RefineSink sink{&loop, x, target_resolution, Loop{}};
  sink.out.root = loop.root;
  sink.out.duration = loop.duration;
  sink.out.noise_seed = loop.noise_seed;
  sink.out.base_dt = loop.base_dt;
  sink.out.vertices.push_back(loop.vertices.front());
  sink.out.node_ids.push_back(loop.node_ids.front());
  for (std::size_t i = 0; i + 1 < loop.vertices.size(); ++i)
    sink.descend(loop.node_ids[i], loop.node_ids[i + 1], loop.vertices[i],
                 loop.vertices[i + 1]);

  Loop out = std::move(sink.out);
  out.times.resize(out.node_ids.size());
  for (std::size_t i = 0; i < out.node_ids.size(); ++i)
    out.times[i] = time_of(out, out.node_ids[i]);
  return out;
}

std::pair<PlanePoint, double> sample_root_and_duration(const SoupConfig& config,
                                                       rng::Stream& stream) {
  check_config(config);
  const double rad = config.domain.radius * std::sqrt(stream.uniform01());
  const double ang = kTwoPi * stream.uniform01();
  const PlanePoint root{rad * std::cos(ang), rad * std::sin(ang)};
  // Inverse CDF of the normalized 1/t^2 density on [t_min, t_max].
  const double lo = 1.0 / config.t_min;
  const double hi = 1.0 / config.t_max;
  const double duration = 1.0 / (lo - stream.uniform01() * (lo - hi));
  return {root, duration};
}

Loop make_candidate(const SoupConfig& config, rng::Stream& stream) {
  const auto [root, duration] = sample_root_and_duration(config, stream);
  return sample_bridge(root, duration, bridge_steps(config, duration), stream);
}

bool candidate_confined(const Loop& loop, const geometry::DiscDomain& domain) {
  const double limit = domain.radius - geometry::kExcursionCoeff * std::sqrt(loop.base_dt);
  if (!(limit > 0.0)) return false;
  const double limit2 = limit * limit;
  for (const PlanePoint& v : loop.vertices)
    if (std::norm(v) >= limit2) return false;
  return true;
}

LoopSoup sample_soup(const SoupConfig& config, rng::Stream& stream) {
  check_config(config);
  LoopSoup soup;
  soup.config = config;
  const uint64_t n_candidates = stream.poisson(config.alpha * total_intensity_mass(config));
  for (uint64_t i = 0; i < n_candidates; ++i) {
    Loop candidate = make_candidate(config, stream);
    ++soup.candidates_drawn;
    if (candidate_confined(candidate, config.domain)) {
      ++soup.accepted;
      soup.loops.push_back(std::move(candidate));
    }
  }
  return soup;
}

LoopSoup sample_soup(const SoupConfig& config) {
  rng::Stream stream = rng::Stream::for_replica(config.seed, config.replica_id);
  return sample_soup(config, stream);
}

}  // namespace windsoup::sampler
