#include <windsoup/field.hpp>

#include <cmath>
#include <stdexcept>

namespace windsoup::field {

namespace {

constexpr double kPi = 3.14159265358979323846264338;
constexpr double kTwoPi = 2.0 * kPi;

double profile_epsilon(const sampler::LoopSoup& soup) {
  return 1e-9 * soup.config.domain.radius;
}

}  // namespace

double a_exponent(double beta) {
  if (!(beta >= 0.0 && beta <= kTwoPi))
    throw std::domain_error("a_exponent: beta must lie in [0, 2 pi]");
  return beta * (kTwoPi - beta) / (4.0 * kPi * kPi);
}

BetaField BetaField::constant(double beta) {
  a_exponent(beta);  // range check
  BetaField field;
  field.kind = Kind::kConstant;
  field.beta = beta;
  return field;
}

BetaField BetaField::radial_step(double inner, double outer, double radius) {
  a_exponent(inner);
  a_exponent(outer);
  if (!(radius > 0.0)) throw std::domain_error("BetaField: step radius must be positive");
  BetaField field;
  field.kind = Kind::kRadialStep;
  field.beta_inner = inner;
  field.beta_outer = outer;
  field.step_radius = radius;
  return field;
}

double BetaField::value_at(PlanePoint x) const {
  if (kind == Kind::kConstant) return beta;
  return std::abs(x) < step_radius ? beta_inner : beta_outer;
}

DeltaSchedule DeltaSchedule::geometric(double first, double ratio, int n_levels) {
  if (!(first > 0.0 && first < 1.0))
    throw std::domain_error("DeltaSchedule: first level must lie in (0,1)");
  if (!(ratio > 0.0 && ratio < 1.0))
    throw std::domain_error("DeltaSchedule: ratio must lie in (0,1)");
  if (n_levels < 1) throw std::domain_error("DeltaSchedule: need at least one level");
  DeltaSchedule schedule;
  schedule.levels.resize(n_levels);
  double level = first;
  for (int i = 0; i < n_levels; ++i, level *= ratio) schedule.levels[i] = level;
  return schedule;
}

std::complex<double> w_at(const sampler::LoopSoup& soup, PlanePoint x, double beta,
                          double scale, double margin) {
  a_exponent(beta);  // range check
  const winding::WindingProfile profile =
      winding::winding_profile(soup, x, profile_epsilon(soup));
  return std::polar(1.0, beta * static_cast<double>(winding::winding_sum(profile, scale, margin)));
}

MartingaleTrace martingale_trace(const sampler::LoopSoup& soup, PlanePoint x,
                                 double beta, const DeltaSchedule& schedule,
                                 double margin) {
  const double a = a_exponent(beta);
  if (schedule.levels.empty()) throw std::domain_error("martingale_trace: empty schedule");
  for (std::size_t i = 0; i + 1 < schedule.levels.size(); ++i)
    if (!(schedule.levels[i] > schedule.levels[i + 1]))
      throw std::domain_error("martingale_trace: schedule must be strictly decreasing");

  const winding::WindingProfile profile =
      winding::winding_profile(soup, x, profile_epsilon(soup));
  MartingaleTrace trace;
  trace.point = x;
  trace.alpha = soup.config.alpha;
  trace.beta = beta;
  trace.deltas = schedule.levels;
  trace.winding_sums.reserve(schedule.levels.size());
  trace.z.reserve(schedule.levels.size());
  for (double scale : schedule.levels) {
    const long s = winding::winding_sum(profile, scale, margin);
    trace.winding_sums.push_back(s);
    trace.z.push_back(std::polar(std::pow(scale, -trace.alpha * a),
                                 beta * static_cast<double>(s)));
  }
  return trace;
}

double TestFunction::value_at(PlanePoint x) const {
  const double q = std::norm(x) / (radius * radius);
  if (q >= 1.0) return 0.0;
  if (kind == Kind::kDiscIndicator) return 1.0;
  return std::exp(1.0 - 1.0 / (1.0 - q));
}

std::complex<double> field_integral(const sampler::LoopSoup& soup,
                                    const TestFunction& h, const BetaField& beta,
                                    double scale, int grid_n, double margin) {
  if (!(h.radius > 0.0)) throw std::domain_error("field_integral: support radius must be positive");
  if (h.radius >= soup.config.domain.radius)
    throw std::domain_error("field_integral: support must stay strictly inside the domain");
  if (grid_n < 1) throw std::domain_error("field_integral: grid_n must be >= 1");
  if (!(scale > 0.0 && scale < 1.0))
    throw std::domain_error("field_integral: scale must lie in (0,1)");

  const double alpha = soup.config.alpha;
  const double eps = profile_epsilon(soup);
  const double cell = 2.0 * h.radius / grid_n;
  const double cell_area = cell * cell;
  const winding::SoupIndex index = winding::index_soup(soup);

  std::complex<double> total{0.0, 0.0};
  for (int i = 0; i < grid_n; ++i) {
    for (int j = 0; j < grid_n; ++j) {
      const PlanePoint center{-h.radius + (i + 0.5) * cell, -h.radius + (j + 0.5) * cell};
      const double weight = h.value_at(center);
      if (weight == 0.0) continue;
      const double b = beta.value_at(center);
      const winding::WindingProfile profile =
          winding::winding_profile(soup, index, center, eps);
      const long s = winding::winding_sum(profile, scale, margin);
      total += weight * cell_area *
               std::polar(std::pow(scale, -alpha * a_exponent(b)),
                          b * static_cast<double>(s));
    }
  }
  return total;
}

FieldEstimate moment_estimate(std::span<const std::complex<double>> samples, int p) {
  if (p < 1) throw std::domain_error("moment_estimate: p must be >= 1");
  if (samples.size() < 2)
    throw std::invalid_argument("moment_estimate: need at least two samples");
  const std::size_t n = samples.size();
  std::vector<double> vals(n);
  double sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    vals[i] = std::pow(std::norm(samples[i]), p);
    sum += vals[i];
  }
  const double mean = sum / static_cast<double>(n);
  // Leave-one-out jackknife of the mean statistic.
  double ss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double loo = (sum - vals[i]) / static_cast<double>(n - 1);
    ss += (loo - mean) * (loo - mean);
  }
  const double se = std::sqrt(ss * static_cast<double>(n - 1) / static_cast<double>(n));
  return {mean, se, n};
}

}  // namespace windsoup::field
