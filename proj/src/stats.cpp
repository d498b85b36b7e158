#include <windsoup/stats.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace windsoup::stats {

namespace {

// Two-pass mean and unbiased variance.
std::pair<double, double> mean_var(std::span<const double> xs) {
  const std::size_t n = xs.size();
  double sum = 0.0;
  for (double x : xs) sum += x;
  const double mean = sum / static_cast<double>(n);
  double ss = 0.0;
  for (double x : xs) ss += (x - mean) * (x - mean);
  const double var = n > 1 ? ss / static_cast<double>(n - 1) : 0.0;
  return {mean, var};
}

}  // namespace

Estimate mc_mean_ci(std::span<const double> samples) {
  // A lone sample would report std_error 0 and defeat every z-score gate.
  if (samples.size() < 2) throw std::invalid_argument("mc_mean_ci: need at least two samples");
  const auto [mean, var] = mean_var(samples);
  return {mean, std::sqrt(var / static_cast<double>(samples.size())), samples.size()};
}

ComplexEstimate mc_mean_ci(std::span<const std::complex<double>> samples) {
  if (samples.size() < 2) throw std::invalid_argument("mc_mean_ci: need at least two samples");
  std::vector<double> re(samples.size()), im(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) {
    re[i] = samples[i].real();
    im[i] = samples[i].imag();
  }
  const Estimate er = mc_mean_ci(re);
  const Estimate ei = mc_mean_ci(im);
  return {{er.mean, ei.mean}, er.std_error, ei.std_error, samples.size()};
}

PoissonFit poisson_fit_test(std::span<const uint64_t> counts, double mean) {
  if (counts.size() < 2) throw std::invalid_argument("poisson_fit_test: need at least two counts");
  if (!(mean > 0.0)) throw std::domain_error("poisson_fit_test: mean must be positive");
  std::vector<double> xs(counts.size());
  for (std::size_t i = 0; i < counts.size(); ++i) xs[i] = static_cast<double>(counts[i]);
  const auto [m, v] = mean_var(xs);
  const double n = static_cast<double>(counts.size());
  const double se_mean = std::sqrt(mean / n);
  const double se_var = std::sqrt((mean + 2.0 * mean * mean) / n);
  return {(m - mean) / se_mean, (v - mean) / se_var, m, v, counts.size()};
}

SlopeFit loglog_slope_fit(std::span<const std::pair<double, double>> points) {
  if (points.size() < 3) throw std::invalid_argument("loglog_slope_fit: need at least three points");
  const std::size_t n = points.size();
  std::vector<double> lx(n), ly(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (!(points[i].first > 0.0 && points[i].second > 0.0))
      throw std::domain_error("loglog_slope_fit: coordinates must be positive");
    lx[i] = std::log(points[i].first);
    ly[i] = std::log(points[i].second);
  }
  const auto [mx, vx] = mean_var(lx);
  const auto [my, vy] = mean_var(ly);
  (void)vy;
  if (!(vx > 0.0)) throw std::domain_error("loglog_slope_fit: scales are all equal");
  double sxy = 0.0;
  for (std::size_t i = 0; i < n; ++i) sxy += (lx[i] - mx) * (ly[i] - my);
  const double sxx = vx * static_cast<double>(n - 1);
  const double slope = sxy / sxx;
  const double intercept = my - slope * mx;
  double rss = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double r = ly[i] - intercept - slope * lx[i];
    rss += r * r;
  }
  const double se = std::sqrt(rss / static_cast<double>(n - 2) / sxx);
  return {slope, se, intercept};
}

CorrTest independence_corr(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw std::invalid_argument("independence_corr: length mismatch");
  if (x.size() < 4) throw std::invalid_argument("independence_corr: need at least four pairs");
  const auto [mx, vx] = mean_var(x);
  const auto [my, vy] = mean_var(y);
  if (!(vx > 0.0) || !(vy > 0.0))
    throw std::domain_error("independence_corr: degenerate sample (zero variance)");
  double sxy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) sxy += (x[i] - mx) * (y[i] - my);
  const double n1 = static_cast<double>(x.size() - 1);
  const double r = sxy / n1 / std::sqrt(vx * vy);
  const double rc = std::clamp(r, -0.999999999999, 0.999999999999);
  const double fisher = std::atanh(rc) * std::sqrt(static_cast<double>(x.size()) - 3.0);
  return {r, fisher, x.size()};
}

}  // namespace windsoup::stats
