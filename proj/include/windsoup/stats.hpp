#pragma once
// Small statistics kit for Monte Carlo verification: mean with standard
// error, Poisson goodness-of-fit z-scores, log-log slope fits, and a
// correlation-based independence check. All routines validate their inputs
// and throw std::invalid_argument / std::domain_error on misuse.

#include <complex>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace windsoup::stats {

struct Estimate {
  double mean = 0.0;
  double std_error = 0.0;  // sample sd (n-1 denominator) / sqrt(n)
  std::size_t n = 0;
};

struct ComplexEstimate {
  std::complex<double> mean{0.0, 0.0};
  double std_error_re = 0.0;
  double std_error_im = 0.0;
  std::size_t n = 0;
};

Estimate mc_mean_ci(std::span<const double> samples);
ComplexEstimate mc_mean_ci(std::span<const std::complex<double>> samples);

// z-scores of the sample mean and sample variance against Poisson(mean).
// Under the null, Var(sample mean) = mean/n and Var(sample variance) is
// (mean + 2 mean^2)/n to leading order (fourth central moment lambda+3
// lambda^2 minus sigma^4).
struct PoissonFit {
  double z_mean = 0.0;
  double z_var = 0.0;
  double sample_mean = 0.0;
  double sample_var = 0.0;
  std::size_t n = 0;
};

PoissonFit poisson_fit_test(std::span<const uint64_t> counts, double mean);

// Least-squares fit of log(value) against log(scale). Requires at least
// three points with positive coordinates.
struct SlopeFit {
  double slope = 0.0;
  double std_error = 0.0;
  double intercept = 0.0;
};

SlopeFit loglog_slope_fit(std::span<const std::pair<double, double>> points);

// Pearson correlation with the Fisher z statistic atanh(r) * sqrt(n - 3);
// |fisher_z| < 3 is the usual acceptance band for independent samples.
struct CorrTest {
  double correlation = 0.0;
  double fisher_z = 0.0;
  std::size_t n = 0;
};

CorrTest independence_corr(std::span<const double> x, std::span<const double> y);

}  // namespace windsoup::stats
