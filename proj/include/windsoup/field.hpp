#pragma once
// The renormalized winding field: phase factors e^{i beta S} of truncated
// winding sums, their martingale normalization delta^{-alpha a(beta)}, and
// integrals against test functions. The normalization exponent a(beta) =
// beta (2 pi - beta) / (4 pi^2) makes the level sequence a martingale in the
// exclusion scale.

#include <windsoup/sampler.hpp>
#include <windsoup/winding.hpp>

#include <complex>
#include <span>
#include <vector>

namespace windsoup::field {

// Exponent of the scale law. Requires beta in [0, 2 pi].
double a_exponent(double beta);

// Angle parameter as a function of position: constant, or a radial step
// taking beta_inner inside step_radius and beta_outer outside.
struct BetaField {
  enum class Kind { kConstant, kRadialStep } kind = Kind::kConstant;
  double beta = 0.0;
  double beta_inner = 0.0;
  double beta_outer = 0.0;
  double step_radius = 0.0;

  static BetaField constant(double beta);
  static BetaField radial_step(double inner, double outer, double radius);
  double value_at(PlanePoint x) const;
};

// Strictly decreasing exclusion scales in (0,1).
struct DeltaSchedule {
  std::vector<double> levels;
  static DeltaSchedule geometric(double first, double ratio, int n_levels);
};

// Phase factor e^{i beta S} of the winding sum at one exclusion scale.
// Unit modulus by construction. margin < 0 selects the resolution-aware
// containment margin.
std::complex<double> w_at(const sampler::LoopSoup& soup, PlanePoint x, double beta,
                          double scale, double margin = -1.0);

struct MartingaleTrace {
  PlanePoint point{0.0, 0.0};
  double alpha = 0.0;
  double beta = 0.0;
  std::vector<double> deltas;
  std::vector<long> winding_sums;
  std::vector<std::complex<double>> z;  // |z[k]| == deltas[k]^{-alpha a(beta)}
};

// Normalized field values along a schedule, all derived from a single
// winding profile so the levels are exactly coupled. alpha is taken from
// the soup's own intensity.
MartingaleTrace martingale_trace(const sampler::LoopSoup& soup, PlanePoint x,
                                 double beta, const DeltaSchedule& schedule,
                                 double margin = -1.0);

// Radial test functions: an indicator of the disc of the given radius, or a
// smooth bump exp(1 - 1/(1 - (|x|/radius)^2)) supported on it.
struct TestFunction {
  enum class Kind { kDiscIndicator, kBump } kind = Kind::kDiscIndicator;
  double radius = 0.5;
  double value_at(PlanePoint x) const;
};

// Midpoint-rule integral of h(x) delta^{-alpha a(beta(x))} e^{i beta(x) S(x)}
// over the support of h on an n x n grid. The support must stay strictly
// inside the domain (std::domain_error otherwise).
std::complex<double> field_integral(const sampler::LoopSoup& soup,
                                    const TestFunction& h, const BetaField& beta,
                                    double scale, int grid_n, double margin = -1.0);

struct FieldEstimate {
  double value = 0.0;
  double std_error = 0.0;  // leave-one-out jackknife
  std::size_t n = 0;
};

// 2p-th absolute moment E |I|^{2p} of replica field integrals.
FieldEstimate moment_estimate(std::span<const std::complex<double>> samples, int p);

}  // namespace windsoup::field
