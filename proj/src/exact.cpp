#include <windsoup/exact.hpp>

#include <windsoup/quadrature.hpp>

#include <cmath>
#include <stdexcept>

namespace windsoup::exact {

namespace {

constexpr double kPi = 3.14159265358979323846264338;
constexpr double kTwoPi = 2.0 * kPi;

// Rational kernel of the contour representation for winding class k >= 1.
// Summing it over k telescopes to 1 / (v^2 + pi^2), which is what couples
// the per-class masses to the n = 0 mass below.
double class_kernel(double v, int k) {
  const double lo = (2.0 * k - 1.0) * kPi;
  const double hi = (2.0 * k + 1.0) * kPi;
  return (2.0 * k - 1.0) / (v * v + lo * lo) - (2.0 * k + 1.0) / (v * v + hi * hi);
}

void check_pmf_args(double r) {
  if (!(r >= 1e-12) || !std::isfinite(r))
    throw std::domain_error("winding_pmf: r must lie in [1e-12, inf)");
}

}  // namespace

double bessel_i(double order, double x) {
  if (!(order >= 0.0)) throw std::domain_error("bessel_i: order must be >= 0");
  if (!(x >= 0.0)) throw std::domain_error("bessel_i: argument must be >= 0");
  if (x == 0.0) return order == 0.0 ? 1.0 : 0.0;
  const double half = 0.5 * x;
  const double log_t0 = order * std::log(half) - std::lgamma(order + 1.0);
  if (log_t0 > 709.0) throw std::range_error("bessel_i: overflow");
  double term = std::exp(log_t0);
  if (term == 0.0) return 0.0;  // below the subnormal range for this order
  double sum = term;
  const double q = half * half;
  for (long k = 0; k < 1000000; ++k) {
    term *= q / ((static_cast<double>(k) + 1.0) * (order + static_cast<double>(k) + 1.0));
    sum += term;
    if (std::isinf(sum)) throw std::range_error("bessel_i: overflow");
    if (term <= sum * 1e-17) return sum;
  }
  throw std::range_error("bessel_i: series did not converge");
}

double winding_pmf_contour(int n, double r) {
  check_pmf_args(r);
  const double xi = r * r;
  if (xi > 400.0) return 0.0;  // value below 1e-300
  const double t_max = std::acosh(1.0 + 50.0 / xi);
  // Tolerance tracks the e^{-2 xi} magnitude of the result so large-r values
  // keep relative accuracy without wasting depth.
  const double tol = std::max(1e-16, 1e-12 * std::exp(-2.0 * xi));
  if (n == 0) {
    const auto f = [xi](double v) {
      return std::exp(-xi * (1.0 + std::cosh(v))) / (v * v + kPi * kPi);
    };
    return 1.0 / kTwoPi - quadrature::integrate(f, 0.0, t_max, tol) / kPi;
  }
  const int k = std::abs(n);
  const auto f = [xi, k](double v) {
    return std::exp(-xi * (1.0 + std::cosh(v))) * class_kernel(v, k);
  };
  return quadrature::integrate(f, 0.0, t_max, tol) / kPi;
}

double winding_pmf_fourier(int n, double r) {
  check_pmf_args(r);
  const double xi = r * r;
  if (xi > 100.0) return 0.0;  // value below 1e-80; series route too slow here
  const double scale = std::exp(-xi);
  const int k = std::abs(n);
  // Integrand decays faster than geometrically once the order exceeds the
  // argument; beyond u_max the terms are under 1e-18 of the total.
  const double u_max = 25.0 + 2.2 * xi;
  const auto f = [xi, scale, k](double u) {
    return scale * bessel_i(u, xi) * std::cos(kTwoPi * k * u);
  };
  // Unit subintervals keep the oscillation count per panel bounded.
  double total = 0.0;
  for (double a = 0.0; a < u_max; a += 1.0) {
    const double b = std::min(a + 1.0, u_max);
    total += quadrature::integrate(f, a, b, 1e-13);
  }
  return (n == 0 ? 1.0 : 2.0) * total / kPi;
}

double segment_angle_weight(double rho, double theta) {
  if (!(rho > 0.0) || !std::isfinite(rho))
    throw std::domain_error("segment_angle_weight: rho must be positive and finite");
  if (!std::isfinite(theta))
    throw std::domain_error("segment_angle_weight: theta must be finite");
  const double lump_exp = rho * (1.0 + std::cos(theta));
  if (lump_exp > 709.0) throw std::range_error("segment_angle_weight: overflow");
  const double ap = kPi + theta;
  const double am = kPi - theta;
  const auto f = [rho, ap, am](double v) {
    // rho (cosh v - 1) without overflow at large v (only reached when rho is
    // tiny, where the product stays moderate).
    const double expo = v > 30.0 ? 0.5 * rho * std::exp(v)
                                 : 2.0 * rho * std::pow(std::sinh(0.5 * v), 2);
    if (expo > 700.0) return 0.0;
    return std::exp(-expo) *
           (ap / (v * v + ap * ap) + am / (v * v + am * am));
  };
  const double v_max = std::acosh(1.0 + 50.0 / rho);
  // Octave panels starting at the sharper of the two rational knees keep at
  // most one scale of variation per panel, so the per-panel rule converges
  // at shallow depth even when theta sits next to +-pi.
  double knee = std::min(std::min(std::abs(ap), std::abs(am)), 1.0);
  knee = std::max(knee, 1e-16);
  double tail = 0.0;
  double lo = 0.0;
  double hi = std::min(knee, v_max);
  while (lo < v_max) {
    tail += quadrature::integrate(f, lo, hi, 1e-13, 10);
    lo = hi;
    hi = std::min(2.0 * hi, v_max);
  }
  // The cos-transform lump sits at |theta|; on the boundary |theta| = pi it
  // carries half weight, which equals the two-sided limit (the vanishing
  // rational knee compensates the full lump continuously on either side).
  const double at = std::abs(theta);
  const double lump_scale = at < kPi ? 0.5 : (at == kPi ? 0.25 : 0.0);
  return lump_scale * std::exp(lump_exp) - tail / kTwoPi;
}

double winding_area_mass(int k) {
  if (k == 0) throw std::domain_error("winding_area_mass: k must be nonzero");
  const double kk = static_cast<double>(k) * static_cast<double>(k);
  return 1.0 / (2.0 * kPi * kPi * kk);
}

double winding_area_mass_quadrature(int k) {
  if (k == 0) throw std::domain_error("winding_area_mass_quadrature: k must be nonzero");
  const auto f = [k](double r) { return r * winding_pmf_contour(k, r); };
  // The integrand vanishes at both ends (like 1/|log r| near zero and like
  // e^{-2 r^2} at infinity); the split keeps the adaptive depth small.
  const double head = quadrature::integrate(f, 1e-9, 0.25, 1e-8);
  const double mid = quadrature::integrate(f, 0.25, 1.25, 1e-8);
  const double tail = quadrature::integrate(f, 1.25, 4.5, 1e-8);
  return kTwoPi * (head + mid + tail);
}

double expected_winding_count(double alpha, double R, double delta, int k) {
  if (!(alpha > 0.0)) throw std::domain_error("expected_winding_count: alpha must be positive");
  if (!(R > 0.0) || !(delta > 0.0) || !(delta < R))
    throw std::domain_error("expected_winding_count: need 0 < delta < R");
  if (k == 0) throw std::domain_error("expected_winding_count: k must be nonzero");
  const double kk = static_cast<double>(k) * static_cast<double>(k);
  return alpha * std::log(R / delta) / (2.0 * kPi * kPi * kk);
}

double expected_winding_phase(double alpha, double beta, double delta) {
  if (!(alpha > 0.0)) throw std::domain_error("expected_winding_phase: alpha must be positive");
  if (!(beta >= 0.0 && beta <= kTwoPi))
    throw std::domain_error("expected_winding_phase: beta must lie in [0, 2 pi]");
  if (!(delta > 0.0 && delta < 1.0))
    throw std::domain_error("expected_winding_phase: delta must lie in (0,1)");
  const double a = beta * (kTwoPi - beta) / (4.0 * kPi * kPi);
  return std::pow(delta, alpha * a);
}

double a_exponent_series_partial(double beta, long n_terms) {
  if (n_terms < 1) throw std::domain_error("a_exponent_series_partial: need n_terms >= 1");
  if (!std::isfinite(beta)) throw std::domain_error("a_exponent_series_partial: beta must be finite");
  // Summed smallest-first so the partial sum carries no accumulation error
  // visible at the 1e-12 scale.
  double sum = 0.0;
  for (long k = n_terms; k >= 1; --k) {
    const double kd = static_cast<double>(k);
    sum += (1.0 - std::cos(kd * beta)) / (kd * kd);
  }
  return sum / (kPi * kPi);
}

WindingPmfTable make_pmf_table(const std::vector<int>& n_values,
                               const std::vector<double>& r_values) {
  if (n_values.empty() || r_values.empty())
    throw std::invalid_argument("make_pmf_table: empty axis");
  WindingPmfTable table;
  table.n_values = n_values;
  table.r_values = r_values;
  table.values.resize(n_values.size());
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    table.values[i].resize(r_values.size());
    for (std::size_t j = 0; j < r_values.size(); ++j)
      table.values[i][j] = winding_pmf_contour(n_values[i], r_values[j]);
  }
  return table;
}

}  // namespace windsoup::exact
