#pragma once
// Closed-form and quadrature evaluation of the winding statistics of a
// duration-one loop rooted at distance r from a marked point, plus the
// derived soup-level expectations. Convention used throughout the module:
// winding_pmf_*(n, r) with n != 0 is the combined mass of the windings +n
// and -n under the rooted-loop density, and winding_pmf_*(0, r) is the
// zero-winding mass; the masses of n = 0, 1, 2, ... then add up to the
// diagonal heat kernel weight 1/(2 pi).

#include <vector>

namespace windsoup::exact {

// Modified Bessel function of the first kind, real order >= 0, x >= 0.
// Evaluated by the ascending series (all terms positive, no cancellation).
// Throws std::range_error when the value exceeds the double range.
double bessel_i(double order, double x);

// Winding pmf via the real contour representation: a single integral of
// e^{-r^2 (1 + cosh v)} against an explicit rational kernel. Fast and valid
// for 1e-12 <= r; absolute accuracy around 1e-10.
double winding_pmf_contour(int n, double r);

// Same quantity via the oscillatory-order representation: the integral of
// e^{-r^2} I_u(r^2) cos(2 pi n u) over real orders u. Much slower; serves as
// an independent route for cross-validation. Intended for r <= 3.
double winding_pmf_fourier(int n, double r);

// Mass of the winding pmf integrated over the root position in the plane:
// the expected count density per unit intensity of loops winding +k or -k
// around a fixed point. Closed form 1 / (2 pi^2 k^2).
double winding_area_mass(int k);

// The same plane integral evaluated as a radial quadrature of the pmf,
// 2 pi * Integral r * pmf(k, r) dr. Independent of the closed form.
double winding_area_mass_quadrature(int k);

// Unnormalized law of the angle swept around a marked point by one bridge
// segment, given its endpoints. For endpoint distances r1, r2 from the
// point, segment duration s, rho = r1 r2 / s and angle theta (continuous
// determination, so theta = principal angle + 2 pi m), the density of theta
// is proportional to
//   (1/2) e^{rho cos theta} [|theta| < pi]
//     - (1/(2 pi)) Int_0^inf e^{-rho cosh v}
//         ( (pi+theta)/(v^2+(pi+theta)^2) + (pi-theta)/(v^2+(pi-theta)^2) ) dv,
// the cosine transform in the order of I_order(rho). Returned scaled by
// e^{rho}, so only ratios across theta at fixed rho are meaningful; the
// scaled weights over the lattice theta = delta + 2 pi m sum to
// (1/2) e^{rho (1 + cos delta)} exactly. On the diagonal (r1 = r2 = r,
// s = t, theta = 2 pi n) the normalized ratios reproduce the loop pmf above.
double segment_angle_weight(double rho, double theta);

// Expected number of loops in an intensity-alpha soup on the disc of radius
// R that wind exactly k times (signed) around the center and do not stay
// inside the concentric disc of radius delta: alpha * log(R/delta) / (2 pi^2 k^2).
double expected_winding_count(double alpha, double R, double delta, int k);

// Expected phase factor of the renormalized winding field at exclusion scale
// delta: delta^{alpha * a(beta)} with a(beta) = beta (2 pi - beta) / (4 pi^2).
double expected_winding_phase(double alpha, double beta, double delta);

// Partial sum (1/pi^2) * sum_{k=1}^{n_terms} (1 - cos(k beta)) / k^2; its
// limit is the exponent a(beta) above.
double a_exponent_series_partial(double beta, long n_terms);

struct WindingPmfTable {
  std::vector<int> n_values;
  std::vector<double> r_values;
  std::vector<std::vector<double>> values;  // values[i][j] = pmf(n_values[i], r_values[j])
};

WindingPmfTable make_pmf_table(const std::vector<int>& n_values,
                               const std::vector<double>& r_values);

}  // namespace windsoup::exact
