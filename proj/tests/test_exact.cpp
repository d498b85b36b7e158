// Exact-formula layer against frozen high-precision references, plus the
// internal consistency relations that tie the representations together.

#include <doctest.h>

#include <windsoup/exact.hpp>
#include <windsoup/quadrature.hpp>

#include "oracle/values.hpp"

#include <cmath>
#include <stdexcept>
#include <vector>

namespace exact = windsoup::exact;
namespace quad = windsoup::quadrature;

namespace {
constexpr double kPi = 3.14159265358979323846264338;
}

TEST_SUITE_BEGIN("exact");

TEST_CASE("adaptive quadrature reproduces closed-form integrals") {
  CHECK(quad::integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12) ==
        doctest::Approx(1.0 / 3.0).epsilon(1e-14));
  CHECK(quad::integrate([](double x) { return std::sin(x); }, 0.0, kPi, 1e-12) ==
        doctest::Approx(2.0).epsilon(1e-13));
  const double gauss_ref = 0.5 * std::sqrt(kPi) * (std::erf(5.0) + std::erf(3.0));
  CHECK(quad::integrate([](double x) { return std::exp(-x * x); }, -3.0, 5.0, 1e-12) ==
        doctest::Approx(gauss_ref).epsilon(1e-13));
}

TEST_CASE("adaptive quadrature resolves a sharp interior peak") {
  const double a = 1e-3;
  const auto f = [a](double x) {
    const double d = x - 0.3;
    return 1.0 / (a * a + d * d);
  };
  const double ref = (std::atan(0.7 / a) + std::atan(0.3 / a)) / a;
  CHECK(quad::integrate(f, 0.0, 1.0, 1e-9) == doctest::Approx(ref).epsilon(1e-10));
}

TEST_CASE("bessel_i matches frozen references") {
  for (const auto& ref : oracle::kBesselRefs) {
    const double got = exact::bessel_i(ref.order, ref.x);
    CHECK(got == doctest::Approx(ref.value).epsilon(1e-10));
  }
}

TEST_CASE("bessel_i handles the boundary of its domain and range") {
  CHECK(exact::bessel_i(0.0, 0.0) == 1.0);
  CHECK(exact::bessel_i(2.0, 0.0) == 0.0);
  CHECK_THROWS_AS(exact::bessel_i(-0.5, 1.0), std::domain_error);
  CHECK_THROWS_AS(exact::bessel_i(1.0, -1.0), std::domain_error);
  CHECK_THROWS_AS(exact::bessel_i(0.3, 800.0), std::range_error);
}

TEST_CASE("contour pmf matches the frozen folded table") {
  for (int n = 1; n <= 4; ++n)
    for (int j = 0; j < 4; ++j) {
      const double got = exact::winding_pmf_contour(n, oracle::kPmfRGrid[j]);
      CHECK(got == doctest::Approx(oracle::kPmfFolded[n - 1][j]).epsilon(1e-8));
    }
}

TEST_CASE("folded pmf is twice the single-orientation mass") {
  CHECK(0.5 * exact::winding_pmf_contour(1, 1.0) ==
        doctest::Approx(oracle::kPmfSignedN1R1).epsilon(1e-8));
  CHECK(0.5 * exact::winding_pmf_contour(2, 0.5) ==
        doctest::Approx(oracle::kPmfSignedN2Rhalf).epsilon(1e-8));
  CHECK(0.5 * exact::winding_pmf_contour(3, 2.0) ==
        doctest::Approx(oracle::kPmfSignedN3R2).epsilon(1e-8));
}

TEST_CASE("the two pmf representations agree") {
  for (int n : {0, 1, 2, 3})
    for (double r : {0.25, 0.5, 1.0, 2.0}) {
      const double a = exact::winding_pmf_contour(n, r);
      const double b = exact::winding_pmf_fourier(n, r);
      CHECK(std::abs(a - b) < 1e-6);
    }
}

TEST_CASE("pmf is even in n and vanishes for enormous r") {
  CHECK(exact::winding_pmf_contour(-3, 0.7) == exact::winding_pmf_contour(3, 0.7));
  CHECK(exact::winding_pmf_fourier(-2, 0.7) == exact::winding_pmf_fourier(2, 0.7));
  CHECK(exact::winding_pmf_contour(1, 25.0) == 0.0);
  CHECK(exact::winding_pmf_fourier(1, 11.0) == 0.0);
}

TEST_CASE("pmf rejects r outside its validated range") {
  CHECK_THROWS_AS(exact::winding_pmf_contour(1, 0.0), std::domain_error);
  CHECK_THROWS_AS(exact::winding_pmf_contour(1, 1e-13), std::domain_error);
  CHECK_THROWS_AS(exact::winding_pmf_fourier(1, -1.0), std::domain_error);
}

TEST_CASE("zero-winding mass at r = 1 matches the frozen reference") {
  CHECK(exact::winding_pmf_contour(0, 1.0) ==
        doctest::Approx(oracle::kZeroWindingMassR1).epsilon(1e-10));
  CHECK(oracle::kDiagonalMass - exact::winding_pmf_contour(0, 1.0) ==
        doctest::Approx(oracle::kFoldedSumR1).epsilon(1e-8));
}

TEST_CASE("class masses and the zero class add up to the diagonal mass") {
  // The per-class kernels telescope, so the residual after K classes is
  // 0 < residual <= C / (2K+1) with C = integral of the exponential factor
  // over pi^3. Verify the partial sums land inside that window.
  const double r = 1.0;
  const double envelope =
      quad::integrate([](double v) { return std::exp(-(1.0 + std::cosh(v))); }, 0.0,
                      std::acosh(51.0), 1e-14);
  double partial = exact::winding_pmf_contour(0, r);
  int checked = 0;
  for (int k = 1; k <= 400; ++k) {
    partial += exact::winding_pmf_contour(k, r);
    if (k == 50 || k == 200 || k == 400) {
      const double residual = oracle::kDiagonalMass - partial;
      const double bound = envelope / (kPi * kPi * kPi * (2.0 * k + 1.0));
      CHECK(residual > 0.0);
      CHECK(residual <= bound * (1.0 + 1e-6));
      ++checked;
    }
  }
  CHECK(checked == 3);
}

TEST_CASE("segment angle weight matches the frozen order-transform values") {
  for (const auto& ref : oracle::kSegmentAngleRefs) {
    const double got = exact::segment_angle_weight(ref.rho, ref.theta);
    CHECK(got == doctest::Approx(ref.value).epsilon(1e-9));
  }
}

TEST_CASE("segment angle weight is even, positive and decaying in theta") {
  for (double rho : {0.05, 0.8, 6.0}) {
    CHECK(exact::segment_angle_weight(rho, 1.3) == exact::segment_angle_weight(rho, -1.3));
    double prev = exact::segment_angle_weight(rho, 0.0);
    for (double theta = 0.7; theta < 30.0; theta += 0.7) {
      const double w = exact::segment_angle_weight(rho, theta);
      CHECK(w > 0.0);
      CHECK(w < prev);
      prev = w;
    }
  }
  CHECK_THROWS_AS(exact::segment_angle_weight(0.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(exact::segment_angle_weight(-1.0, 1.0), std::domain_error);
}

TEST_CASE("segment angle weights sum to the closed-form lattice mass") {
  // Sum over theta = delta + 2 pi m; the tail past |m| = M falls off like
  // 1/M, so a wide window pins the identity to a few parts in 1e4.
  for (double rho : {0.4, 2.0})
    for (double delta : {0.0, 1.1, -2.7, kPi}) {
      double sum = 0.0;
      for (int m = -2000; m <= 2000; ++m)
        sum += exact::segment_angle_weight(rho, delta + 2.0 * kPi * m);
      const double ref = 0.5 * std::exp(rho * (1.0 + std::cos(delta)));
      CHECK(sum == doctest::Approx(ref).epsilon(3e-4));
      CHECK(sum < ref);  // truncation only ever loses mass
    }
}

TEST_CASE("segment angle weights reduce to the loop pmf on the diagonal") {
  // A whole unit-duration loop rooted at distance r is one segment with
  // r1 = r2 = r, s = 1, principal angle 0: class probabilities are the
  // lattice weights at theta = 2 pi n over the lattice mass. The pmf table
  // carries the intensity factor 1/(2 pi) and folds +-n together.
  for (double r : {0.5, 1.0, 1.6}) {
    const double rho = r * r;
    const double norm = 0.5 * std::exp(2.0 * rho);
    for (int n = 1; n <= 3; ++n) {
      const double p = exact::segment_angle_weight(rho, 2.0 * kPi * n) / norm;
      CHECK(2.0 * p / (2.0 * kPi) ==
            doctest::Approx(exact::winding_pmf_contour(n, r)).epsilon(1e-8));
    }
    const double p0 = exact::segment_angle_weight(rho, 0.0) / norm;
    CHECK(p0 / (2.0 * kPi) ==
          doctest::Approx(exact::winding_pmf_contour(0, r)).epsilon(1e-8));
  }
}

TEST_CASE("area mass closed form matches the frozen values") {
  for (int k = 1; k <= 5; ++k) {
    CHECK(exact::winding_area_mass(k) ==
          doctest::Approx(oracle::kAreaMassFolded[k - 1]).epsilon(1e-14));
    CHECK(exact::winding_area_mass(-k) == exact::winding_area_mass(k));
  }
  CHECK_THROWS_AS(exact::winding_area_mass(0), std::domain_error);
}

TEST_CASE("radial quadrature of the pmf reproduces the closed-form area mass") {
  for (int k = 1; k <= 3; ++k) {
    const double got = exact::winding_area_mass_quadrature(k);
    CHECK(std::abs(got - exact::winding_area_mass(k)) < 2e-6);
  }
}

TEST_CASE("expected escape count matches the frozen log-law value") {
  CHECK(exact::expected_winding_count(2.0, 1.0, 0.2, 1) ==
        doctest::Approx(oracle::kEscapeCountAlpha2Delta02).epsilon(1e-14));
  // Scale invariance: only the ratio R/delta enters.
  CHECK(exact::expected_winding_count(1.0, 3.0, 0.6, 2) ==
        doctest::Approx(exact::expected_winding_count(1.0, 1.0, 0.2, 2)).epsilon(1e-14));
  CHECK_THROWS_AS(exact::expected_winding_count(1.0, 1.0, 1.5, 1), std::domain_error);
  CHECK_THROWS_AS(exact::expected_winding_count(0.0, 1.0, 0.5, 1), std::domain_error);
  CHECK_THROWS_AS(exact::expected_winding_count(1.0, 1.0, 0.5, 0), std::domain_error);
}

TEST_CASE("expected phase decay matches the power-law scan") {
  for (int i = 0; i < 5; ++i)
    CHECK(exact::expected_winding_phase(1.0, kPi, oracle::kPhaseScanDeltas[i]) ==
          doctest::Approx(oracle::kPhaseScanRefs[i]).epsilon(1e-14));
  CHECK(exact::expected_winding_phase(2.0, 0.5 * kPi, 0.5) ==
        doctest::Approx(std::pow(0.5, 2.0 * oracle::kExponentAtHalfPi)).epsilon(1e-14));
  CHECK_THROWS_AS(exact::expected_winding_phase(1.0, -0.1, 0.5), std::domain_error);
  CHECK_THROWS_AS(exact::expected_winding_phase(1.0, kPi, 1.0), std::domain_error);
}

TEST_CASE("exponent series converges to the closed form") {
  const double partial_pi = exact::a_exponent_series_partial(kPi, 1000000);
  CHECK(partial_pi < oracle::kExponentAtPi);
  CHECK(partial_pi == doctest::Approx(oracle::kExponentAtPi).epsilon(1e-5));
  const double partial_half = exact::a_exponent_series_partial(0.5 * kPi, 1000000);
  CHECK(partial_half == doctest::Approx(oracle::kExponentAtHalfPi).epsilon(1e-5));
  CHECK(exact::a_exponent_series_partial(0.0, 100) == 0.0);
  CHECK_THROWS_AS(exact::a_exponent_series_partial(kPi, 0), std::domain_error);
}

TEST_CASE("pmf tables are coherent with pointwise evaluation") {
  const std::vector<int> ns{0, 1, 2, 3};
  const std::vector<double> rs{0.25, 0.5, 1.0};
  const auto table = exact::make_pmf_table(ns, rs);
  REQUIRE(table.values.size() == ns.size());
  for (std::size_t i = 0; i < ns.size(); ++i) {
    REQUIRE(table.values[i].size() == rs.size());
    for (std::size_t j = 0; j < rs.size(); ++j) {
      CHECK(table.values[i][j] == exact::winding_pmf_contour(ns[i], rs[j]));
      CHECK(table.values[i][j] > 0.0);
    }
  }
  // Mass decreases with the winding class on the tabulated grid.
  for (std::size_t i = 2; i < ns.size(); ++i)
    for (std::size_t j = 0; j < rs.size(); ++j)
      CHECK(table.values[i][j] < table.values[i - 1][j]);
  CHECK_THROWS_AS(exact::make_pmf_table({}, rs), std::invalid_argument);
}

TEST_SUITE_END();
