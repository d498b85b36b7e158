// Field layer: exponent law, beta fields, schedules, exactly coupled
// martingale traces on a hand-built soup, and test-function integrals.

#include <doctest.h>

#include <windsoup/field.hpp>
#include <windsoup/quadrature.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

using windsoup::PlanePoint;
namespace field = windsoup::field;
namespace sampler = windsoup::sampler;

namespace {

constexpr double kPi = 3.14159265358979323846264338;

sampler::Loop polygon_loop(std::vector<PlanePoint> closed_vertices) {
  sampler::Loop loop;
  loop.root = closed_vertices.front();
  loop.duration = 1.0;
  loop.base_dt = 1e-30;
  loop.vertices = std::move(closed_vertices);
  loop.node_ids.resize(loop.vertices.size());
  loop.times.resize(loop.vertices.size());
  for (std::size_t i = 0; i < loop.vertices.size(); ++i) loop.node_ids[i] = i;
  return loop;
}

sampler::Loop square(PlanePoint center, double half_side, bool clockwise) {
  std::vector<PlanePoint> v{center + PlanePoint{half_side, half_side},
                            center + PlanePoint{-half_side, half_side},
                            center + PlanePoint{-half_side, -half_side},
                            center + PlanePoint{half_side, -half_side}};
  if (clockwise) std::reverse(v.begin(), v.end());
  v.push_back(v.front());
  return polygon_loop(std::move(v));
}

sampler::Loop double_octagon(PlanePoint center, double radius) {
  std::vector<PlanePoint> v;
  for (int turn = 0; turn < 2; ++turn)
    for (int i = 0; i < 8; ++i) {
      const double a = 2.0 * kPi * i / 8.0;
      v.push_back(center + PlanePoint{radius * std::cos(a), radius * std::sin(a)});
    }
  v.push_back(v.front());
  return polygon_loop(std::move(v));
}

// Windings around the origin: +1 at pullback 0.1414, -1 at 0.4243, +2 at 0.8.
sampler::LoopSoup toy_soup() {
  sampler::LoopSoup soup;
  soup.config.domain.radius = 1.0;
  soup.loops.push_back(square({0.0, 0.0}, 0.1, false));
  soup.loops.push_back(square({0.0, 0.0}, 0.3, true));
  soup.loops.push_back(double_octagon({0.0, 0.0}, 0.8));
  return soup;
}

}  // namespace

TEST_SUITE_BEGIN("field");

TEST_CASE("exponent law values and symmetry") {
  CHECK(field::a_exponent(kPi) == doctest::Approx(0.25).epsilon(1e-15));
  CHECK(field::a_exponent(0.5 * kPi) == doctest::Approx(0.1875).epsilon(1e-15));
  CHECK(field::a_exponent(0.0) == 0.0);
  CHECK(field::a_exponent(2.0 * kPi) == doctest::Approx(0.0).epsilon(1e-15));
  for (double beta : {0.3, 1.1, 2.0})
    CHECK(field::a_exponent(beta) ==
          doctest::Approx(field::a_exponent(2.0 * kPi - beta)).epsilon(1e-14));
  CHECK_THROWS_AS(field::a_exponent(-0.1), std::domain_error);
  CHECK_THROWS_AS(field::a_exponent(7.0), std::domain_error);
}

TEST_CASE("beta fields evaluate pointwise") {
  const auto flat = field::BetaField::constant(1.2);
  CHECK(flat.value_at({0.0, 0.0}) == 1.2);
  CHECK(flat.value_at({0.9, -0.4}) == 1.2);

  const auto step = field::BetaField::radial_step(kPi, 0.5 * kPi, 0.5);
  CHECK(step.value_at({0.3, 0.0}) == kPi);
  CHECK(step.value_at({0.0, 0.7}) == 0.5 * kPi);
  CHECK_THROWS_AS(field::BetaField::constant(-1.0), std::domain_error);
  CHECK_THROWS_AS(field::BetaField::radial_step(kPi, kPi, 0.0), std::domain_error);
}

TEST_CASE("geometric schedules decrease strictly") {
  const auto schedule = field::DeltaSchedule::geometric(0.5, 0.5, 4);
  REQUIRE(schedule.levels.size() == 4);
  CHECK(schedule.levels[0] == 0.5);
  CHECK(schedule.levels[3] == doctest::Approx(0.0625).epsilon(1e-15));
  for (std::size_t i = 1; i < schedule.levels.size(); ++i)
    CHECK(schedule.levels[i] < schedule.levels[i - 1]);
  CHECK_THROWS_AS(field::DeltaSchedule::geometric(1.5, 0.5, 4), std::domain_error);
  CHECK_THROWS_AS(field::DeltaSchedule::geometric(0.5, 1.0, 4), std::domain_error);
  CHECK_THROWS_AS(field::DeltaSchedule::geometric(0.5, 0.5, 0), std::domain_error);
}

TEST_CASE("phase factors have unit modulus and the expected angle") {
  const auto soup = toy_soup();
  // At scale 0.2 only the -1 and +2 loops escape: S = 1.
  const auto w = field::w_at(soup, {0.0, 0.0}, 0.5 * kPi, 0.2, 0.0);
  CHECK(std::abs(w) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(w.real() == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(w.imag() == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("martingale traces couple all levels through one profile") {
  const auto soup = toy_soup();
  field::DeltaSchedule schedule;
  schedule.levels = {0.5, 0.25, 0.1};
  const double beta = 0.8;
  const auto trace = field::martingale_trace(soup, {0.0, 0.0}, beta, schedule, 0.0);

  REQUIRE(trace.winding_sums.size() == 3);
  CHECK(trace.winding_sums[0] == 2);  // +2 escapes 0.5
  CHECK(trace.winding_sums[1] == 1);  // -1 and +2 escape 0.25
  CHECK(trace.winding_sums[2] == 2);  // all three escape 0.1
  CHECK(trace.alpha == soup.config.alpha);

  const double a = field::a_exponent(beta);
  for (std::size_t k = 0; k < 3; ++k) {
    CHECK(std::abs(trace.z[k]) ==
          doctest::Approx(std::pow(trace.deltas[k], -trace.alpha * a)).epsilon(1e-13));
    const auto expected = std::polar(std::pow(trace.deltas[k], -trace.alpha * a),
                                     beta * trace.winding_sums[k]);
    CHECK(trace.z[k].real() == doctest::Approx(expected.real()).epsilon(1e-13));
    CHECK(trace.z[k].imag() == doctest::Approx(expected.imag()).epsilon(1e-13));
  }

  field::DeltaSchedule bad;
  bad.levels = {0.25, 0.5};
  CHECK_THROWS_AS(field::martingale_trace(soup, {0.0, 0.0}, beta, bad, 0.0),
                  std::domain_error);
  CHECK_THROWS_AS(field::martingale_trace(soup, {0.0, 0.0}, beta, field::DeltaSchedule{}, 0.0),
                  std::domain_error);
}

TEST_CASE("test functions evaluate as documented") {
  const field::TestFunction disc{field::TestFunction::Kind::kDiscIndicator, 0.4};
  CHECK(disc.value_at({0.1, 0.2}) == 1.0);
  CHECK(disc.value_at({0.4, 0.0}) == 0.0);
  CHECK(disc.value_at({0.5, 0.5}) == 0.0);

  const field::TestFunction bump{field::TestFunction::Kind::kBump, 0.4};
  CHECK(bump.value_at({0.0, 0.0}) == doctest::Approx(1.0).epsilon(1e-15));
  const double mid = bump.value_at({0.4 / std::sqrt(2.0), 0.0});  // q = 1/2
  CHECK(mid == doctest::Approx(std::exp(-1.0)).epsilon(1e-12));
  CHECK(bump.value_at({0.41, 0.0}) == 0.0);
}

TEST_CASE("field integral with zero angle is the plain test-function mass") {
  sampler::LoopSoup empty;
  empty.config.domain.radius = 1.0;

  const field::TestFunction disc{field::TestFunction::Kind::kDiscIndicator, 0.3};
  const auto flat = field::BetaField::constant(0.0);
  const auto got = field::field_integral(empty, disc, flat, 0.5, 96);
  CHECK(got.imag() == 0.0);
  CHECK(got.real() == doctest::Approx(kPi * 0.09).epsilon(0.01));

  const field::TestFunction bump{field::TestFunction::Kind::kBump, 0.3};
  const double bump_mass =
      kPi * 0.09 *
      windsoup::quadrature::integrate(
          [](double q) { return std::exp(1.0 - 1.0 / (1.0 - q)); }, 0.0, 1.0, 1e-10);
  const auto got_bump = field::field_integral(empty, bump, flat, 0.5, 96);
  CHECK(got_bump.real() == doctest::Approx(bump_mass).epsilon(0.01));
}

TEST_CASE("an empty soup contributes only the normalization factor") {
  sampler::LoopSoup empty;
  empty.config.domain.radius = 1.0;
  empty.config.alpha = 2.0;
  const field::TestFunction disc{field::TestFunction::Kind::kDiscIndicator, 0.3};

  const auto base = field::field_integral(empty, disc, field::BetaField::constant(0.0),
                                          0.5, 32);
  const auto lifted = field::field_integral(empty, disc, field::BetaField::constant(kPi),
                                            0.5, 32);
  const double factor = std::pow(0.5, -2.0 * field::a_exponent(kPi));
  CHECK(lifted.imag() == doctest::Approx(0.0).epsilon(1e-14));
  CHECK(lifted.real() == doctest::Approx(factor * base.real()).epsilon(1e-12));
}

TEST_CASE("field integral validates its arguments") {
  const auto soup = toy_soup();
  const auto flat = field::BetaField::constant(1.0);
  CHECK_THROWS_AS(field::field_integral(soup, {field::TestFunction::Kind::kDiscIndicator, 1.0},
                                        flat, 0.5, 16),
                  std::domain_error);
  CHECK_THROWS_AS(field::field_integral(soup, {field::TestFunction::Kind::kDiscIndicator, 0.3},
                                        flat, 0.5, 0),
                  std::domain_error);
  CHECK_THROWS_AS(field::field_integral(soup, {field::TestFunction::Kind::kDiscIndicator, 0.3},
                                        flat, 1.0, 16),
                  std::domain_error);
}

TEST_CASE("moment estimates reduce to the classical mean and error") {
  const std::vector<std::complex<double>> unit{{1.0, 0.0}, {0.0, 1.0}, {-1.0, 0.0}, {0.0, -1.0}};
  const auto m1 = field::moment_estimate(unit, 1);
  CHECK(m1.value == 1.0);
  CHECK(m1.std_error == 0.0);
  CHECK(m1.n == 4);
  const auto m2 = field::moment_estimate(unit, 2);
  CHECK(m2.value == 1.0);
  CHECK(m2.std_error == 0.0);

  const std::vector<std::complex<double>> pair{{0.0, 0.0}, {std::sqrt(2.0), 0.0}};
  const auto m = field::moment_estimate(pair, 1);
  CHECK(m.value == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(m.std_error == doctest::Approx(1.0).epsilon(1e-13));

  CHECK_THROWS_AS(field::moment_estimate(unit, 0), std::domain_error);
  const std::vector<std::complex<double>> one{{1.0, 0.0}};
  CHECK_THROWS_AS(field::moment_estimate(one, 1), std::invalid_argument);
}

TEST_SUITE_END();
