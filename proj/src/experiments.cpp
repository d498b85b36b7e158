#include <windsoup/experiments.hpp>

#include <windsoup/exact.hpp>
#include <windsoup/field.hpp>
#include <windsoup/quadrature.hpp>
#include <windsoup/rng.hpp>
#include <windsoup/sampler.hpp>
#include <windsoup/stats.hpp>
#include <windsoup/winding.hpp>

#include <json.hpp>

#include <algorithm>
#include <atomic>
#include <cmath>
#include <complex>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <mutex>
#include <ostream>
#include <stdexcept>
#include <thread>

namespace windsoup::cli {

namespace {

constexpr double kPi = 3.14159265358979323846264338;
constexpr double kHugeZ = 9e99;

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

double safe_z(double estimate, double reference, double std_error) {
  if (std_error > 0.0) return (estimate - reference) / std_error;
  if (estimate == reference) return 0.0;
  return estimate > reference ? kHugeZ : -kHugeZ;
}

CheckRow z_check(std::string name, double estimate, double std_error, double reference,
                 std::string provenance, bool gated = true, double gate = 3.0) {
  CheckRow row;
  row.name = std::move(name);
  row.estimate = estimate;
  row.std_error = std_error;
  row.reference = reference;
  row.provenance = std::move(provenance);
  row.z_score = safe_z(estimate, reference, std_error);
  row.pass = std::abs(row.z_score) <= gate;
  row.gated = gated;
  return row;
}

// Deterministic check against a pinned tolerance; the tolerance plays the
// role of the standard error and the gate is |z| <= 1.
CheckRow tolerance_check(std::string name, double value, double reference, double tol,
                         std::string provenance, bool gated = true) {
  CheckRow row;
  row.name = std::move(name);
  row.estimate = value;
  row.std_error = tol;
  row.reference = reference;
  row.provenance = std::move(provenance);
  row.z_score = safe_z(value, reference, tol);
  row.pass = std::abs(row.z_score) <= 1.0;
  row.gated = gated;
  return row;
}

// Dispatches replicas 0..n-1 to a worker pool; the body must only touch its
// own replica's output slot. Rethrows the first worker exception.
void for_each_replica(uint64_t replicas, int workers,
                      const std::function<void(uint64_t)>& body) {
  if (workers <= 1 || replicas <= 1) {
    for (uint64_t r = 0; r < replicas; ++r) body(r);
    return;
  }
  std::atomic<uint64_t> next{0};
  std::mutex error_mutex;
  std::exception_ptr first_error;
  auto worker = [&] {
    for (;;) {
      const uint64_t r = next.fetch_add(1);
      if (r >= replicas) return;
      try {
        body(r);
      } catch (...) {
        const std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) first_error = std::current_exception();
        return;
      }
    }
  };
  const int n_threads = static_cast<int>(
      std::min<uint64_t>(static_cast<uint64_t>(std::clamp(workers, 1, 64)), replicas));
  std::vector<std::thread> pool;
  pool.reserve(n_threads);
  for (int i = 0; i < n_threads; ++i) pool.emplace_back(worker);
  for (auto& t : pool) t.join();
  if (first_error) std::rethrow_exception(first_error);
}

double resolve_t_min(const RunConfig& cfg, double delta_min) {
  const double t_min = cfg.t_min > 0.0 ? cfg.t_min : delta_min * delta_min / 100.0;
  if (!(t_min > 0.0 && t_min < cfg.t_max))
    throw std::domain_error("config: resolved t_min must lie in (0, t_max)");
  return t_min;
}

double resolve_epsilon(const RunConfig& cfg) {
  return cfg.epsilon > 0.0 ? cfg.epsilon : 1e-9 * cfg.radius;
}

double resolve_target(const RunConfig& cfg, double fallback) {
  return cfg.target_resolution > 0.0 ? cfg.target_resolution : fallback;
}

sampler::SoupConfig soup_config(const RunConfig& cfg, uint64_t replica, double delta_min) {
  sampler::SoupConfig sc;
  sc.alpha = cfg.alpha;
  sc.domain.radius = cfg.radius;
  sc.t_min = resolve_t_min(cfg, delta_min);
  sc.t_max = cfg.t_max;
  sc.steps_per_unit_time = cfg.steps_per_unit_time;
  sc.seed = cfg.seed;
  sc.replica_id = replica;
  return sc;
}

field::BetaField beta_field_from(const RunConfig& cfg) {
  if (cfg.beta_field == "constant") return field::BetaField::constant(cfg.beta);
  if (cfg.beta_field == "radial-step")
    return field::BetaField::radial_step(cfg.beta_inner, cfg.beta_outer,
                                         cfg.beta_step_radius);
  throw std::domain_error("config: beta_field must be 'constant' or 'radial-step'");
}

field::TestFunction test_function_from(const RunConfig& cfg) {
  field::TestFunction h;
  if (cfg.h_preset == "disc")
    h.kind = field::TestFunction::Kind::kDiscIndicator;
  else if (cfg.h_preset == "bump")
    h.kind = field::TestFunction::Kind::kBump;
  else
    throw std::domain_error("config: h_preset must be 'disc' or 'bump'");
  h.radius = cfg.h_radius;
  return h;
}

std::vector<double> descending_scales(std::vector<double> scales) {
  if (scales.empty()) throw std::domain_error("config: empty scale list");
  for (double d : scales)
    if (!(d > 0.0 && d < 1.0)) throw std::domain_error("config: scales must lie in (0,1)");
  std::sort(scales.begin(), scales.end(), std::greater<>());
  return scales;
}

// ---------------------------------------------------------------------------
// Area-density of per-class winding counts from uniformly rooted unit bridges.

RunOutput run_area_mass(const RunConfig& cfg) {
  if (cfg.k_max < 1 || cfg.k_max > 8) throw std::domain_error("config: k_max must lie in 1..8");
  if (cfg.n_bridges < 1000) throw std::domain_error("config: n_bridges must be >= 1000");
  if (cfg.bridge_steps < 16) throw std::domain_error("config: bridge_steps must be >= 16");
  if (!(cfg.root_radius > 1.0)) throw std::domain_error("config: root_radius must exceed 1");

  const uint64_t replicas = cfg.replicas ? cfg.replicas : 160;
  const uint64_t per_replica = (cfg.n_bridges + replicas - 1) / replicas;
  // Windings are exact in law at any resolution (sub-tube turns are drawn
  // from their closed-form law), so the target only trades polygon size
  // against completion frequency; a coarse target also keeps vertices clear
  // of the epsilon exclusion zone.
  const double target = resolve_target(cfg, 1e-5);
  const double eps = resolve_epsilon(cfg);
  const int k_max = cfg.k_max;
  // Weight of the uniform-root estimator: intensity density over roots is
  // dA / (2 pi) at unit duration, so each indicator carries area / (2 pi).
  const double weight = 0.5 * cfg.root_radius * cfg.root_radius;

  struct Slot {
    std::vector<uint64_t> counts;
    uint64_t ill = 0;
  };
  std::vector<Slot> slots(replicas);

  for_each_replica(replicas, cfg.workers, [&](uint64_t r) {
    rng::Stream stream = rng::Stream::for_replica(cfg.seed, r);
    Slot slot;
    slot.counts.assign(k_max, 0);
    for (uint64_t b = 0; b < per_replica; ++b) {
      const double rad = cfg.root_radius * std::sqrt(stream.uniform01());
      const double ang = rng::kTwoPi * stream.uniform01();
      const PlanePoint root{rad * std::cos(ang), rad * std::sin(ang)};
      const sampler::Loop loop = sampler::sample_bridge(root, 1.0, cfg.bridge_steps, stream);
      // Expanded bounding box around the origin; outside it the bridge winds
      // zero (same excursion allowance as the soup prefilter).
      double min_re = root.real(), max_re = root.real();
      double min_im = root.imag(), max_im = root.imag();
      for (const PlanePoint& v : loop.vertices) {
        min_re = std::min(min_re, v.real());
        max_re = std::max(max_re, v.real());
        min_im = std::min(min_im, v.imag());
        max_im = std::max(max_im, v.imag());
      }
      const double pad = 4.0 * std::sqrt(loop.base_dt);
      if (min_re - pad >= 0.0 || max_re + pad <= 0.0 || min_im - pad >= 0.0 ||
          max_im + pad <= 0.0)
        continue;
      const sampler::Loop refined = sampler::refine_near(loop, {0.0, 0.0}, target);
      const winding::RawWinding w = winding::bridge_winding(refined, {0.0, 0.0});
      if (w.min_distance <= eps || !(w.residue < 0.01)) {
        ++slot.ill;
        continue;
      }
      const int k = std::abs(w.n);
      if (k >= 1 && k <= k_max) ++slot.counts[k - 1];
    }
    slots[r] = std::move(slot);
  });

  std::string csv = "replica_id,n_bridges";
  for (int k = 1; k <= k_max; ++k) csv += ",count_" + std::to_string(k);
  csv += ",ill_conditioned\n";
  for (uint64_t r = 0; r < replicas; ++r) {
    csv += std::to_string(r) + "," + std::to_string(per_replica);
    for (int k = 0; k < k_max; ++k) csv += "," + std::to_string(slots[r].counts[k]);
    csv += "," + std::to_string(slots[r].ill) + "\n";
  }

  RunOutput out;
  out.experiment = "verify-lemma1";
  out.csv_text = std::move(csv);
  for (int k = 1; k <= k_max; ++k) {
    std::vector<double> estimates(replicas);
    for (uint64_t r = 0; r < replicas; ++r)
      estimates[r] = weight * static_cast<double>(slots[r].counts[k - 1]) /
                     static_cast<double>(per_replica);
    const stats::Estimate est = stats::mc_mean_ci(estimates);
    const double ref = exact::winding_area_mass(k);
    CheckRow row = z_check("area_mass_k" + std::to_string(k), est.mean, est.std_error, ref,
                           "paper-formula", k <= 3);
    // The acceptance band is both statistical and relative.
    row.pass = row.pass && std::abs(est.mean - ref) <= 0.05 * ref;
    out.checks.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Counts of loops escaping the exclusion ball, per signed winding class.

RunOutput run_escape_counts(const RunConfig& cfg) {
  if (cfg.k_max < 1 || cfg.k_max > 8) throw std::domain_error("config: k_max must lie in 1..8");
  if (!(cfg.delta > 0.0 && cfg.delta < cfg.radius))
    throw std::domain_error("config: need 0 < delta < radius");
  const uint64_t replicas = cfg.replicas ? cfg.replicas : 10000;
  const double scale = cfg.delta / cfg.radius;  // pullback scale of the exclusion ball
  const double eps = resolve_epsilon(cfg);
  const double target = resolve_target(cfg, 1e-6);
  const int k_max = cfg.k_max;

  std::vector<std::vector<uint64_t>> counts(replicas);  // slots: -k_max..-1,1..k_max
  for_each_replica(replicas, cfg.workers, [&](uint64_t r) {
    const sampler::LoopSoup soup = sampler::sample_soup(soup_config(cfg, r, cfg.delta));
    const winding::WindingSpectrum spectrum = winding::spectrum_from_profile(
        winding::winding_profile(soup, {0.0, 0.0}, eps, target), scale, cfg.margin);
    std::vector<uint64_t> row(2 * k_max, 0);
    for (const auto& [n, c] : spectrum.counts) {
      if (n >= -k_max && n <= -1) row[n + k_max] = c;
      if (n >= 1 && n <= k_max) row[k_max + n - 1] = c;
    }
    counts[r] = std::move(row);
  });

  std::string csv = "replica_id,k,count\n";
  for (uint64_t r = 0; r < replicas; ++r) {
    for (int k = -k_max; k <= k_max; ++k) {
      if (k == 0) continue;
      const uint64_t c = k < 0 ? counts[r][k + k_max] : counts[r][k_max + k - 1];
      csv += std::to_string(r) + "," + std::to_string(k) + "," + std::to_string(c) + "\n";
    }
  }

  RunOutput out;
  out.experiment = "verify-lemma2";
  out.csv_text = std::move(csv);
  for (int k : {1, -1, 2, -2, 3, -3}) {
    if (std::abs(k) > k_max) continue;
    std::vector<uint64_t> per(replicas);
    for (uint64_t r = 0; r < replicas; ++r)
      per[r] = k < 0 ? counts[r][k + k_max] : counts[r][k_max + k - 1];
    const double ref = exact::expected_winding_count(cfg.alpha, cfg.radius, cfg.delta, k);
    const stats::PoissonFit fit = stats::poisson_fit_test(per, ref);
    const bool gated = k == 1;  // the positive single-winding class is the pinned one
    const std::string tag = (k < 0 ? "m" : "") + std::to_string(std::abs(k));
    out.checks.push_back(z_check("escape_count_mean_k" + tag, fit.sample_mean,
                                 std::sqrt(ref / static_cast<double>(replicas)), ref,
                                 "paper-formula", gated));
    out.checks.push_back(z_check(
        "escape_count_variance_k" + tag, fit.sample_var,
        std::sqrt((ref + 2.0 * ref * ref) / static_cast<double>(replicas)), ref,
        "derived-oracle", gated));
  }
  return out;
}

// ---------------------------------------------------------------------------
// Phase decay of the winding field across exclusion scales.

RunOutput run_phase_decay(const RunConfig& cfg) {
  const std::vector<double> scales = descending_scales(cfg.deltas);
  const uint64_t replicas = cfg.replicas ? cfg.replicas : 40000;
  const double beta = cfg.beta;
  field::a_exponent(beta);  // range check
  const double eps = resolve_epsilon(cfg);
  const double target = resolve_target(cfg, 1e-6);

  std::vector<std::vector<std::complex<double>>> w(replicas);
  for_each_replica(replicas, cfg.workers, [&](uint64_t r) {
    const sampler::LoopSoup soup = sampler::sample_soup(soup_config(cfg, r, scales.back()));
    const winding::WindingProfile profile =
        winding::winding_profile(soup, {0.0, 0.0}, eps, target);
    std::vector<std::complex<double>> row(scales.size());
    for (std::size_t i = 0; i < scales.size(); ++i)
      row[i] = std::polar(
          1.0, beta * static_cast<double>(winding::winding_sum(profile, scales[i], cfg.margin)));
    w[r] = std::move(row);
  });

  std::string csv = "replica_id,delta,re_w,im_w\n";
  for (uint64_t r = 0; r < replicas; ++r)
    for (std::size_t i = 0; i < scales.size(); ++i)
      csv += std::to_string(r) + "," + g17(scales[i]) + "," + g17(w[r][i].real()) + "," +
             g17(w[r][i].imag()) + "\n";

  RunOutput out;
  out.experiment = "verify-lemma3";
  out.csv_text = std::move(csv);
  std::vector<std::pair<double, double>> decay;
  bool decay_valid = true;
  for (std::size_t i = 0; i < scales.size(); ++i) {
    std::vector<std::complex<double>> column(replicas);
    for (uint64_t r = 0; r < replicas; ++r) column[r] = w[r][i];
    const stats::ComplexEstimate est = stats::mc_mean_ci(column);
    const double ref = exact::expected_winding_phase(cfg.alpha, beta, scales[i]);
    out.checks.push_back(z_check("phase_re_d" + g17(scales[i]), est.mean.real(),
                                 est.std_error_re, ref, "paper-formula"));
    out.checks.push_back(z_check("phase_im_d" + g17(scales[i]), est.mean.imag(),
                                 est.std_error_im, 0.0, "derived-oracle"));
    if (est.mean.real() > 0.0)
      decay.emplace_back(scales[i], est.mean.real());
    else
      decay_valid = false;
  }

  CheckRow slope_row;
  slope_row.name = "phase_decay_exponent";
  slope_row.provenance = "paper-formula";
  slope_row.reference = cfg.alpha * field::a_exponent(beta);
  if (decay_valid && decay.size() >= 3) {
    const stats::SlopeFit fit = stats::loglog_slope_fit(decay);
    slope_row.estimate = fit.slope;
    slope_row.std_error = fit.std_error;
    slope_row.z_score = safe_z(fit.slope, slope_row.reference, fit.std_error);
    slope_row.pass = std::abs(fit.slope - slope_row.reference) <= 0.05 * slope_row.reference;
  } else {
    slope_row.estimate = 0.0;
    slope_row.std_error = 0.0;
    slope_row.z_score = kHugeZ;
    slope_row.pass = false;
  }
  out.checks.push_back(slope_row);
  return out;
}

// ---------------------------------------------------------------------------
// Martingale normalization across a geometric schedule of scales.

RunOutput run_martingale_scan(const RunConfig& cfg) {
  const field::DeltaSchedule schedule =
      field::DeltaSchedule::geometric(cfg.schedule_first, cfg.schedule_ratio,
                                      cfg.schedule_levels);
  const uint64_t replicas = cfg.replicas ? cfg.replicas : 4000;
  const double beta = cfg.beta;
  const double a = field::a_exponent(beta);
  const std::size_t levels = schedule.levels.size();
  const double eps = resolve_epsilon(cfg);
  const double target = resolve_target(cfg, 1e-6);

  std::vector<std::vector<std::complex<double>>> z(replicas);
  for_each_replica(replicas, cfg.workers, [&](uint64_t r) {
    const sampler::LoopSoup soup =
        sampler::sample_soup(soup_config(cfg, r, schedule.levels.back()));
    const winding::WindingProfile profile =
        winding::winding_profile(soup, {0.0, 0.0}, eps, target);
    std::vector<std::complex<double>> row(levels);
    for (std::size_t i = 0; i < levels; ++i) {
      const long s = winding::winding_sum(profile, schedule.levels[i], cfg.margin);
      row[i] = std::polar(std::pow(schedule.levels[i], -cfg.alpha * a),
                          beta * static_cast<double>(s));
    }
    z[r] = std::move(row);
  });

  std::string csv = "replica_id,level,delta,re_z,im_z\n";
  for (uint64_t r = 0; r < replicas; ++r)
    for (std::size_t i = 0; i < levels; ++i)
      csv += std::to_string(r) + "," + std::to_string(i) + "," + g17(schedule.levels[i]) +
             "," + g17(z[r][i].real()) + "," + g17(z[r][i].imag()) + "\n";

  RunOutput out;
  out.experiment = "martingale-scan";
  out.csv_text = std::move(csv);
  for (std::size_t i = 0; i < levels; ++i) {
    std::vector<std::complex<double>> column(replicas);
    for (uint64_t r = 0; r < replicas; ++r) column[r] = z[r][i];
    const stats::ComplexEstimate est = stats::mc_mean_ci(column);
    out.checks.push_back(z_check("z_re_level" + std::to_string(i), est.mean.real(),
                                 est.std_error_re, 1.0, "paper-formula"));
    out.checks.push_back(z_check("z_im_level" + std::to_string(i), est.mean.imag(),
                                 est.std_error_im, 0.0, "derived-oracle"));
  }
  // Multiplicative increments live on disjoint annuli, so consecutive ones
  // must be uncorrelated.
  for (std::size_t i = 0; i + 2 < levels; ++i) {
    std::vector<double> x(replicas), y(replicas);
    for (uint64_t r = 0; r < replicas; ++r) {
      x[r] = (z[r][i + 1] / z[r][i]).real();
      y[r] = (z[r][i + 2] / z[r][i + 1]).real();
    }
    CheckRow row;
    row.name = "increment_corr_" + std::to_string(i) + "_" + std::to_string(i + 1);
    row.provenance = "derived-oracle";
    row.reference = 0.0;
    try {
      const stats::CorrTest corr = stats::independence_corr(x, y);
      row.estimate = corr.correlation;
      row.std_error = 1.0 / std::sqrt(static_cast<double>(replicas) - 3.0);
      row.z_score = corr.fisher_z;
      row.pass = std::abs(corr.fisher_z) <= 3.0;
    } catch (const std::exception&) {
      row.estimate = 0.0;
      row.std_error = 0.0;
      row.z_score = kHugeZ;
      row.pass = false;
    }
    out.checks.push_back(row);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Variance of test-function integrals across the schedule.

RunOutput run_field_moments(const RunConfig& cfg) {
  const field::DeltaSchedule schedule =
      field::DeltaSchedule::geometric(cfg.schedule_first, cfg.schedule_ratio,
                                      cfg.schedule_levels);
  const uint64_t replicas = cfg.replicas ? cfg.replicas : 400;
  const field::BetaField beta = beta_field_from(cfg);
  const field::TestFunction h = test_function_from(cfg);
  if (h.radius >= cfg.radius)
    throw std::domain_error("config: test function support must stay strictly inside the domain");
  if (cfg.grid_n < 2) throw std::domain_error("config: grid_n must be >= 2");
  const std::size_t levels = schedule.levels.size();
  const double eps = resolve_epsilon(cfg);
  const double target = resolve_target(cfg, 1e-6);
  // The exploratory high-intensity regime is reported but not gated: the
  // second-moment bound only covers alpha a(beta) < 1.
  double max_alpha_a = 0.0;
  {
    const double candidates[] = {beta.kind == field::BetaField::Kind::kConstant
                                     ? beta.beta
                                     : beta.beta_inner,
                                 beta.kind == field::BetaField::Kind::kConstant
                                     ? beta.beta
                                     : beta.beta_outer};
    for (double b : candidates)
      max_alpha_a = std::max(max_alpha_a, cfg.alpha * field::a_exponent(b));
  }
  const bool gate_trend = max_alpha_a < 1.0;

  const double cell = 2.0 * h.radius / cfg.grid_n;
  const double cell_area = cell * cell;

  std::vector<std::vector<std::complex<double>>> integral(replicas);
  for_each_replica(replicas, cfg.workers, [&](uint64_t r) {
    const sampler::LoopSoup soup =
        sampler::sample_soup(soup_config(cfg, r, schedule.levels.back()));
    const winding::SoupIndex index = winding::index_soup(soup);
    std::vector<std::complex<double>> row(levels, {0.0, 0.0});
    for (int i = 0; i < cfg.grid_n; ++i) {
      for (int j = 0; j < cfg.grid_n; ++j) {
        const PlanePoint center{-h.radius + (i + 0.5) * cell, -h.radius + (j + 0.5) * cell};
        const double weight = h.value_at(center);
        if (weight == 0.0) continue;
        const double b = beta.value_at(center);
        const double a = field::a_exponent(b);
        const winding::WindingProfile profile =
            winding::winding_profile(soup, index, center, eps, target);
        for (std::size_t l = 0; l < levels; ++l) {
          const long s = winding::winding_sum(profile, schedule.levels[l], cfg.margin);
          row[l] += weight * cell_area *
                    std::polar(std::pow(schedule.levels[l], -cfg.alpha * a),
                               b * static_cast<double>(s));
        }
      }
    }
    integral[r] = std::move(row);
  });

  std::string csv = "replica_id,level,delta,re_integral,im_integral\n";
  for (uint64_t r = 0; r < replicas; ++r)
    for (std::size_t l = 0; l < levels; ++l)
      csv += std::to_string(r) + "," + std::to_string(l) + "," + g17(schedule.levels[l]) +
             "," + g17(integral[r][l].real()) + "," + g17(integral[r][l].imag()) + "\n";

  RunOutput out;
  out.experiment = "field-moments";
  out.csv_text = std::move(csv);

  // Martingale mean: E of the integral equals the plane integral of h at
  // every level (midpoint-rule value, so the discretization cancels).
  double h_grid_integral = 0.0;
  for (int i = 0; i < cfg.grid_n; ++i)
    for (int j = 0; j < cfg.grid_n; ++j)
      h_grid_integral += cell_area * h.value_at(PlanePoint{-h.radius + (i + 0.5) * cell,
                                                           -h.radius + (j + 0.5) * cell});

  std::vector<std::pair<double, double>> trend;
  for (std::size_t l = 0; l < levels; ++l) {
    std::vector<std::complex<double>> column(replicas);
    for (uint64_t r = 0; r < replicas; ++r) column[r] = integral[r][l];
    const stats::ComplexEstimate est = stats::mc_mean_ci(column);
    out.checks.push_back(z_check("integral_re_level" + std::to_string(l), est.mean.real(),
                                 est.std_error_re, h_grid_integral, "derived-oracle",
                                 /*gated=*/false));
    // Replica variance of the complex integral with its jackknife error.
    const std::size_t n = replicas;
    std::vector<double> sq(n);
    double mean_re = est.mean.real(), mean_im = est.mean.imag();
    double var = 0.0;
    for (std::size_t r = 0; r < n; ++r) {
      const double dre = column[r].real() - mean_re;
      const double dim = column[r].imag() - mean_im;
      sq[r] = dre * dre + dim * dim;
      var += sq[r];
    }
    var /= static_cast<double>(n - 1);
    const stats::Estimate var_est = stats::mc_mean_ci(sq);
    CheckRow var_row;
    var_row.name = "integral_variance_level" + std::to_string(l);
    var_row.estimate = var;
    var_row.std_error = var_est.std_error;
    var_row.reference = 0.0;
    var_row.provenance = "derived-oracle";
    var_row.z_score = 0.0;
    var_row.pass = true;
    var_row.gated = false;
    out.checks.push_back(var_row);
    trend.emplace_back(static_cast<double>(l), var);
  }

  // Least-squares slope of variance against level index; an increasing trend
  // would contradict the uniform second-moment bound.
  const std::size_t n_pts = trend.size();
  double mx = 0.0, my = 0.0;
  for (const auto& [x, y] : trend) {
    mx += x;
    my += y;
  }
  mx /= static_cast<double>(n_pts);
  my /= static_cast<double>(n_pts);
  double sxx = 0.0, sxy = 0.0;
  for (const auto& [x, y] : trend) {
    sxx += (x - mx) * (x - mx);
    sxy += (x - mx) * (y - my);
  }
  const double slope = sxy / sxx;
  double rss = 0.0;
  for (const auto& [x, y] : trend) {
    const double resid = y - my - slope * (x - mx);
    rss += resid * resid;
  }
  const double slope_se =
      std::sqrt(rss / static_cast<double>(n_pts - 2) / sxx);

  CheckRow trend_row;
  trend_row.name = "variance_trend_slope";
  trend_row.estimate = slope;
  trend_row.std_error = slope_se;
  trend_row.reference = 0.0;
  trend_row.provenance = "paper-formula";
  trend_row.z_score = safe_z(slope, 0.0, slope_se);
  trend_row.pass = slope <= 3.0 * slope_se;  // one-sided: only growth fails
  trend_row.gated = gate_trend;
  out.checks.push_back(trend_row);
  return out;
}

// ---------------------------------------------------------------------------
// Deterministic formula tables and cross-representation agreement.

RunOutput run_exact_tables(const RunConfig&) {
  RunOutput out;
  out.experiment = "exact-tables";
  std::string csv = "section,a,b,value_1,value_2\n";

  const std::vector<int> table_n = {0, 1, 2, 3, 4};
  const std::vector<double> table_r = {0.25, 0.5, 1.0, 1.5, 2.0};
  for (int n : table_n) {
    for (double r : table_r) {
      const double c = exact::winding_pmf_contour(n, r);
      const double f = exact::winding_pmf_fourier(n, r);
      csv += "pmf," + g17(n) + "," + g17(r) + "," + g17(c) + "," + g17(f) + "\n";
    }
  }
  double max_diff = 0.0;
  for (int n : {1, 2, 3})
    for (double r : {0.5, 1.0, 2.0})
      max_diff = std::max(max_diff, std::abs(exact::winding_pmf_contour(n, r) -
                                             exact::winding_pmf_fourier(n, r)));
  out.checks.push_back(tolerance_check("pmf_representation_agreement", max_diff, 0.0, 1e-6,
                                       "derived-oracle"));

  for (int k = 1; k <= 3; ++k) {
    const double closed = exact::winding_area_mass(k);
    const double quad = exact::winding_area_mass_quadrature(k);
    csv += "area_mass," + g17(k) + ",0," + g17(closed) + "," + g17(quad) + "\n";
    out.checks.push_back(tolerance_check("area_mass_quadrature_k" + std::to_string(k), quad,
                                         closed, 1e-5, "paper-formula"));
  }

  for (double beta : {0.5 * kPi, kPi, 1.5 * kPi}) {
    const double partial = exact::a_exponent_series_partial(beta, 1000000);
    const double closed = field::a_exponent(beta);
    csv += "exponent_series," + g17(beta) + ",1000000," + g17(partial) + "," + g17(closed) + "\n";
    out.checks.push_back(tolerance_check("exponent_series_beta" + g17(beta / kPi) + "pi",
                                         partial, closed, 1e-5, "paper-formula"));
  }

  out.csv_text = std::move(csv);
  return out;
}

// ---------------------------------------------------------------------------
// Raw soup dump with per-loop winding diagnostics.

RunOutput run_soup_dump(const RunConfig& cfg) {
  const uint64_t replicas = cfg.replicas ? cfg.replicas : 1;
  const double eps = resolve_epsilon(cfg);
  const double target = resolve_target(cfg, 1e-6);

  struct Slot {
    std::string rows;
    uint64_t drawn = 0;
    uint64_t accepted = 0;
  };
  std::vector<Slot> slots(replicas);
  for_each_replica(replicas, cfg.workers, [&](uint64_t r) {
    const sampler::LoopSoup soup = sampler::sample_soup(soup_config(cfg, r, cfg.delta));
    const winding::WindingProfile profile =
        winding::winding_profile(soup, {0.0, 0.0}, eps, target);
    std::vector<int> winding_at_origin(soup.loops.size(), 0);
    for (const auto& e : profile.entries) winding_at_origin[e.loop_index] = e.n;
    Slot slot;
    slot.drawn = soup.candidates_drawn;
    slot.accepted = soup.accepted;
    for (std::size_t i = 0; i < soup.loops.size(); ++i) {
      const sampler::Loop& loop = soup.loops[i];
      double max_abs = 0.0;
      for (const PlanePoint& v : loop.vertices) max_abs = std::max(max_abs, std::abs(v));
      slot.rows += std::to_string(r) + "," + std::to_string(i) + "," + g17(loop.root.real()) +
                   "," + g17(loop.root.imag()) + "," + g17(loop.duration) + "," +
                   std::to_string(loop.vertices.size()) + "," + g17(max_abs) + "," +
                   std::to_string(winding_at_origin[i]) + "\n";
    }
    slots[r] = std::move(slot);
  });

  std::string csv =
      "replica_id,loop_index,root_re,root_im,duration,n_vertices,max_abs,winding_origin\n";
  uint64_t drawn = 0;
  for (auto& slot : slots) {
    csv += slot.rows;
    drawn += slot.drawn;
  }

  RunOutput out;
  out.experiment = "soup-dump";
  out.csv_text = std::move(csv);
  const double lambda = cfg.alpha * sampler::total_intensity_mass(soup_config(cfg, 0, cfg.delta));
  out.checks.push_back(z_check(
      "candidates_per_replica", static_cast<double>(drawn) / static_cast<double>(replicas),
      std::sqrt(lambda / static_cast<double>(replicas)), lambda, "derived-oracle",
      /*gated=*/false, 4.0));
  return out;
}

}  // namespace

const std::vector<std::string>& experiment_names() {
  static const std::vector<std::string> names = {
      "verify-lemma1", "verify-lemma2",  "verify-lemma3", "martingale-scan",
      "field-moments", "exact-tables",   "soup-dump",
  };
  return names;
}

RunOutput run_experiment(const std::string& name, const RunConfig& config) {
  if (name == "verify-lemma1") return run_area_mass(config);
  if (name == "verify-lemma2") return run_escape_counts(config);
  if (name == "verify-lemma3") return run_phase_decay(config);
  if (name == "martingale-scan") return run_martingale_scan(config);
  if (name == "field-moments") return run_field_moments(config);
  if (name == "exact-tables") return run_exact_tables(config);
  if (name == "soup-dump") return run_soup_dump(config);
  throw std::invalid_argument("unknown experiment '" + name + "'");
}

int run_and_report(const std::string& name, const RunConfig& config, std::ostream& log) {
  RunOutput out = run_experiment(name, config);
  out.pass = true;
  for (const CheckRow& row : out.checks)
    if (row.gated && !row.pass) out.pass = false;

  std::filesystem::create_directories(config.out_dir);
  const std::filesystem::path base = std::filesystem::path(config.out_dir) / name;
  {
    std::ofstream csv(base.string() + ".csv", std::ios::binary);
    if (!csv) throw std::runtime_error("cannot write " + base.string() + ".csv");
    csv << out.csv_text;
  }

  nlohmann::ordered_json summary;
  summary["experiment"] = name;
  summary["config"] = {
      {"alpha", config.alpha},
      {"radius", config.radius},
      {"t_min", config.t_min},
      {"t_max", config.t_max},
      {"steps_per_unit_time", config.steps_per_unit_time},
      {"seed", config.seed},
      {"replicas", config.replicas},
      {"workers", config.workers},
      {"delta", config.delta},
      {"k_max", config.k_max},
      {"beta", config.beta},
      {"beta_field", config.beta_field},
      {"deltas", config.deltas},
      {"schedule_levels", config.schedule_levels},
      {"schedule_first", config.schedule_first},
      {"schedule_ratio", config.schedule_ratio},
      {"h_preset", config.h_preset},
      {"h_radius", config.h_radius},
      {"grid_n", config.grid_n},
      {"margin", config.margin},
      {"epsilon", config.epsilon},
      {"target_resolution", config.target_resolution},
      {"n_bridges", config.n_bridges},
      {"bridge_steps", config.bridge_steps},
      {"root_radius", config.root_radius},
  };
  summary["checks"] = nlohmann::ordered_json::array();
  for (const CheckRow& row : out.checks) {
    summary["checks"].push_back({
        {"name", row.name},
        {"estimate", row.estimate},
        {"stderr", row.std_error},
        {"reference_value", row.reference},
        {"provenance", row.provenance},
        {"z_score", row.z_score},
        {"pass", row.pass},
        {"gated", row.gated},
    });
  }
  summary["pass"] = out.pass;
  {
    std::ofstream json(base.string() + ".json", std::ios::binary);
    if (!json) throw std::runtime_error("cannot write " + base.string() + ".json");
    json << summary.dump(2) << "\n";
  }

  for (const CheckRow& row : out.checks) {
    log << (row.gated ? (row.pass ? "[PASS] " : "[FAIL] ") : "[info] ") << row.name
        << ": estimate=" << g17(row.estimate) << " reference=" << g17(row.reference)
        << " z=" << g17(row.z_score) << "\n";
  }
  log << name << ": " << (out.pass ? "PASS" : "FAIL") << "\n";
  return out.pass ? 0 : 1;
}

}  // namespace windsoup::cli
