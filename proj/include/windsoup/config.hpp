#pragma once
// Line-oriented key=value run configuration shared by all experiments.
// Unset values marked "auto" (negative sentinels or zero) are resolved per
// experiment at run time.

#include <cstdint>
#include <string>
#include <vector>

namespace windsoup::cli {

struct RunConfig {
  double alpha = 1.0;
  double radius = 1.0;
  double t_min = -1.0;  // auto: delta_min^2 / 100 for scale scans, 0.01 otherwise
  double t_max = 20.0;
  int steps_per_unit_time = 2048;
  uint64_t seed = 1;
  uint64_t replicas = 0;  // auto: per-experiment default
  int workers = 1;
  double delta = 0.2;
  int k_max = 3;
  double beta = 3.14159265358979323846264338;
  std::string beta_field = "constant";  // "constant" | "radial-step"
  double beta_inner = 3.14159265358979323846264338;
  double beta_outer = 1.57079632679489661923132169;
  double beta_step_radius = 0.5;
  std::vector<double> deltas = {0.5, 0.35, 0.25, 0.18, 0.125};
  int schedule_levels = 8;
  double schedule_first = 0.5;
  double schedule_ratio = 0.70710678118654752;
  std::string h_preset = "disc";  // "disc" | "bump"
  double h_radius = 0.5;
  int grid_n = 24;
  double margin = -1.0;             // auto: excursion-compensating margin
  double epsilon = -1.0;            // auto: 1e-9 * radius
  double target_resolution = -1.0;  // auto: per-experiment default
  uint64_t n_bridges = 16000000;
  int bridge_steps = 128;
  double root_radius = 6.0;
  std::string out_dir = "out";
};

// Parses configuration text. Empty lines and lines starting with '#' are
// skipped; everything else must be key=value with a known key. Later
// assignments win. Throws std::invalid_argument with the offending line on
// unknown keys or malformed values.
RunConfig parse_config_text(const std::string& text);

// Reads and parses the file; throws std::invalid_argument if unreadable.
RunConfig parse_config(const std::string& path);

}  // namespace windsoup::cli
