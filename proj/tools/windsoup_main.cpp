// Command line front end: windsoup <experiment> [--config FILE] [--seed N]
// [--replicas N] [--workers N] [--out DIR]. Exit code 0 when all gated
// checks pass, 1 when a gated check fails, 2 for usage or configuration
// errors.

#include <windsoup/config.hpp>
#include <windsoup/experiments.hpp>

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <string>

int main(int argc, char** argv) {
  CLI::App app{"Loop-soup winding field laboratory"};
  app.get_formatter()->column_width(30);

  std::string experiment;
  std::string config_path;
  std::string out_dir;
  uint64_t seed = 0;
  uint64_t replicas = 0;
  int workers = 0;
  bool seed_given = false, replicas_given = false, workers_given = false, out_given = false;

  std::string experiment_list;
  for (const std::string& name : windsoup::cli::experiment_names()) {
    if (!experiment_list.empty()) experiment_list += ", ";
    experiment_list += name;
  }
  app.add_option("experiment", experiment, "One of: " + experiment_list)->required();
  app.add_option("--config", config_path, "Path to a key=value configuration file");
  app.add_option("--seed", seed, "Master seed (overrides the config file)")
      ->each([&](const std::string&) { seed_given = true; });
  app.add_option("--replicas", replicas, "Replica count (overrides the config file)")
      ->each([&](const std::string&) { replicas_given = true; });
  app.add_option("--workers", workers, "Worker thread count (overrides the config file)")
      ->each([&](const std::string&) { workers_given = true; });
  app.add_option("--out", out_dir, "Output directory (overrides the config file)")
      ->each([&](const std::string&) { out_given = true; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    bool known = false;
    for (const std::string& name : windsoup::cli::experiment_names())
      if (name == experiment) known = true;
    if (!known) {
      std::cerr << "unknown experiment '" << experiment << "'; expected one of "
                << experiment_list << "\n";
      return 2;
    }

    windsoup::cli::RunConfig config;
    if (!config_path.empty()) config = windsoup::cli::parse_config(config_path);
    if (seed_given) config.seed = seed;
    if (replicas_given) config.replicas = replicas;
    if (workers_given) config.workers = workers;
    if (out_given) config.out_dir = out_dir;

    return windsoup::cli::run_and_report(experiment, config, std::cout);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::domain_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
