// Batch driver: loads a JSON config, runs the named verification suite(s),
// and writes report.json plus per-suite CSV series into the output directory.
//
// Usage:
//   stokeslab run --config cfg.json [--suite NAME] [--out DIR] [--seed N]
//                 [--workers N]
//   stokeslab print-defaults
//
// Exit status: 0 all checks passed, 1 a check failed, 2 bad configuration.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "stokeslab/suites.hpp"

int main(int argc, char** argv) {
  CLI::App app{"half-space Stokes singularity laboratory"};
  app.require_subcommand(1);

  auto* print_cmd =
      app.add_subcommand("print-defaults", "print the default configuration");

  auto* run_cmd = app.add_subcommand("run", "run a verification suite");
  std::string config_path, suite_override, out_override;
  long long seed_override = -1;
  int workers_override = -1;
  run_cmd->add_option("--config", config_path, "JSON configuration file");
  run_cmd->add_option("--suite", suite_override, "suite name or 'all'");
  run_cmd->add_option("--out", out_override, "output directory");
  run_cmd->add_option("--seed", seed_override, "override the quadrature seed");
  run_cmd->add_option("--workers", workers_override,
                      "worker thread count (0 = all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (*print_cmd) {
    std::cout << stokeslab::config_to_json(stokeslab::default_config()).dump(2)
              << "\n";
    return 0;
  }

  stokeslab::RunConfig cfg;
  try {
    if (!config_path.empty()) {
      std::ifstream in(config_path);
      if (!in) {
        std::cerr << "error: cannot open config " << config_path << "\n";
        return 2;
      }
      nlohmann::json j;
      in >> j;
      cfg = stokeslab::config_from_json(j);
    } else {
      cfg = stokeslab::default_config();
    }
    if (!suite_override.empty()) cfg.suite = suite_override;
    if (!out_override.empty()) cfg.output_dir = out_override;
    if (seed_override >= 0)
      cfg.quad.seed = static_cast<std::uint64_t>(seed_override);
    if (workers_override >= 0) cfg.workers = workers_override;
    if (const char* env = std::getenv("STOKESLAB_OUTPUT_DIR"))
      cfg.output_dir = env;
    if (const char* env = std::getenv("STOKESLAB_WORKERS"))
      cfg.workers = std::atoi(env);

    if (cfg.suite != "all") {
      bool known = false;
      for (const auto& s : stokeslab::suite_names())
        if (s == cfg.suite) known = true;
      if (!known) {
        std::cerr << "error: unknown suite '" << cfg.suite << "'\n";
        return 2;
      }
    }
  } catch (const std::exception& e) {
    std::cerr << "error: bad configuration: " << e.what() << "\n";
    return 2;
  }

  try {
    return stokeslab::run_configured(cfg);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
