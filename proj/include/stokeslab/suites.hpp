// Named verification suites: each runs a batch of checks, returns a
// machine-readable result, and emits CSV series for external plotting. The
// CLI and the acceptance tests both drive these.
#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "stokeslab/analysis.hpp"
#include "stokeslab/force.hpp"
#include "stokeslab/types.hpp"

namespace stokeslab {

struct RunConfig {
  ModelParams params;
  ForceProfiles profiles;
  QuadSpec quad;
  std::string suite = "all";
  std::string output_dir = "out";
  int workers = 0;  // 0 = hardware concurrency
  long long region_samples = 100000;
  long long emptiness_samples = 1000000;
  ConditionArgs conditions;
};

RunConfig default_config();
nlohmann::json config_to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& j);

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;     // measured quantity
  double expected = 0.0;  // target (when meaningful)
  double tolerance = 0.0; // acceptance window (when meaningful)
  std::string note;
};

struct SuiteResult {
  std::string name;
  std::vector<CheckResult> checks;
  nlohmann::json details;
  std::vector<std::pair<std::string, std::vector<FieldSample>>> series;

  bool passed() const {
    for (const auto& c : checks)
      if (!c.passed) return false;
    return true;
  }
};

const std::vector<std::string>& suite_names();
SuiteResult run_suite(const std::string& name, const RunConfig& cfg);

// Runs the configured suite(s), writes report.json, metadata.json, and the
// CSV series under cfg.output_dir. Returns 0 iff every check passed.
int run_configured(const RunConfig& cfg);

}  // namespace stokeslab
