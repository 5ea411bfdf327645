#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "nuband/phase.hpp"
#include "vendor_json_fwd.hpp"

namespace nuband {

// Schema-validated experiment description; unknown keys are rejected.
struct ExperimentConfig {
  nlohmann::json coin = nlohmann::json{{"family", "drift"}, {"xi", 0.26}, {"eta", 1.05}};
  std::string phases = "uniform";  // point | uniform | torus
  double eps = 0.1;
  double theta0 = 0.0;
  std::uint64_t seed = 1;
  int M = 64;
  std::string bc = "periodic";  // open | periodic
  int xsamples = 2048;
  std::vector<int> ells = {2, 4, 8};
  int words_per_l = 200;
  int grid = 0;  // pseudospectrum resolution per axis; 0 disables
  bool regions = true;
  bool hull = false;
  bool walk = false;
  std::string out = "out";

  static ExperimentConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;
  PhaseField phase_field() const;
};

// Runs the experiment and writes the report bundle (JSON report, CSVs, SVGs)
// under cfg.out. Returns the report. Deterministic: identical config and seed
// produce identical bytes.
nlohmann::json run_experiment(const ExperimentConfig& cfg, int threads = 0);

}  // namespace nuband
