#pragma once

#include <string>
#include <vector>

#include "airgeom/core_model.hpp"
#include "airgeom/estimation.hpp"
#include "airgeom/synthetic_field.hpp"
#include "airgeom/transfer.hpp"

namespace airgeom::workbench {

/// Environment variable consulted for a default config path when no
/// --config flag is given.
inline constexpr const char* kConfigEnvVar = "AIRGEOM_CONFIG";

struct GridSpec {
  double min = 10.0;
  double max = 160.0;
  double step = 5.0;

  std::vector<double> altitudes() const;
  void validate() const;
};

/// Full run configuration. Defaults reproduce the standard scenario:
/// alpha = (2.2, 3.6), lambda = 1e-3, r0 = 20 m, unit gains, altitude
/// grid [10, 160] m at 5 m steps, calibration bins at 40 m and 100 m.
struct RunConfig {
  EnvironmentParams environment;
  PathLossPair pathloss;
  GridSpec grid;
  FitOptions fit;
  double transfer_h1 = 40.0;
  double transfer_h2 = 100.0;
  SimulationSpec simulation;
  ShadowingSpec shadowing;
  // Generator parameters for the simulate subcommand.
  LosTransition model_transition{0.08, 23.7};
  double model_c_eff = 1.0;
  double jitter_db = 0.0;

  ModelParams model_params() const {
    return ModelParams{model_transition, model_c_eff, pathloss};
  }
  void validate() const;
};

/// Parse a config JSON file; unknown keys are rejected, missing keys
/// keep their defaults.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const std::string& json_text);
std::string config_to_json(const RunConfig& config);

}  // namespace airgeom::workbench
