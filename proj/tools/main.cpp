// Command-line front end: profile ingestion, synthetic-data generation,
// fit/transfer orchestration, and report emission.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"

#include "airgeom/synthetic_field.hpp"
#include "airgeom/transfer.hpp"
#include "airgeom/workbench/config.hpp"
#include "airgeom/workbench/io.hpp"
#include "airgeom/workbench/report.hpp"
#include "airgeom/workbench/validate.hpp"

namespace {

using namespace airgeom;
using namespace airgeom::workbench;

constexpr int kExitOk = 0;
constexpr int kExitValidationFailure = 1;
constexpr int kExitUsage = 2;

RunConfig resolve_config(const std::string& config_path) {
  if (!config_path.empty()) return load_config(config_path);
  if (const char* env_path = std::getenv(kConfigEnvVar))
    if (*env_path) return load_config(env_path);
  return RunConfig{};
}

PowerUnit parse_unit(const std::string& unit) {
  if (unit == "dbm") return PowerUnit::Dbm;
  if (unit == "linear") return PowerUnit::Linear;
  throw CLI::ValidationError("--unit must be dbm or linear");
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << text;
  if (!out) throw IoError("failed writing: " + path);
}

int cmd_simulate(const RunConfig& config, const std::string& band,
                 const std::string& year, const std::string& out_path,
                 bool monte_carlo) {
  const ModelParams params = config.model_params();
  const std::vector<double> grid = config.grid.altitudes();
  AltitudeProfile profile;
  if (monte_carlo) {
    profile.band = band;
    profile.year = year;
    for (double h : grid) {
      const MonteCarloEstimate est = aggregate_interference(
          params, config.environment, config.shadowing, config.simulation, h);
      profile.bins.push_back({h, est.mean});
    }
  } else {
    profile = synthesize_profile(params, config.environment, grid,
                                 config.simulation.noise_floor,
                                 config.jitter_db, config.simulation.rng_seed,
                                 band, year);
  }
  write_profile(profile, out_path, PowerUnit::Linear);

  nlohmann::json meta;
  meta["generator"] = monte_carlo ? "monte-carlo" : "closed-form";
  meta["rng_algorithm"] = kRngAlgorithm;
  meta["seed"] = config.simulation.rng_seed;
  meta["band"] = band;
  meta["year"] = year;
  meta["config"] = nlohmann::json::parse(config_to_json(config));
  write_text(out_path + ".meta.json", meta.dump(2) + "\n");
  return kExitOk;
}

int cmd_fit(const RunConfig& config, const std::string& profiles_path,
            PowerUnit unit, const std::string& band, const std::string& year,
            const std::string& out_path) {
  CampaignStore store;
  ingest_profiles(store, profiles_path, unit, config.grid);
  const AltitudeProfile& profile = store.profile(band, year);
  const FitResult fit =
      fit_profile(profile, config.pathloss, config.environment, config.fit);
  std::cout << fit_table_header() << fit_table_row(year, band, fit);
  if (!out_path.empty())
    write_text(out_path, fit_result_json(year, band, fit) + "\n");
  return kExitOk;
}

int cmd_transfer(const RunConfig& config, const std::string& profiles_path,
                 PowerUnit unit, const std::string& band,
                 const std::string& reference_year,
                 const std::string& target_year, const std::string& out_path) {
  CampaignStore store;
  ingest_profiles(store, profiles_path, unit, config.grid);
  const AltitudeProfile& reference = store.profile(band, reference_year);
  const AltitudeProfile& target = store.profile(band, target_year);

  const FitResult reference_fit =
      fit_profile(reference, config.pathloss, config.environment, config.fit);
  const FitResult direct_fit =
      fit_profile(target, config.pathloss, config.environment, config.fit);

  const TransferSpec spec{config.transfer_h1, config.transfer_h2,
                          reference_fit.params.transition.h0};
  const TwoPointCalibration cal =
      two_point_calibrate(target, spec, config.pathloss, config.environment);
  const ModelParams transferred{{cal.beta_hat, spec.reference_h0},
                                cal.c_eff_hat, config.pathloss};
  TransferResult result =
      evaluate_transfer(target, transferred, direct_fit, config.environment);
  result.boundary = cal.boundary;

  std::cout << transfer_table_header() << transfer_table_row(band, result);
  if (!out_path.empty())
    write_text(out_path, transfer_result_json(band, reference_year,
                                              target_year, result) + "\n");
  return kExitOk;
}

int cmd_metrics(const RunConfig& config, const std::string& profiles_path,
                PowerUnit unit, const std::string& band,
                const std::string& year) {
  CampaignStore store;
  ingest_profiles(store, profiles_path, unit, config.grid);
  const AltitudeProfile& profile = store.profile(band, year);
  const ModelParams params = config.model_params();
  const PairedSeries series{
      profile.powers(),
      mean_interference(params, config.environment, profile.altitudes())};
  std::cout << "rmse_db      " << rmse_db(series) << "\n";
  std::cout << "rmse_linear  " << rmse_linear(series) << "\n";
  const auto r2l = r_squared(series, MetricDomain::Linear);
  const auto r2d = r_squared(series, MetricDomain::Db);
  std::cout << "r2_lin       " << (r2l ? std::to_string(*r2l) : "undefined")
            << "\n";
  std::cout << "r2_db        " << (r2d ? std::to_string(*r2d) : "undefined")
            << "\n";
  return kExitOk;
}

int cmd_validate(const RunConfig& config, const ValidationOptions& options) {
  const ValidationReport report = run_validation(config, options);
  std::cout << report.to_text();
  if (!report.all_passed()) {
    for (const ValidationCheck& c : report.checks)
      if (!c.passed) {
        std::cout << "validation failed at: " << c.name << "\n";
        break;
      }
    return kExitValidationFailure;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Altitude-dependent aggregate interference workbench"};
  app.require_subcommand(1);

  std::string config_path;
  app.add_option("--config", config_path, "Path to a run-config JSON file");

  std::optional<std::uint64_t> seed_override;
  app.add_option("--seed", seed_override, "Override the configured RNG seed");

  std::string unit = "linear";
  std::string profiles_path, band, year, out_path;
  std::string reference_year, target_year;
  bool monte_carlo = false;

  CLI::App* simulate = app.add_subcommand(
      "simulate", "Generate a synthetic profile CSV plus metadata sidecar");
  simulate->add_option("--band", band, "Band label")->required();
  simulate->add_option("--year", year, "Year label")->required();
  simulate->add_option("--out", out_path, "Output CSV path")->required();
  simulate->add_flag("--mc", monte_carlo,
                     "Use the Monte Carlo generator per bin instead of the "
                     "closed form");

  CLI::App* fit = app.add_subcommand("fit", "Fit one band/year profile");
  fit->add_option("--profiles", profiles_path, "Profile CSV")->required();
  fit->add_option("--unit", unit, "Power unit of the CSV: dbm|linear");
  fit->add_option("--band", band, "Band label")->required();
  fit->add_option("--year", year, "Year label")->required();
  fit->add_option("--out", out_path, "Machine-readable JSON output path");

  CLI::App* transfer = app.add_subcommand(
      "transfer", "Two-point inter-year transfer calibration");
  transfer->add_option("--profiles", profiles_path, "Profile CSV")->required();
  transfer->add_option("--unit", unit, "Power unit of the CSV: dbm|linear");
  transfer->add_option("--band", band, "Band label")->required();
  transfer->add_option("--reference-year", reference_year, "Reference year")
      ->required();
  transfer->add_option("--target-year", target_year, "Target year")->required();
  transfer->add_option("--out", out_path, "Machine-readable JSON output path");

  CLI::App* metrics = app.add_subcommand(
      "metrics", "Evaluate the configured model against one profile");
  metrics->add_option("--profiles", profiles_path, "Profile CSV")->required();
  metrics->add_option("--unit", unit, "Power unit of the CSV: dbm|linear");
  metrics->add_option("--band", band, "Band label")->required();
  metrics->add_option("--year", year, "Year label")->required();

  ValidationOptions validation;
  CLI::App* validate =
      app.add_subcommand("validate", "Run the oracle cross-check suites");
  validate->add_option("--mc-realizations", validation.mc_realizations,
                       "Monte Carlo realizations per check");
  validate
      ->add_option("--corrupt-exponent", validation.exponent_bias,
                   "Test hook: bias the closed-form exponent")
      ->group("");  // hidden

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    RunConfig config = resolve_config(config_path);
    if (seed_override) config.simulation.rng_seed = *seed_override;
    if (simulate->parsed())
      return cmd_simulate(config, band, year, out_path, monte_carlo);
    if (fit->parsed())
      return cmd_fit(config, profiles_path, parse_unit(unit), band, year,
                     out_path);
    if (transfer->parsed())
      return cmd_transfer(config, profiles_path, parse_unit(unit), band,
                          reference_year, target_year, out_path);
    if (metrics->parsed())
      return cmd_metrics(config, profiles_path, parse_unit(unit), band, year);
    if (validate->parsed()) return cmd_validate(config, validation);
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const CLI::ValidationError& e) {
    std::cerr << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidationFailure;
  }
  return kExitUsage;
}
