#pragma once

#include "airgeom/estimation.hpp"

namespace airgeom {

struct MissingBin : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Two calibration altitudes plus the transition altitude frozen from a
/// reference-year fit. Both altitudes must match bins of the target
/// profile exactly (ingestion snaps to the grid; no interpolation).
struct TransferSpec {
  double h1 = 40.0;
  double h2 = 100.0;
  double reference_h0 = 0.0;
};

struct TwoPointCalibration {
  double beta_hat = 0.0;
  double c_eff_hat = 0.0;
  // Set when the log-ratio objective is minimized at a search bound:
  // the two observations carry no resolvable slope information (the
  // uplink-like regime). The values are still usable as a flat model.
  bool boundary = false;
};

struct TransferResult {
  double beta_hat = 0.0;
  double c_eff_hat = 0.0;
  double c_tilde_hat = 0.0;
  double rmse_db = 0.0;
  std::optional<double> r2_db;
  double delta_rmse_db = 0.0;
  double transfer_score = 0.0;  // rmse_db / direct.rmse_db
  bool score_infinite = false;  // direct fit was perfect
  bool boundary = false;
};

/// Eq.-style two-point calibration: beta from the log-ratio of the two
/// bin powers (which cancels c_eff), then c_eff by direct substitution
/// at h1. Bracketed 1-D search over beta in [beta_min, beta_max]: a
/// 200-point log-grid scan followed by golden-section polish.
TwoPointCalibration two_point_calibrate(const AltitudeProfile& profile,
                                        const TransferSpec& spec,
                                        const PathLossPair& pathloss,
                                        const EnvironmentParams& env,
                                        double beta_min = 1e-3,
                                        double beta_max = 2.0);

/// Evaluate a transferred model over ALL bins of the target profile and
/// relate it to the target's direct fit: delta_rmse_db = rmse - direct
/// rmse, transfer_score = rmse / direct rmse (infinite-flag sentinel
/// when the direct fit is perfect).
TransferResult evaluate_transfer(const AltitudeProfile& profile,
                                 const ModelParams& transferred,
                                 const FitResult& direct,
                                 const EnvironmentParams& env);

}  // namespace airgeom
