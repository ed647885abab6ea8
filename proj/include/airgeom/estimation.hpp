#pragma once

#include <optional>

#include "airgeom/core_model.hpp"
#include "airgeom/metrics.hpp"
#include "airgeom/profile.hpp"

namespace airgeom {

struct InsufficientData : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class FitDomain { Db, Linear };

struct FitOptions {
  FitDomain domain = FitDomain::Db;
  double beta_min = 1e-3;
  double beta_max = 2.0;
  double h0_min = -300.0;
  double h0_max = 300.0;
  int beta_grid_points = 60;   // log-spaced
  int h0_grid_points = 121;    // linear
  double refine_tol = 1e-9;    // simplex size in (log beta, h0)
  // When set, subtracted from the observed powers before fitting
  // (synthetic studies with a known generation-side noise floor).
  std::optional<double> known_noise_floor;
};

/// One fitted campaign: parameters, the normalized activity index, and
/// the goodness-of-fit metrics evaluated on the full profile.
struct FitResult {
  ModelParams params;
  double c_tilde = 0.0;
  double rmse_db = 0.0;
  std::optional<double> r2_lin;
  std::optional<double> r2_db;
  FitDomain fit_domain = FitDomain::Db;
  double objective = 0.0;    // residual sum of squares in fit_domain
  bool degenerate = false;   // flat profile, beta pinned at lower bound
};

/// Exactly-optimal c_eff for fixed (beta, h0) in the given domain.
/// dB domain: the optimal offset is the mean dB residual. Linear
/// domain: the optimal scale is <Y D>/<D^2>.
double profiled_scale(const AltitudeProfile& profile,
                      const LosTransition& transition,
                      const PathLossPair& pathloss,
                      const EnvironmentParams& env, FitDomain domain);

/// Full least-squares fit of (beta, h0, c_eff) to one profile: c_eff is
/// profiled out in closed form at each candidate, the outer 2-D search
/// is a coarse grid over (beta, h0) followed by Nelder-Mead refinement.
/// Among equal-objective minima the smaller beta, then the smaller
/// |h0|, wins.
FitResult fit_profile(const AltitudeProfile& profile,
                      const PathLossPair& pathloss,
                      const EnvironmentParams& env,
                      const FitOptions& options = {});

}  // namespace airgeom
