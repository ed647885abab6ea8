#include "airgeom/transfer.hpp"

#include <cmath>
#include <limits>
#include <vector>

namespace airgeom {

namespace {

double bin_power(const AltitudeProfile& profile, double altitude) {
  for (const ProfileBin& b : profile.bins)
    if (std::abs(b.altitude_m - altitude) < 1e-9) return b.mean_power;
  throw MissingBin("no profile bin at altitude " + std::to_string(altitude));
}

}  // namespace

TwoPointCalibration two_point_calibrate(const AltitudeProfile& profile,
                                        const TransferSpec& spec,
                                        const PathLossPair& pathloss,
                                        const EnvironmentParams& env,
                                        double beta_min, double beta_max) {
  if (spec.h1 == spec.h2)
    throw std::invalid_argument("TransferSpec: h1 and h2 must differ");
  const double y1 = bin_power(profile, spec.h1);
  const double y2 = bin_power(profile, spec.h2);
  const double target = std::log(y1 / y2);

  // Squared error between measured and predicted log-differences.
  const auto mismatch = [&](double beta) {
    const LosTransition t{beta, spec.reference_h0};
    const double d1 = shape_function(t, pathloss, env, spec.h1);
    const double d2 = shape_function(t, pathloss, env, spec.h2);
    const double g = target - std::log(d1 / d2);
    return g * g;
  };

  // Log-grid scan. The objective can have several local minima (two slopes
  // may reproduce the same two-point log-ratio), so every grid-local minimum
  // is polished rather than just the global grid argmin.
  constexpr int kScanPoints = 200;
  const double lo = std::log(beta_min);
  const double hi = std::log(beta_max);
  std::vector<double> grid(kScanPoints);
  std::vector<double> fval(kScanPoints);
  for (int i = 0; i < kScanPoints; ++i) {
    const auto u = static_cast<std::size_t>(i);
    grid[u] = lo + (hi - lo) * i / (kScanPoints - 1);
    fval[u] = mismatch(std::exp(grid[u]));
  }

  // Golden-section in log beta. Tolerance well below the 1e-8 bracket
  // target so c_eff substitution holds to 1e-10 relative.
  const auto polish = [&](double a, double b) {
    constexpr double kInvPhi = 0.6180339887498949;
    double x1 = b - kInvPhi * (b - a);
    double x2 = a + kInvPhi * (b - a);
    double f1 = mismatch(std::exp(x1));
    double f2 = mismatch(std::exp(x2));
    while (b - a > 1e-13) {
      if (f1 < f2) {
        b = x2; x2 = x1; f2 = f1;
        x1 = b - kInvPhi * (b - a);
        f1 = mismatch(std::exp(x1));
      } else {
        a = x1; x1 = x2; f1 = f2;
        x2 = a + kInvPhi * (b - a);
        f2 = mismatch(std::exp(x2));
      }
    }
    return 0.5 * (a + b);
  };

  // Candidates: one polished point per grid-local minimum (endpoints count).
  double best_log_beta = grid[0];
  double best_obj = std::numeric_limits<double>::infinity();
  bool best_exact = false;
  constexpr double kExactObjective = 1e-16;  // |log-ratio mismatch| < 1e-8
  for (int i = 0; i < kScanPoints; ++i) {
    const auto u = static_cast<std::size_t>(i);
    const bool left_ok = i == 0 || fval[u] <= fval[u - 1];
    const bool right_ok = i == kScanPoints - 1 || fval[u] <= fval[u + 1];
    if (!left_ok || !right_ok) continue;
    const double a = grid[static_cast<std::size_t>(std::max(0, i - 1))];
    const double b = grid[static_cast<std::size_t>(std::min(kScanPoints - 1, i + 1))];
    double cand = polish(a, b);
    double obj = mismatch(std::exp(cand));
    if (fval[u] < obj) {
      cand = grid[u];
      obj = fval[u];
    }
    const bool exact = obj < kExactObjective;
    // Several slopes can satisfy the two-point constraint to machine
    // precision; keep the steepest such slope. It corresponds to an actual
    // LoS transition rather than the near-flat branch that matches the
    // ratio incidentally.
    const bool better = exact ? (!best_exact || cand > best_log_beta)
                              : (!best_exact && obj < best_obj);
    if (better) {
      best_log_beta = cand;
      best_obj = obj;
      best_exact = exact;
    }
  }

  TwoPointCalibration out;
  out.beta_hat = std::exp(best_log_beta);
  out.boundary = out.beta_hat <= beta_min * 1.001 ||
                 out.beta_hat >= beta_max * 0.999;
  const LosTransition t{out.beta_hat, spec.reference_h0};
  out.c_eff_hat = y1 / shape_function(t, pathloss, env, spec.h1);
  return out;
}

TransferResult evaluate_transfer(const AltitudeProfile& profile,
                                 const ModelParams& transferred,
                                 const FitResult& direct,
                                 const EnvironmentParams& env) {
  TransferResult out;
  out.beta_hat = transferred.transition.beta;
  out.c_eff_hat = transferred.c_eff;
  out.c_tilde_hat = frequency_normalized_activity(transferred.c_eff, env);

  const Eigen::ArrayXd predicted =
      mean_interference(transferred, env, profile.altitudes());
  const PairedSeries series{profile.powers(), predicted};
  out.rmse_db = rmse_db(series);
  out.r2_db = r_squared(series, MetricDomain::Db);
  out.delta_rmse_db = out.rmse_db - direct.rmse_db;
  if (direct.rmse_db > 0.0) {
    out.transfer_score = out.rmse_db / direct.rmse_db;
  } else {
    out.transfer_score = std::numeric_limits<double>::infinity();
    out.score_infinite = true;
  }
  return out;
}

}  // namespace airgeom
