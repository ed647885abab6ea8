#pragma once

#include <Eigen/Dense>
#include <optional>
#include <stdexcept>

namespace airgeom {

struct EmptySeries : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NonPositivePower : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Observed/predicted linear powers aligned by altitude bin. All values
/// must be strictly positive so dB conversion is total.
struct PairedSeries {
  Eigen::ArrayXd observed;
  Eigen::ArrayXd predicted;

  void validate() const;
};

enum class MetricDomain { Linear, Db };

double db_from_linear(double x);
double linear_from_db(double x);
Eigen::ArrayXd db_from_linear(const Eigen::ArrayXd& x);
Eigen::ArrayXd linear_from_db(const Eigen::ArrayXd& x);

/// RMSE of the dB-domain residuals 10 log10(pred) - 10 log10(obs).
double rmse_db(const PairedSeries& series);

/// Linear-domain RMSE, exposed under its own name so both readings of
/// "RMSE" are computable. Reports sqrt(mean((pred - obs)^2)) in linear
/// power units.
double rmse_linear(const PairedSeries& series);

/// Coefficient of determination 1 - SS_res/SS_tot in the chosen domain,
/// with SS_tot about the observed mean. At most 1, unbounded below.
/// Returns nullopt when the observed series is constant in that domain
/// (R^2 undefined; no silent NaN).
std::optional<double> r_squared(const PairedSeries& series,
                                MetricDomain domain);

}  // namespace airgeom
