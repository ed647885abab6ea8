#include "airgeom/metrics.hpp"

#include <cmath>

namespace airgeom {

void PairedSeries::validate() const {
  if (observed.size() == 0) throw EmptySeries("PairedSeries: empty series");
  if (observed.size() != predicted.size())
    throw std::invalid_argument("PairedSeries: length mismatch");
  if ((observed <= 0.0).any() || (predicted <= 0.0).any())
    throw NonPositivePower("PairedSeries: all powers must be > 0");
}

double db_from_linear(double x) {
  if (!(x > 0.0)) throw NonPositivePower("db_from_linear: power must be > 0");
  return 10.0 * std::log10(x);
}

double linear_from_db(double x) { return std::pow(10.0, x / 10.0); }

Eigen::ArrayXd db_from_linear(const Eigen::ArrayXd& x) {
  if ((x <= 0.0).any())
    throw NonPositivePower("db_from_linear: power must be > 0");
  return 10.0 * x.log10();
}

Eigen::ArrayXd linear_from_db(const Eigen::ArrayXd& x) {
  return (x * (std::log(10.0) / 10.0)).exp();
}

double rmse_db(const PairedSeries& series) {
  series.validate();
  const Eigen::ArrayXd resid =
      db_from_linear(series.predicted) - db_from_linear(series.observed);
  return std::sqrt(resid.square().mean());
}

double rmse_linear(const PairedSeries& series) {
  series.validate();
  return std::sqrt((series.predicted - series.observed).square().mean());
}

std::optional<double> r_squared(const PairedSeries& series,
                                MetricDomain domain) {
  series.validate();
  Eigen::ArrayXd obs = series.observed;
  Eigen::ArrayXd pred = series.predicted;
  if (domain == MetricDomain::Db) {
    obs = db_from_linear(obs);
    pred = db_from_linear(pred);
  }
  const double ss_tot = (obs - obs.mean()).square().sum();
  if (ss_tot <= 0.0) return std::nullopt;  // constant observed series
  const double ss_res = (obs - pred).square().sum();
  return 1.0 - ss_res / ss_tot;
}

}  // namespace airgeom
