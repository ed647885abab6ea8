#include "airgeom/workbench/report.hpp"

#include <cmath>
#include <cstdio>

#include "json.hpp"

namespace airgeom::workbench {

namespace {

std::string fixed(double x, int decimals) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.*f", decimals, x);
  return buf;
}

std::string r2_or_dash(const std::optional<double>& r2) {
  return r2 ? fixed(*r2, 2) : std::string("undef");
}

double json_r2(const std::optional<double>& r2) {
  return r2 ? *r2 : std::nan("");
}

}  // namespace

std::string format_activity(double c_tilde) {
  if (c_tilde >= 0.1) return fixed(c_tilde, 2);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.2e", c_tilde);
  return buf;
}

std::string fit_table_header() {
  return "Year  Band          beta   H0 [m]   C~         RMSE [dB]  R2_lin  R2_dB\n";
}

std::string fit_table_row(const std::string& year, const std::string& band,
                          const FitResult& fit) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-5s %-13s %-6s %-8s %-10s %-10s %-7s %s%s\n",
                year.c_str(), band.c_str(),
                fixed(fit.params.transition.beta, 2).c_str(),
                fixed(fit.params.transition.h0, 1).c_str(),
                format_activity(fit.c_tilde).c_str(),
                fixed(fit.rmse_db, 2).c_str(), r2_or_dash(fit.r2_lin).c_str(),
                r2_or_dash(fit.r2_db).c_str(),
                fit.degenerate ? "  [degenerate: flat profile]" : "");
  return buf;
}

std::string fit_result_json(const std::string& year, const std::string& band,
                            const FitResult& fit) {
  nlohmann::json j;
  j["year"] = year;
  j["band"] = band;
  j["beta"] = fit.params.transition.beta;
  j["h0_m"] = fit.params.transition.h0;
  j["c_eff"] = fit.params.c_eff;
  j["c_tilde"] = fit.c_tilde;
  j["rmse_db"] = fit.rmse_db;
  if (fit.r2_lin) j["r2_lin"] = *fit.r2_lin; else j["r2_lin"] = nullptr;
  if (fit.r2_db) j["r2_db"] = *fit.r2_db; else j["r2_db"] = nullptr;
  j["fit_domain"] = fit.fit_domain == FitDomain::Db ? "dB" : "linear";
  j["objective"] = fit.objective;
  j["degenerate"] = fit.degenerate;
  return j.dump(2);
}

std::string transfer_table_header() {
  return "Band          beta   C~         RMSE_dB  R2_dB   dRMSE_dB  Score\n";
}

std::string transfer_table_row(const std::string& band,
                               const TransferResult& result) {
  char buf[256];
  std::snprintf(buf, sizeof(buf), "%-13s %-6s %-10s %-8s %-7s %+-9.2f %s%s%s\n",
                band.c_str(), fixed(result.beta_hat, 2).c_str(),
                format_activity(result.c_tilde_hat).c_str(),
                fixed(result.rmse_db, 2).c_str(),
                r2_or_dash(result.r2_db).c_str(), result.delta_rmse_db,
                result.score_infinite ? "inf"
                                      : fixed(result.transfer_score, 2).c_str(),
                result.boundary ? "  [boundary: no slope information]" : "",
                result.score_infinite ? "  [perfect direct fit]" : "");
  return buf;
}

std::string transfer_result_json(const std::string& band,
                                 const std::string& reference_year,
                                 const std::string& target_year,
                                 const TransferResult& result) {
  nlohmann::json j;
  j["band"] = band;
  j["reference_year"] = reference_year;
  j["target_year"] = target_year;
  j["beta_hat"] = result.beta_hat;
  j["c_eff_hat"] = result.c_eff_hat;
  j["c_tilde_hat"] = result.c_tilde_hat;
  j["rmse_db"] = result.rmse_db;
  if (result.r2_db) j["r2_db"] = *result.r2_db; else j["r2_db"] = nullptr;
  j["delta_rmse_db"] = result.delta_rmse_db;
  if (result.score_infinite) j["transfer_score"] = "inf";
  else j["transfer_score"] = result.transfer_score;
  j["boundary"] = result.boundary;
  return j.dump(2);
}

}  // namespace airgeom::workbench
