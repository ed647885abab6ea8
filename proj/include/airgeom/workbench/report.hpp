#pragma once

#include <string>

#include "airgeom/estimation.hpp"
#include "airgeom/transfer.hpp"

namespace airgeom::workbench {

/// One fitted-campaign row: Year, Band, beta, H0 [m], C~, RMSE [dB],
/// R2_lin, R2_dB. beta to 2 decimals, H0 to 1 decimal, C~ in scientific
/// notation below 0.1.
std::string fit_table_header();
std::string fit_table_row(const std::string& year, const std::string& band,
                          const FitResult& fit);
std::string fit_result_json(const std::string& year, const std::string& band,
                            const FitResult& fit);

/// One transfer row: Band, beta, C~, RMSE_dB, R2_dB, dRMSE_dB, Score.
std::string transfer_table_header();
std::string transfer_table_row(const std::string& band,
                               const TransferResult& result);
std::string transfer_result_json(const std::string& band,
                                 const std::string& reference_year,
                                 const std::string& target_year,
                                 const TransferResult& result);

std::string format_activity(double c_tilde);

}  // namespace airgeom::workbench
