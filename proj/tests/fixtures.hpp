// Published per-campaign fits and transfer rows used as test fixtures.
#pragma once

#include <string>
#include <vector>

#include "airgeom/core_model.hpp"

namespace fixtures {

struct CampaignRow {
  std::string year;
  std::string band;
  double beta;
  double h0;
  double c_tilde;
  double rmse_db;
  double r2_lin;
  double r2_db;
};

inline const std::vector<CampaignRow>& campaign_rows() {
  static const std::vector<CampaignRow> rows = {
      {"2023", "LTE B13 DL", 0.29, 22.1, 1.90, 2.74, 0.30, 0.81},
      {"2023", "LTE B13 UL", 0.01, -199.6, 6.21e-4, 0.56, 0.91, 0.03},
      {"2023", "5G n5 DL", 0.08, 14.0, 1.23, 2.77, 0.87, 0.85},
      {"2023", "5G n5 UL", 0.06, -31.0, 2.46e-3, 0.68, 0.35, 0.41},
      {"2023", "CBRS", 0.03, -49.0, 1.33e-3, 0.35, 1.00, 0.90},
      {"2024", "LTE B13 DL", 0.35, 27.0, 1.00, 2.97, 0.81, 0.78},
      {"2024", "LTE B13 UL", 0.02, -120.8, 2.61e-3, 0.25, 0.68, 0.22},
      {"2024", "5G n5 DL", 0.08, 14.3, 1.11, 2.26, 0.94, 0.88},
      {"2024", "5G n5 UL", 0.05, -35.5, 5.47e-3, 0.40, 0.64, 0.71},
      {"2024", "CBRS", 0.05, -14.3, 1.38e-3, 0.46, 1.00, 0.94},
      {"2025", "LTE B13 DL", 0.16, 19.3, 1.25, 1.98, 0.67, 0.89},
      {"2025", "LTE B13 UL", 0.03, -101.5, 2.35e-3, 0.31, 0.60, 0.20},
      {"2025", "5G n5 DL", 0.08, 23.7, 2.48, 1.95, 0.94, 0.94},
      {"2025", "5G n5 UL", 0.05, -32.5, 1.20e-2, 0.71, 0.40, 0.48},
      {"2025", "CBRS", 0.05, -24.3, 1.81e-3, 0.44, 1.00, 0.90},
  };
  return rows;
}

inline const CampaignRow& row(const std::string& year,
                              const std::string& band) {
  for (const CampaignRow& r : campaign_rows())
    if (r.year == year && r.band == band) return r;
  throw std::logic_error("no fixture row for " + year + " " + band);
}

struct TransferRow {
  std::string band;
  double beta;
  double c_tilde;
  double rmse_db;
  double r2_db;
  double delta_rmse_db;
  double score;
};

// 2024 -> 2025 transfer, two-point calibration at 40 m and 100 m.
inline const std::vector<TransferRow>& transfer_rows() {
  static const std::vector<TransferRow> rows = {
      {"LTE B13 DL", 0.19, 1.28, 2.77, 0.79, 0.79, 1.40},
      {"LTE B13 UL", 0.03, 2.17e-3, 0.43, -0.57, 0.12, 1.40},
      {"5G n5 DL", 0.04, 2.69, 3.89, 0.76, 1.93, 1.99},
      {"5G n5 UL", 0.05, 1.19e-2, 0.75, 0.42, 0.04, 1.05},
      {"CBRS", 0.06, 1.72e-3, 0.59, 0.81, 0.15, 1.34},
  };
  return rows;
}

inline std::vector<double> standard_grid() {
  std::vector<double> grid;
  for (int h = 10; h <= 160; h += 5) grid.push_back(h);
  return grid;
}

inline airgeom::EnvironmentParams standard_env() {
  return airgeom::EnvironmentParams{1e-3, 20.0, 1.0, 1.0, 3.5e9};
}

inline airgeom::PathLossPair standard_pathloss() {
  return airgeom::PathLossPair{2.2, 3.6};
}

}  // namespace fixtures
