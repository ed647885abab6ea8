#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

namespace airgeom {

enum class PowerUnit { Dbm, Linear };

struct ProfileBin {
  double altitude_m;
  double mean_power;  // linear units
};

/// Altitude-binned mean received power for one band/year. Powers are
/// stored in linear units regardless of the ingestion unit; the dB
/// reference used at ingestion is kept as metadata only.
struct AltitudeProfile {
  std::string band;
  std::string year;
  std::vector<ProfileBin> bins;  // altitudes strictly increasing
  PowerUnit source_unit = PowerUnit::Linear;

  Eigen::ArrayXd altitudes() const {
    Eigen::ArrayXd a(static_cast<Eigen::Index>(bins.size()));
    for (std::size_t i = 0; i < bins.size(); ++i)
      a[static_cast<Eigen::Index>(i)] = bins[i].altitude_m;
    return a;
  }

  Eigen::ArrayXd powers() const {
    Eigen::ArrayXd p(static_cast<Eigen::Index>(bins.size()));
    for (std::size_t i = 0; i < bins.size(); ++i)
      p[static_cast<Eigen::Index>(i)] = bins[i].mean_power;
    return p;
  }
};

}  // namespace airgeom
