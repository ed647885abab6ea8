#pragma once

#include <map>
#include <string>

#include "airgeom/estimation.hpp"
#include "airgeom/profile.hpp"
#include "airgeom/workbench/config.hpp"

namespace airgeom::workbench {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct DuplicateBin : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OffGridAltitude : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct UnknownProfile : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

using ProfileKey = std::pair<std::string, std::string>;  // (band, year)

/// Profiles and fit results for loaded campaigns, keyed by (band, year).
struct CampaignStore {
  std::map<ProfileKey, AltitudeProfile> profiles;
  std::map<ProfileKey, FitResult> fits;
  std::string source_file;
  std::string unit_declaration;

  const AltitudeProfile& profile(const std::string& band,
                                 const std::string& year) const;
};

/// Parse a profile CSV (header `band,year,altitude_m,mean_power`) into
/// the store. dBm inputs are converted to linear at ingestion; altitudes
/// are snapped to the configured grid (mismatch above 0.01 m is an
/// error); duplicate (band, year, altitude) rows are rejected.
void ingest_profiles(CampaignStore& store, const std::string& path,
                     PowerUnit unit, const GridSpec& grid);

/// Write one profile in the ingestion CSV format. Linear powers are
/// written with round-trip precision so ingest(write(p)) is bit-exact.
void write_profile(const AltitudeProfile& profile, const std::string& path,
                   PowerUnit unit);

std::string profile_to_csv(const AltitudeProfile& profile, PowerUnit unit);

}  // namespace airgeom::workbench
