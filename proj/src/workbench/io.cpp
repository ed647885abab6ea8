#include "airgeom/workbench/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

#include "airgeom/metrics.hpp"

namespace airgeom::workbench {

const AltitudeProfile& CampaignStore::profile(const std::string& band,
                                              const std::string& year) const {
  const auto it = profiles.find({band, year});
  if (it == profiles.end())
    throw UnknownProfile("no profile for band '" + band + "', year '" + year +
                         "'");
  return it->second;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::stringstream ss(line);
  std::string field;
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.emplace_back();
  return fields;
}

double parse_number(const std::string& s, int line_no, const char* what) {
  double value;
  const char* begin = s.data();
  const char* end = begin + s.size();
  while (begin < end && (*begin == ' ' || *begin == '\t')) ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc{} || ptr != end || !std::isfinite(value))
    throw ParseError("line " + std::to_string(line_no) + ": bad " + what +
                     " '" + s + "'");
  return value;
}

double snap_to_grid(double altitude, const GridSpec& grid, int line_no) {
  const double k = std::round((altitude - grid.min) / grid.step);
  const double snapped = grid.min + k * grid.step;
  if (std::abs(snapped - altitude) > 0.01 || snapped < grid.min - 1e-9 ||
      snapped > grid.max + 1e-9)
    throw OffGridAltitude("line " + std::to_string(line_no) + ": altitude " +
                          std::to_string(altitude) +
                          " is not on the configured grid");
  return snapped;
}

std::string format_double(double x) {
  char buf[32];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), x, std::chars_format::general, 17);
  return std::string(buf, ptr);
}

}  // namespace

void ingest_profiles(CampaignStore& store, const std::string& path,
                     PowerUnit unit, const GridSpec& grid) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open profile file: " + path);
  std::string line;
  int line_no = 0;
  if (!std::getline(in, line))
    throw ParseError("line 1: empty profile file");
  ++line_no;
  if (!line.empty() && line.back() == '\r') line.pop_back();
  if (line != "band,year,altitude_m,mean_power")
    throw ParseError("line 1: expected header band,year,altitude_m,mean_power");

  std::map<ProfileKey, AltitudeProfile> incoming;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (fields.size() != 4)
      throw ParseError("line " + std::to_string(line_no) +
                       ": expected 4 fields, got " +
                       std::to_string(fields.size()));
    const std::string& band = fields[0];
    const std::string& year = fields[1];
    if (band.empty() || year.empty())
      throw ParseError("line " + std::to_string(line_no) +
                       ": band and year must be non-empty");
    const double altitude =
        snap_to_grid(parse_number(fields[2], line_no, "altitude"), grid, line_no);
    double power = parse_number(fields[3], line_no, "mean_power");
    if (unit == PowerUnit::Dbm) {
      power = linear_from_db(power);
    } else if (!(power > 0.0)) {
      throw ParseError("line " + std::to_string(line_no) +
                       ": linear mean_power must be > 0");
    }
    AltitudeProfile& prof = incoming[{band, year}];
    prof.band = band;
    prof.year = year;
    prof.source_unit = unit;
    for (const ProfileBin& b : prof.bins)
      if (std::abs(b.altitude_m - altitude) < 1e-9)
        throw DuplicateBin("line " + std::to_string(line_no) +
                           ": duplicate bin (" + band + ", " + year + ", " +
                           std::to_string(altitude) + ")");
    prof.bins.push_back({altitude, power});
  }

  for (auto& [key, prof] : incoming) {
    std::sort(prof.bins.begin(), prof.bins.end(),
              [](const ProfileBin& a, const ProfileBin& b) {
                return a.altitude_m < b.altitude_m;
              });
    store.profiles[key] = std::move(prof);
  }
  store.source_file = path;
  store.unit_declaration = unit == PowerUnit::Dbm ? "dBm" : "linear";
}

std::string profile_to_csv(const AltitudeProfile& profile, PowerUnit unit) {
  std::string out = "band,year,altitude_m,mean_power\n";
  for (const ProfileBin& b : profile.bins) {
    const double power =
        unit == PowerUnit::Dbm ? db_from_linear(b.mean_power) : b.mean_power;
    out += profile.band + "," + profile.year + "," +
           format_double(b.altitude_m) + "," + format_double(power) + "\n";
  }
  return out;
}

void write_profile(const AltitudeProfile& profile, const std::string& path,
                   PowerUnit unit) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open output file: " + path);
  out << profile_to_csv(profile, unit);
  if (!out) throw IoError("failed writing profile: " + path);
}

}  // namespace airgeom::workbench
