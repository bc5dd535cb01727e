#pragma once

#include <chrono>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "lightsim/calendar.hpp"

namespace lightsim {

/// Hourly EPW record restricted to the fields the simulator consumes. Absent
/// optionals correspond to the EPW missing-value sentinels.
struct EpwRecord {
  int month = 1;
  int day = 1;
  int hour = 1;  ///< 1-24, the hour ending at this clock time
  std::optional<double> global_horizontal_wh_m2;
  std::optional<double> direct_normal_wh_m2;
  std::optional<double> diffuse_horizontal_wh_m2;
  std::optional<double> global_horizontal_lux;

  bool operator==(const EpwRecord&) const = default;
};

struct EpwLocation {
  std::string city;
  std::string country;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double utc_offset_h = 0.0;
  double elevation_m = 0.0;
};

struct EpwFile {
  EpwLocation location;
  /// The eight header lines verbatim, LOCATION first.
  std::vector<std::string> header_lines;
  std::vector<EpwRecord> records;
};

inline constexpr double kEpwMissingIrradiance = 9999.0;
inline constexpr double kEpwMissingIlluminance = 999999.0;
inline constexpr std::size_t kEpwHeaderLines = 8;

/// Parses an EPW stream. Throws FormatError for a malformed header,
/// ParseError (row/column) for bad numeric fields and LengthError when the
/// file does not hold exactly 8760 data rows.
EpwFile parse_epw(std::istream& in);
EpwFile parse_epw_text(std::string_view text);
EpwFile load_epw(const std::string& path);

/// Debug writer: emits the header lines and one 35-column row per record.
/// Consumed columns carry the parsed values, all others the EPW missing codes.
void write_epw(std::ostream& out, const EpwFile& file);

struct SolarPosition {
  double elevation_deg = 0.0;
  double declination_deg = 0.0;
  double hour_angle_deg = 0.0;
};

/// Cooper declination plus the standard elevation formula. day_of_year is
/// 1-based, solar_hour is apparent solar time in hours (12 = solar noon).
SolarPosition solar_position(double latitude_deg, int day_of_year, double solar_hour);

/// Local clock time to apparent solar time: longitude correction only.
double solar_hour_from_clock(double clock_hour, double longitude_deg, double utc_offset_h);

inline constexpr double kDefaultLuminousEfficacy = 120.0;  // lm/W
inline constexpr double kSunshineThresholdWm2 = 120.0;

/// Uniform-attenuation clear-sky model.
struct ClearSkyModel {
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double utc_offset_h = 0.0;
  double max_illuminance_lux = 100000.0;
  double clearness = 1.0;
};

/// EPW mode: the illuminance field when present, else GHI x efficacy.
double exterior_illuminance(const EpwRecord& record, double luminous_efficacy);
/// Clear-sky mode: E_max * max(0, sin(elevation)) * clearness.
double exterior_illuminance(const ClearSkyModel& model, double solar_elevation_deg);

/// Hours with direct normal irradiance at or above 120 W/m2.
double sunshine_hours(std::span<const EpwRecord> records);

/// Clear-sky direct normal irradiance before the clearness factor.
double clear_sky_direct_normal(double solar_elevation_deg);

/// Synthesizes an hourly year from the clear-sky model (evaluated at mid-hour).
std::vector<EpwRecord> clear_sky_records(const ClearSkyModel& model,
                                         double luminous_efficacy = kDefaultLuminousEfficacy);

/// Smallest clearness in [0, 1] whose modeled sunshine hours reach the target.
double calibrate_clearness(ClearSkyModel model, double target_sunshine_hours);

/// Exterior horizontal illuminance for every step of the simulation year.
struct DaylightSeries {
  std::chrono::minutes timestep{10};
  std::vector<double> exterior_lux;

  /// Annual integral in lux-hours.
  double lux_hours() const;
};

/// EPW hourly values held constant across the sub-hourly steps of each hour.
DaylightSeries daylight_from_epw(std::span<const EpwRecord> records, const YearClock& clock,
                                 double luminous_efficacy = kDefaultLuminousEfficacy);

/// Clear-sky model evaluated at the midpoint of every step.
DaylightSeries daylight_from_clear_sky(const ClearSkyModel& model, const YearClock& clock);

}  // namespace lightsim
