#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace lightsim {

/// A single invariant violation, located by a JSON-pointer-style path.
struct Violation {
  std::string path;
  std::string message;
};

/// Weather comes either from an EPW file or from the built-in clear-sky model.
struct EpwWeather {
  std::string path;
};

struct ClearSkyWeather {
  double max_illuminance_lux = 100000.0;
  /// Annual sunshine hours the clearness factor is calibrated against.
  double sunshine_hours = 2000.0;
};

using WeatherSource = std::variant<EpwWeather, ClearSkyWeather>;

struct Location {
  std::string name;
  double latitude_deg = 0.0;
  double longitude_deg = 0.0;
  double utc_offset_h = 0.0;
  std::string tariff_id;
  std::string emission_factors_id;
  WeatherSource weather_source = ClearSkyWeather{};
};

struct Zone {
  std::string name;
  int luminaire_count = 1;
  double luminaire_power_w = 11.0;
  double daylight_factor = 0.02;
  double illuminance_setpoint_lux = 300.0;
};

struct HouseSpec {
  std::vector<Zone> zones;
  Location location;

  int luminaire_count() const;
  /// Installed lighting power in watts.
  double installed_power_w() const;
};

enum class DaylightMode { None, Harvest, HarvestDim };
enum class OccupancyMode { None, Schedule, MotionDetection };
enum class ProfileId { Profile1, Profile2 };

struct ControlFeatures {
  DaylightMode daylight_mode = DaylightMode::None;
  OccupancyMode occupancy_mode = OccupancyMode::None;

  bool operator==(const ControlFeatures&) const = default;
};

struct Scenario {
  std::string id;
  ControlFeatures features;
  std::optional<ProfileId> profile;
  double capex_eur = 0.0;
};

/// Device prices. Bulbs are bought per luminaire, sensors per zone, the hub
/// once per house.
struct DeviceCatalog {
  double bulb_eur = 19.99;
  double motion_sensor_eur = 21.29;
  double light_motion_sensor_eur = 24.90;
  double hub_eur = 84.14;
};

std::string_view to_string(DaylightMode mode);
std::string_view to_string(OccupancyMode mode);
std::string_view to_string(ProfileId profile);

/// Stable label such as "Baseline", "DH+Dim", "Sched 1st+DH" or "MD 2nd+DH+Dim".
std::string scenario_id(const ControlFeatures& features, std::optional<ProfileId> profile);

/// Compares scenario labels ignoring case and whitespace, so that "MD 2nd +DH+Dim"
/// and "md 2nd+dh+dim" name the same scenario.
bool scenario_id_matches(std::string_view a, std::string_view b);

double scenario_capex(const ControlFeatures& features, int zone_count, int luminaire_count,
                      const DeviceCatalog& catalog);

/// Convenience overload for the one-luminaire-per-zone case.
double scenario_capex(const ControlFeatures& features, int zone_count, const DeviceCatalog& catalog);

/// Expands the three daylight modes against {no profile} and the scheduling and
/// motion-detection variants of both profiles: 15 scenarios in row-major order
/// (Baseline, DH, DH+Dim, Sched 1st, Sched 1st+DH, ..., MD 2nd+DH+Dim).
std::vector<Scenario> build_scenario_grid(const HouseSpec& house, const DeviceCatalog& catalog);

/// Two bedrooms, living room, kitchen-diner, bathroom, toilet and hall; one
/// 11 W luminaire each. Interior rooms (hall, toilet) get a lower daylight factor.
HouseSpec default_house(Location location = {});

std::vector<Violation> check_invariants(const Location& location, const std::string& path);
std::vector<Violation> check_invariants(const Zone& zone, const std::string& path);
std::vector<Violation> check_invariants(const HouseSpec& house);
std::vector<Violation> check_invariants(const DeviceCatalog& catalog, const std::string& path);

/// Throws ConfigError listing every violation of the house invariants.
void validate(const HouseSpec& house);

}  // namespace lightsim
