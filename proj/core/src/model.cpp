#include "lightsim/model.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>

#include "lightsim/errors.hpp"

namespace lightsim {

int HouseSpec::luminaire_count() const {
  return std::accumulate(zones.begin(), zones.end(), 0,
                         [](int acc, const Zone& z) { return acc + z.luminaire_count; });
}

double HouseSpec::installed_power_w() const {
  double total = 0.0;
  for (const auto& z : zones) total += z.luminaire_count * z.luminaire_power_w;
  return total;
}

std::string_view to_string(DaylightMode mode) {
  switch (mode) {
    case DaylightMode::None:
      return "none";
    case DaylightMode::Harvest:
      return "harvest";
    case DaylightMode::HarvestDim:
      return "harvest_dim";
  }
  return "?";
}

std::string_view to_string(OccupancyMode mode) {
  switch (mode) {
    case OccupancyMode::None:
      return "none";
    case OccupancyMode::Schedule:
      return "schedule";
    case OccupancyMode::MotionDetection:
      return "motion_detection";
  }
  return "?";
}

std::string_view to_string(ProfileId profile) {
  return profile == ProfileId::Profile1 ? "Profile1" : "Profile2";
}

std::string scenario_id(const ControlFeatures& features, std::optional<ProfileId> profile) {
  std::string id;
  if (features.occupancy_mode != OccupancyMode::None) {
    id = features.occupancy_mode == OccupancyMode::Schedule ? "Sched" : "MD";
    if (profile) id += *profile == ProfileId::Profile1 ? " 1st" : " 2nd";
  }
  std::string daylight;
  switch (features.daylight_mode) {
    case DaylightMode::None:
      break;
    case DaylightMode::Harvest:
      daylight = "DH";
      break;
    case DaylightMode::HarvestDim:
      daylight = "DH+Dim";
      break;
  }
  if (id.empty()) return daylight.empty() ? "Baseline" : daylight;
  if (!daylight.empty()) id += "+" + daylight;
  return id;
}

namespace {

std::string normalize_id(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    out.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  }
  return out;
}

}  // namespace

bool scenario_id_matches(std::string_view a, std::string_view b) {
  return normalize_id(a) == normalize_id(b);
}

double scenario_capex(const ControlFeatures& features, int zone_count, int luminaire_count,
                      const DeviceCatalog& catalog) {
  if (features == ControlFeatures{}) return 0.0;
  double capex = luminaire_count * catalog.bulb_eur;
  if (features.daylight_mode != DaylightMode::None) {
    // The combined light/motion sensor covers motion detection as well.
    capex += zone_count * catalog.light_motion_sensor_eur + catalog.hub_eur;
  } else if (features.occupancy_mode == OccupancyMode::MotionDetection) {
    capex += zone_count * catalog.motion_sensor_eur + catalog.hub_eur;
  }
  return capex;
}

double scenario_capex(const ControlFeatures& features, int zone_count,
                      const DeviceCatalog& catalog) {
  return scenario_capex(features, zone_count, zone_count, catalog);
}

std::vector<Scenario> build_scenario_grid(const HouseSpec& house, const DeviceCatalog& catalog) {
  const int zones = static_cast<int>(house.zones.size());
  const int luminaires = house.luminaire_count();
  constexpr DaylightMode daylight_modes[] = {DaylightMode::None, DaylightMode::Harvest,
                                             DaylightMode::HarvestDim};

  std::vector<Scenario> grid;
  grid.reserve(15);
  auto add = [&](OccupancyMode occ, std::optional<ProfileId> profile) {
    for (auto dm : daylight_modes) {
      ControlFeatures f{dm, occ};
      grid.push_back({scenario_id(f, profile), f, profile,
                      scenario_capex(f, zones, luminaires, catalog)});
    }
  };
  add(OccupancyMode::None, std::nullopt);
  for (auto profile : {ProfileId::Profile1, ProfileId::Profile2}) {
    add(OccupancyMode::Schedule, profile);
    add(OccupancyMode::MotionDetection, profile);
  }
  return grid;
}

HouseSpec default_house(Location location) {
  HouseSpec house;
  house.location = std::move(location);
  for (const char* name : {"bedroom_1", "bedroom_2", "living_room", "kitchen_diner", "bathroom"}) {
    house.zones.push_back({name, 1, 11.0, 0.02, 300.0});
  }
  house.zones.push_back({"toilet", 1, 11.0, 0.01, 300.0});
  house.zones.push_back({"hall", 1, 11.0, 0.01, 300.0});
  return house;
}

std::vector<Violation> check_invariants(const Location& location, const std::string& path) {
  std::vector<Violation> out;
  if (location.name.empty()) out.push_back({path + "/name", "must not be empty"});
  if (!(location.latitude_deg >= -90.0 && location.latitude_deg <= 90.0))
    out.push_back({path + "/latitude", "must be within [-90, 90]"});
  if (!(location.longitude_deg >= -180.0 && location.longitude_deg <= 180.0))
    out.push_back({path + "/longitude", "must be within [-180, 180]"});
  if (!(location.utc_offset_h >= -12.0 && location.utc_offset_h <= 14.0))
    out.push_back({path + "/utc_offset", "must be within [-12, 14]"});
  if (const auto* cs = std::get_if<ClearSkyWeather>(&location.weather_source)) {
    if (!(cs->max_illuminance_lux > 0.0))
      out.push_back({path + "/weather/clear_sky/max_illuminance_lux", "must be > 0"});
    if (!(cs->sunshine_hours >= 0.0 && cs->sunshine_hours <= 8760.0))
      out.push_back({path + "/weather/clear_sky/sunshine_hours", "must be within [0, 8760]"});
  }
  return out;
}

std::vector<Violation> check_invariants(const Zone& zone, const std::string& path) {
  std::vector<Violation> out;
  if (zone.name.empty()) out.push_back({path + "/name", "must not be empty"});
  if (zone.luminaire_count < 1) out.push_back({path + "/luminaire_count", "must be >= 1"});
  if (!(zone.luminaire_power_w > 0.0))
    out.push_back({path + "/luminaire_power_w", "must be > 0"});
  if (!(zone.daylight_factor >= 0.0 && zone.daylight_factor <= 1.0))
    out.push_back({path + "/daylight_factor", "must be within [0, 1]"});
  if (!(zone.illuminance_setpoint_lux > 0.0))
    out.push_back({path + "/illuminance_setpoint_lux", "must be > 0"});
  return out;
}

std::vector<Violation> check_invariants(const HouseSpec& house) {
  std::vector<Violation> out;
  if (house.zones.empty()) out.push_back({"/zones", "at least one zone is required"});
  std::set<std::string> seen;
  for (std::size_t i = 0; i < house.zones.size(); ++i) {
    const std::string path = "/zones/" + std::to_string(i);
    auto zv = check_invariants(house.zones[i], path);
    out.insert(out.end(), zv.begin(), zv.end());
    if (!seen.insert(house.zones[i].name).second)
      out.push_back({path + "/name", "duplicate zone name '" + house.zones[i].name + "'"});
  }
  return out;
}

std::vector<Violation> check_invariants(const DeviceCatalog& catalog, const std::string& path) {
  std::vector<Violation> out;
  auto nonneg = [&](double v, const char* key) {
    if (!(v >= 0.0)) out.push_back({path + "/" + key, "price must be >= 0"});
  };
  nonneg(catalog.bulb_eur, "bulb_eur");
  nonneg(catalog.motion_sensor_eur, "motion_sensor_eur");
  nonneg(catalog.light_motion_sensor_eur, "light_motion_sensor_eur");
  nonneg(catalog.hub_eur, "hub_eur");
  return out;
}

void validate(const HouseSpec& house) {
  auto violations = check_invariants(house);
  if (violations.empty()) return;
  std::string msg = "invalid house:";
  for (const auto& v : violations) msg += " " + v.path + " " + v.message + ";";
  throw ConfigError(msg);
}

}  // namespace lightsim
