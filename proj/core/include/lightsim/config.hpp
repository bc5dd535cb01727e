#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lightsim/econ.hpp"
#include "lightsim/engine.hpp"
#include "lightsim/model.hpp"
#include "lightsim/occupancy.hpp"

namespace lightsim {

/// Everything needed to run the scenario study: the house, prices, tariffs,
/// occupancy, weather per location and the run settings.
struct StudyConfig {
  std::vector<Zone> zones;
  DeviceCatalog catalog;
  std::vector<Location> locations;
  std::map<std::string, Tariff> tariffs;
  std::map<std::string, EmissionFactors> emission_factors;
  Profile profile1 = lightsim::profile1();
  Profile profile2 = lightsim::profile2();
  HolidayCalendar holidays;
  SimulationConfig simulation;
  double luminous_efficacy = kDefaultLuminousEfficacy;
  EconomicAssumptions economics;
  std::string reference_scenario = "Baseline";

  HouseSpec house(const Location& location) const { return HouseSpec{zones, location}; }
  const Tariff& tariff_for(const Location& location) const;
  const EmissionFactors& emission_factors_for(const Location& location) const;
};

/// The two-city study: default house, device prices, German flat and
/// Algerian tiered (quarterly) tariffs, German-grid emission factors and the
/// bundled EPW fixtures under data_dir/weather.
StudyConfig default_study_config(const std::filesystem::path& data_dir);

struct ConfigParseResult {
  std::optional<StudyConfig> config;
  std::vector<Violation> violations;

  bool ok() const { return config.has_value() && violations.empty(); }
};

/// Parses the JSON document. Relative weather paths resolve against base_dir.
/// Every schema or invariant problem is reported with a JSON-pointer path;
/// config is empty when any violation was found.
ConfigParseResult parse_config(std::string_view json_text, const std::filesystem::path& base_dir);

/// Reads and parses a config file. Throws Error if the file cannot be read.
ConfigParseResult load_config(const std::filesystem::path& path);

/// Parses and throws ConfigError carrying every violation on failure.
StudyConfig parse_config_or_throw(std::string_view json_text, const std::filesystem::path& base_dir);

/// Serializes a config back to the JSON document format.
std::string to_json(const StudyConfig& config, int indent = 2);

/// "HH:MM" <-> minutes after midnight; "24:00" is allowed as an end time.
std::optional<int> parse_clock_time(std::string_view text);
std::string format_clock_time(int minutes);

}  // namespace lightsim
