#pragma once

#include <map>
#include <string>
#include <vector>

#include "lightsim/config.hpp"
#include "lightsim/econ.hpp"
#include "lightsim/engine.hpp"

namespace lightsim {

/// One (location, scenario) line of the study.
struct ScenarioRow {
  std::string location;
  Scenario scenario;
  EnergyResult energy;
  MetricsReport metrics;
  /// Lighting cost billed with quarterly and with annual tier windows; both
  /// equal the configured cost for flat tariffs.
  double cost_quarterly_window_eur = 0.0;
  double cost_annual_window_eur = 0.0;
  /// Payback counting only the sensors and hub, not the bulbs.
  std::optional<double> payback_net_of_bulbs_years;
};

struct LocationWeather {
  std::string location;
  std::string source;  ///< EPW path or "clear-sky"
  double sunshine_hours = 0.0;
  double daylight_lux_hours = 0.0;
};

struct StudyResult {
  std::vector<ScenarioRow> rows;
  std::vector<LocationWeather> weather;
  /// Per-cell failures with (location / scenario) context.
  std::vector<std::string> errors;
};

/// Weather, occupancy inputs and house for one configured location. Throws
/// Error (naming the path) when an EPW file cannot be read or parsed.
LocationCase prepare_location(const StudyConfig& config, const Location& location,
                              LocationWeather* weather_out = nullptr);

/// Runs the sweep and the economics for every location. An empty filter
/// selects the full 15-scenario grid; the reference scenario is always
/// simulated so that inflows can be computed, but only listed if selected.
StudyResult run_study(const StudyConfig& config, const std::vector<std::string>& scenario_filter = {},
                      unsigned threads = 0);

}  // namespace lightsim
