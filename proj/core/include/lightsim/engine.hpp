#pragma once

#include <array>
#include <chrono>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "lightsim/calendar.hpp"
#include "lightsim/model.hpp"
#include "lightsim/occupancy.hpp"
#include "lightsim/weather.hpp"

namespace lightsim {

enum class SimulationMode { Expected, Stochastic };

SimulationMode parse_simulation_mode(std::string_view name);
std::string_view to_string(SimulationMode mode);

struct SimulationConfig {
  std::chrono::minutes timestep{10};
  SimulationMode mode = SimulationMode::Expected;
  std::uint64_t seed = 0;
  /// Sensor timeout in stochastic mode; expected mode ignores it.
  std::chrono::minutes hold_time{10};
  Weekday first_day = Weekday::Monday;
  double harvest_hysteresis_lux = 0.0;
  /// Keep the per-step house power trace (W); off by default.
  bool keep_trace = false;

  YearClock clock() const { return YearClock{timestep, first_day}; }
};

struct ZoneEnergy {
  std::string zone;
  double energy_kwh = 0.0;
};

struct EnergyResult {
  double annual_energy_kwh = 0.0;
  std::vector<ZoneEnergy> per_zone;
  std::array<double, 12> monthly_energy_kwh{};
  std::optional<std::vector<double>> trace_w;
};

/// Non-owning occupancy gates. The engine picks the one matching the
/// scenario's occupancy mode.
struct OccupancyInputs {
  const OccupancySeries* schedule = nullptr;
  const OccupancySeries* motion = nullptr;
};

/// Annual lighting energy: sum over zones and steps of
/// count * power * f(zone, t) * dt, with f from the control functions.
/// Throws ConfigError on timestep or length mismatches and missing gates.
EnergyResult simulate_year(const HouseSpec& house, const Scenario& scenario,
                           const DaylightSeries& daylight, const OccupancyInputs& occupancy,
                           const SimulationConfig& config);

/// Everything the sweep needs for one location.
struct LocationCase {
  HouseSpec house;
  DaylightSeries daylight;
  Profile profile1 = lightsim::profile1();
  Profile profile2 = lightsim::profile2();
  HolidayCalendar holidays;

  const Profile& profile(ProfileId id) const { return id == ProfileId::Profile1 ? profile1 : profile2; }
};

struct SweepCell {
  std::string location;
  Scenario scenario;
  std::optional<EnergyResult> result;
  std::string error;  ///< set iff result is empty
};

/// Derives the per-cell seed from (seed, location, scenario id) by stable hashing.
std::uint64_t child_seed(std::uint64_t seed, std::string_view location, std::string_view scenario);

/// Evaluates one (location, scenario) cell, generating its occupancy gate.
EnergyResult evaluate_cell(const LocationCase& location, const Scenario& scenario,
                           const SimulationConfig& config);

/// Cartesian sweep, location-major. Cells may run concurrently; the output
/// order is fixed and a failing cell does not stop the others.
std::vector<SweepCell> sweep(const std::vector<LocationCase>& locations,
                             const std::vector<Scenario>& scenarios,
                             const SimulationConfig& config, unsigned threads = 0);

}  // namespace lightsim
