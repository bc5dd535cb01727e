#include "lightsim/engine.hpp"

#include <algorithm>
#include <atomic>
#include <thread>

#include "lightsim/control.hpp"
#include "lightsim/errors.hpp"

namespace lightsim {

SimulationMode parse_simulation_mode(std::string_view name) {
  if (name == "expected") return SimulationMode::Expected;
  if (name == "stochastic") return SimulationMode::Stochastic;
  throw ConfigError("unknown simulation mode '" + std::string(name) + "'");
}

std::string_view to_string(SimulationMode mode) {
  return mode == SimulationMode::Expected ? "expected" : "stochastic";
}

namespace {

const OccupancySeries* select_gate(const Scenario& scenario, const OccupancyInputs& occupancy) {
  switch (scenario.features.occupancy_mode) {
    case OccupancyMode::None:
      return nullptr;
    case OccupancyMode::Schedule:
      if (!occupancy.schedule)
        throw ConfigError("scenario '" + scenario.id + "' needs a schedule series");
      return occupancy.schedule;
    case OccupancyMode::MotionDetection:
      if (!occupancy.motion)
        throw ConfigError("scenario '" + scenario.id + "' needs a motion occupancy series");
      return occupancy.motion;
  }
  return nullptr;
}

void check_series(std::chrono::minutes timestep, std::size_t size, const YearClock& clock,
                  const char* what) {
  if (timestep != clock.timestep())
    throw ConfigError(std::string(what) + " timestep does not match the simulation timestep");
  if (size != clock.steps())
    throw ConfigError(std::string(what) + " length " + std::to_string(size) +
                      " does not match " + std::to_string(clock.steps()) + " steps");
}

// splitmix64 finalizer
std::uint64_t mix(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t fnv1a(std::uint64_t h, std::string_view s) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  // length terminator keeps ("ab","c") distinct from ("a","bc")
  h ^= s.size();
  h *= 0x100000001b3ULL;
  return h;
}

}  // namespace

EnergyResult simulate_year(const HouseSpec& house, const Scenario& scenario,
                           const DaylightSeries& daylight, const OccupancyInputs& occupancy,
                           const SimulationConfig& config) {
  validate(house);
  const YearClock clock = config.clock();
  check_series(daylight.timestep, daylight.exterior_lux.size(), clock, "daylight series");
  const OccupancySeries* gate = select_gate(scenario, occupancy);
  if (gate) check_series(gate->timestep, gate->values.size(), clock, "occupancy series");

  const DaylightMode dmode = scenario.features.daylight_mode;
  const double dt_h = clock.timestep_hours();
  const std::size_t spd = clock.steps_per_day();

  // Month index of every day, so the inner loop only does arithmetic.
  std::array<int, kDaysPerYear> month_of_day{};
  for (int d = 0; d < kDaysPerYear; ++d) month_of_day[static_cast<std::size_t>(d)] = month_of(d) - 1;

  EnergyResult result;
  if (config.keep_trace) result.trace_w.emplace(clock.steps(), 0.0);

  for (const auto& zone : house.zones) {
    HarvestSwitch harvest(config.harvest_hysteresis_lux);
    std::array<double, 12> monthly_fraction{};
    const double zone_power_w = zone.luminaire_count * zone.luminaire_power_w;
    for (std::size_t i = 0; i < clock.steps(); ++i) {
      const double interior = interior_daylight(daylight.exterior_lux[i], zone.daylight_factor);
      PowerFraction dim = dmode == DaylightMode::Harvest
                              ? harvest.update(interior, zone.illuminance_setpoint_lux)
                              : dim_factor(dmode, interior, zone.illuminance_setpoint_lux);
      const double occ = gate ? gate->values[i] : 1.0;
      const double f = power_fraction(scenario.features, occ, dim).value();
      monthly_fraction[static_cast<std::size_t>(month_of_day[i / spd])] += f;
      if (result.trace_w) (*result.trace_w)[i] += zone_power_w * f;
    }
    double zone_kwh = 0.0;
    for (std::size_t m = 0; m < 12; ++m) {
      const double kwh = zone_power_w * monthly_fraction[m] * dt_h / 1000.0;
      result.monthly_energy_kwh[m] += kwh;
      zone_kwh += kwh;
    }
    result.per_zone.push_back({zone.name, zone_kwh});
    result.annual_energy_kwh += zone_kwh;
  }
  return result;
}

std::uint64_t child_seed(std::uint64_t seed, std::string_view location, std::string_view scenario) {
  std::uint64_t h = 0xcbf29ce484222325ULL ^ mix(seed);
  h = fnv1a(h, location);
  h = fnv1a(h, scenario);
  return mix(h);
}

EnergyResult evaluate_cell(const LocationCase& location, const Scenario& scenario,
                           const SimulationConfig& config) {
  const YearClock clock = config.clock();
  std::optional<OccupancySeries> schedule;
  std::optional<OccupancySeries> motion;
  OccupancyInputs inputs;
  if (scenario.features.occupancy_mode != OccupancyMode::None) {
    if (!scenario.profile)
      throw ConfigError("scenario '" + scenario.id + "' has an occupancy mode but no profile");
    const Profile& profile = location.profile(*scenario.profile);
    if (scenario.features.occupancy_mode == OccupancyMode::Schedule) {
      schedule = schedule_series(profile, clock);
      inputs.schedule = &*schedule;
    } else if (config.mode == SimulationMode::Expected) {
      motion = expected_series(profile, location.holidays, clock);
      inputs.motion = &*motion;
    } else {
      motion = stochastic_series(profile, location.holidays, clock,
                                 child_seed(config.seed, location.house.location.name, scenario.id),
                                 config.hold_time);
      inputs.motion = &*motion;
    }
  }
  return simulate_year(location.house, scenario, location.daylight, inputs, config);
}

std::vector<SweepCell> sweep(const std::vector<LocationCase>& locations,
                             const std::vector<Scenario>& scenarios,
                             const SimulationConfig& config, unsigned threads) {
  std::vector<SweepCell> cells;
  cells.reserve(locations.size() * scenarios.size());
  for (const auto& loc : locations) {
    for (const auto& sc : scenarios) cells.push_back({loc.house.location.name, sc, std::nullopt, {}});
  }
  if (cells.empty()) return cells;

  auto run = [&](std::size_t index) {
    const auto& loc = locations[index / scenarios.size()];
    auto& cell = cells[index];
    try {
      cell.result = evaluate_cell(loc, cell.scenario, config);
    } catch (const std::exception& e) {
      cell.error = cell.location + " / " + cell.scenario.id + ": " + e.what();
    }
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(cells.size()));
  if (threads <= 1) {
    for (std::size_t i = 0; i < cells.size(); ++i) run(i);
    return cells;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::jthread> pool;
  for (unsigned t = 0; t < threads; ++t) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < cells.size(); i = next++) run(i);
    });
  }
  pool.clear();
  return cells;
}

}  // namespace lightsim
