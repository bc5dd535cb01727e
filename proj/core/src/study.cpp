#include "lightsim/study.hpp"

#include <algorithm>

#include "lightsim/errors.hpp"

namespace lightsim {

LocationCase prepare_location(const StudyConfig& config, const Location& location,
                              LocationWeather* weather_out) {
  const YearClock clock = config.simulation.clock();
  LocationCase lc;
  lc.house = config.house(location);
  lc.profile1 = config.profile1;
  lc.profile2 = config.profile2;
  lc.holidays = config.holidays;

  LocationWeather info;
  info.location = location.name;
  if (const auto* epw = std::get_if<EpwWeather>(&location.weather_source)) {
    EpwFile file;
    try {
      file = load_epw(epw->path);
    } catch (const Error& e) {
      throw Error("weather file " + epw->path + ": " + e.what());
    }
    lc.daylight = daylight_from_epw(file.records, clock, config.luminous_efficacy);
    info.source = epw->path;
    info.sunshine_hours = sunshine_hours(file.records);
  } else {
    const auto& cs = std::get<ClearSkyWeather>(location.weather_source);
    ClearSkyModel model{location.latitude_deg, location.longitude_deg, location.utc_offset_h,
                        cs.max_illuminance_lux, 1.0};
    model.clearness = calibrate_clearness(model, cs.sunshine_hours);
    lc.daylight = daylight_from_clear_sky(model, clock);
    info.source = "clear-sky";
    info.sunshine_hours = sunshine_hours(clear_sky_records(model, config.luminous_efficacy));
  }
  info.daylight_lux_hours = lc.daylight.lux_hours();
  if (weather_out) *weather_out = info;
  return lc;
}

StudyResult run_study(const StudyConfig& config, const std::vector<std::string>& scenario_filter,
                      unsigned threads) {
  StudyResult out;
  std::vector<LocationCase> cases;
  for (const auto& loc : config.locations) {
    LocationWeather info;
    cases.push_back(prepare_location(config, loc, &info));
    out.weather.push_back(info);
  }

  const HouseSpec probe = config.house(config.locations.empty() ? Location{} : config.locations.front());
  const auto grid = build_scenario_grid(probe, config.catalog);

  auto selected = [&](const Scenario& s) {
    if (scenario_filter.empty()) return true;
    return std::any_of(scenario_filter.begin(), scenario_filter.end(),
                       [&](const std::string& id) { return scenario_id_matches(id, s.id); });
  };
  for (const auto& id : scenario_filter) {
    if (std::none_of(grid.begin(), grid.end(), [&](const Scenario& s) { return scenario_id_matches(id, s.id); }))
      throw ConfigError("unknown scenario '" + id + "'");
  }

  std::vector<Scenario> scenarios;
  for (const auto& s : grid) {
    if (selected(s) || scenario_id_matches(s.id, config.reference_scenario)) scenarios.push_back(s);
  }

  const auto cells = sweep(cases, scenarios, config.simulation, threads);

  for (std::size_t li = 0; li < cases.size(); ++li) {
    const Location& loc = config.locations[li];
    const Tariff& tariff = config.tariff_for(loc);
    const EmissionFactors& factors = config.emission_factors_for(loc);
    Tariff quarterly = tariff;
    Tariff annual = tariff;
    quarterly.window = BillingWindow::Quarterly;
    annual.window = BillingWindow::Annual;

    const auto begin = cells.begin() + static_cast<std::ptrdiff_t>(li * scenarios.size());
    const auto end = begin + static_cast<std::ptrdiff_t>(scenarios.size());
    auto ref = std::find_if(begin, end, [&](const SweepCell& c) {
      return scenario_id_matches(c.scenario.id, config.reference_scenario);
    });
    if (ref == end || !ref->result) {
      out.errors.push_back(loc.name + ": reference scenario '" + config.reference_scenario +
                           "' could not be evaluated" + (ref != end ? ": " + ref->error : ""));
      for (auto it = begin; it != end; ++it) {
        if (!it->result && selected(it->scenario)) out.errors.push_back(it->error);
      }
      continue;
    }
    const auto& ref_energy = *ref->result;
    const double ref_cost = energy_cost(ref_energy.annual_energy_kwh, tariff, ref_energy.monthly_energy_kwh,
                                        config.economics.base_load_kwh);

    for (auto it = begin; it != end; ++it) {
      if (!selected(it->scenario)) continue;
      if (!it->result) {
        out.errors.push_back(it->error);
        continue;
      }
      const auto& e = *it->result;
      ScenarioRow row;
      row.location = loc.name;
      row.scenario = it->scenario;
      row.energy = e;
      row.metrics = evaluate_metrics(e.annual_energy_kwh, e.monthly_energy_kwh, it->scenario.capex_eur,
                                     ref_cost, tariff, factors, config.economics);
      row.cost_quarterly_window_eur =
          energy_cost(e.annual_energy_kwh, quarterly, e.monthly_energy_kwh, config.economics.base_load_kwh);
      row.cost_annual_window_eur =
          energy_cost(e.annual_energy_kwh, annual, e.monthly_energy_kwh, config.economics.base_load_kwh);
      const double bulbs = probe.luminaire_count() * config.catalog.bulb_eur;
      const double net = std::max(0.0, it->scenario.capex_eur - bulbs);
      row.payback_net_of_bulbs_years =
          it->scenario.capex_eur > 0.0 ? payback(net, row.metrics.annual_inflow_eur) : row.metrics.payback_years;
      out.rows.push_back(std::move(row));
    }
  }
  return out;
}

}  // namespace lightsim
