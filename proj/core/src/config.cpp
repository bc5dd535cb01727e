#include "lightsim/config.hpp"

#include <fstream>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "lightsim/errors.hpp"

namespace lightsim {

using nlohmann::json;

const Tariff& StudyConfig::tariff_for(const Location& location) const {
  auto it = tariffs.find(location.tariff_id);
  if (it == tariffs.end()) throw ConfigError("unknown tariff '" + location.tariff_id + "'");
  return it->second;
}

const EmissionFactors& StudyConfig::emission_factors_for(const Location& location) const {
  auto it = emission_factors.find(location.emission_factors_id);
  if (it == emission_factors.end())
    throw ConfigError("unknown emission factors '" + location.emission_factors_id + "'");
  return it->second;
}

StudyConfig default_study_config(const std::filesystem::path& data_dir) {
  StudyConfig c;
  c.zones = default_house().zones;
  c.tariffs["DE"] = german_flat_tariff();
  c.tariffs["DZ"] = algerian_tiered_tariff(BillingWindow::Quarterly);
  c.emission_factors["DE_grid"] = german_grid_emissions();
  const auto weather = data_dir / "weather";
  c.locations.push_back({"Algiers", 36.72, 3.25, 1.0, "DZ", "DE_grid",
                         EpwWeather{(weather / "DZA_Algiers_synthetic.epw").lexically_normal().string()}});
  c.locations.push_back({"Stuttgart", 48.68, 9.22, 1.0, "DE", "DE_grid",
                         EpwWeather{(weather / "DEU_Stuttgart_synthetic.epw").lexically_normal().string()}});
  return c;
}

std::optional<int> parse_clock_time(std::string_view text) {
  if (text.size() != 5 || text[2] != ':') return std::nullopt;
  auto digit = [&](std::size_t i) -> int {
    return (text[i] >= '0' && text[i] <= '9') ? text[i] - '0' : -1;
  };
  const int h1 = digit(0), h2 = digit(1), m1 = digit(3), m2 = digit(4);
  if (h1 < 0 || h2 < 0 || m1 < 0 || m2 < 0) return std::nullopt;
  const int hours = h1 * 10 + h2;
  const int minutes = m1 * 10 + m2;
  if (minutes > 59 || hours > 24 || (hours == 24 && minutes != 0)) return std::nullopt;
  return hours * 60 + minutes;
}

std::string format_clock_time(int minutes) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d:%02d", minutes / 60, minutes % 60);
  return buf;
}

namespace {

// Walks the document and records every schema problem instead of stopping
// at the first one.
class Reader {
 public:
  std::vector<Violation> violations;

  void fail(const std::string& path, const std::string& message) {
    violations.push_back({path.empty() ? "/" : path, message});
  }

  const json* member(const json& obj, const std::string& path, const char* key, bool required) {
    if (!obj.is_object()) return nullptr;
    auto it = obj.find(key);
    if (it == obj.end()) {
      if (required) fail(path + "/" + key, "is required");
      return nullptr;
    }
    return &*it;
  }

  template <typename T>
  void number(const json& obj, const std::string& path, const char* key, T& out, bool required = false) {
    const json* v = member(obj, path, key, required);
    if (!v) return;
    if (!v->is_number()) {
      fail(path + "/" + key, "must be a number");
      return;
    }
    if constexpr (std::is_integral_v<T>) {
      if (!v->is_number_integer()) {
        fail(path + "/" + key, "must be an integer");
        return;
      }
    }
    out = v->get<T>();
  }

  void string(const json& obj, const std::string& path, const char* key, std::string& out,
              bool required = false) {
    const json* v = member(obj, path, key, required);
    if (!v) return;
    if (!v->is_string()) {
      fail(path + "/" + key, "must be a string");
      return;
    }
    out = v->get<std::string>();
  }

  bool object(const json& v, const std::string& path) {
    if (v.is_object()) return true;
    fail(path, "must be an object");
    return false;
  }

  bool array(const json& v, const std::string& path) {
    if (v.is_array()) return true;
    fail(path, "must be an array");
    return false;
  }

  void append(std::vector<Violation> more) {
    violations.insert(violations.end(), more.begin(), more.end());
  }
};

void read_zone(Reader& r, const json& j, const std::string& path, Zone& z) {
  if (!r.object(j, path)) return;
  r.string(j, path, "name", z.name, true);
  r.number(j, path, "luminaire_count", z.luminaire_count);
  r.number(j, path, "luminaire_power_w", z.luminaire_power_w);
  r.number(j, path, "daylight_factor", z.daylight_factor);
  r.number(j, path, "illuminance_setpoint_lux", z.illuminance_setpoint_lux);
}

void read_tariff(Reader& r, const json& j, const std::string& path, Tariff& t) {
  if (!r.object(j, path)) return;
  std::string kind;
  r.string(j, path, "kind", kind, true);
  if (kind == "flat") {
    t.kind = TariffKind::Flat;
    r.number(j, path, "rate", t.flat_rate_eur_per_kwh, true);
  } else if (kind == "tiered") {
    t.kind = TariffKind::Tiered;
    std::string window = "annual";
    r.string(j, path, "window", window);
    try {
      t.window = parse_billing_window(window);
    } catch (const ConfigError&) {
      r.fail(path + "/window", "must be one of monthly, quarterly, annual");
    }
    if (const json* tiers = r.member(j, path, "tiers", true); tiers && r.array(*tiers, path + "/tiers")) {
      for (std::size_t i = 0; i < tiers->size(); ++i) {
        const std::string tp = path + "/tiers/" + std::to_string(i);
        const json& tj = (*tiers)[i];
        if (!r.object(tj, tp)) continue;
        TariffTier tier;
        if (tj.contains("up_to_kwh")) {
          double bound = 0.0;
          r.number(tj, tp, "up_to_kwh", bound);
          tier.up_to_kwh = bound;
        }
        r.number(tj, tp, "rate", tier.rate_eur_per_kwh, true);
        t.tiers.push_back(tier);
      }
    }
  } else if (!kind.empty()) {
    r.fail(path + "/kind", "must be 'flat' or 'tiered'");
  }
}

void read_factors(Reader& r, const json& j, const std::string& path, EmissionFactors& f) {
  if (!r.object(j, path)) return;
  r.number(j, path, "co2_kg_per_kwh", f.co2_kg_per_kwh, true);
  r.number(j, path, "no2_g_per_kwh", f.no2_g_per_kwh, true);
  r.number(j, path, "so2_g_per_kwh", f.so2_g_per_kwh, true);
  r.number(j, path, "co_g_per_kwh", f.co_g_per_kwh, true);
  r.number(j, path, "ch4_g_per_kwh", f.ch4_g_per_kwh, true);
}

int read_time(Reader& r, const json& j, const std::string& path, const char* key) {
  std::string text;
  r.string(j, path, key, text, true);
  if (text.empty()) return 0;
  auto t = parse_clock_time(text);
  if (!t) {
    r.fail(path + "/" + key, "must be a clock time HH:MM");
    return 0;
  }
  return *t;
}

void read_pattern(Reader& r, const json& j, const std::string& path, DailyPattern& p) {
  if (!r.array(j, path)) return;
  p.blocks.clear();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string bp = path + "/" + std::to_string(i);
    if (!r.object(j[i], bp)) continue;
    OccupancyBlock b;
    b.start_min = read_time(r, j[i], bp, "start");
    b.end_min = read_time(r, j[i], bp, "end");
    r.number(j[i], bp, "occupancy", b.occupancy, true);
    p.blocks.push_back(b);
  }
}

void read_schedule(Reader& r, const json& j, const std::string& path, std::vector<TimeInterval>& s) {
  if (!r.array(j, path)) return;
  s.clear();
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string ip = path + "/" + std::to_string(i);
    if (!r.object(j[i], ip)) continue;
    s.push_back({read_time(r, j[i], ip, "start"), read_time(r, j[i], ip, "end")});
  }
}

void read_profile(Reader& r, const json& j, const std::string& path, Profile& p) {
  if (!r.object(j, path)) return;
  if (const json* v = r.member(j, path, "weekday", false)) read_pattern(r, *v, path + "/weekday", p.weekday);
  if (const json* v = r.member(j, path, "weekend", false)) read_pattern(r, *v, path + "/weekend", p.weekend);
  if (const json* v = r.member(j, path, "schedule_weekday", false))
    read_schedule(r, *v, path + "/schedule_weekday", p.schedule_weekday);
  if (const json* v = r.member(j, path, "schedule_weekend", false))
    read_schedule(r, *v, path + "/schedule_weekend", p.schedule_weekend);
}

void read_holiday(Reader& r, const json& j, const std::string& path, HolidayBlock& b) {
  if (!r.object(j, path)) return;
  std::string start;
  r.string(j, path, "start", start, true);
  r.number(j, path, "days", b.length_days, true);
  if (start.empty()) return;
  int month = 0, day = 0;
  if (std::sscanf(start.c_str(), "%2d-%2d", &month, &day) != 2 || start.size() != 5) {
    r.fail(path + "/start", "must be a date MM-DD");
    return;
  }
  try {
    b.start_day = day_of_year(month, day);
  } catch (const DomainError&) {
    r.fail(path + "/start", "is not a valid date");
  }
}

void read_location(Reader& r, const json& j, const std::string& path, Location& loc,
                   const std::filesystem::path& base_dir) {
  if (!r.object(j, path)) return;
  r.string(j, path, "name", loc.name, true);
  r.number(j, path, "latitude", loc.latitude_deg, true);
  r.number(j, path, "longitude", loc.longitude_deg, true);
  r.number(j, path, "utc_offset", loc.utc_offset_h, true);
  r.string(j, path, "tariff", loc.tariff_id, true);
  r.string(j, path, "emission_factors", loc.emission_factors_id, true);
  const json* w = r.member(j, path, "weather", true);
  if (!w || !r.object(*w, path + "/weather")) return;
  if (w->contains("epw")) {
    std::string file;
    r.string(*w, path + "/weather", "epw", file, true);
    std::filesystem::path p(file);
    if (p.is_relative()) p = base_dir / p;
    loc.weather_source = EpwWeather{p.lexically_normal().string()};
  } else if (w->contains("clear_sky")) {
    ClearSkyWeather cs;
    const json& cj = (*w)["clear_sky"];
    const std::string cp = path + "/weather/clear_sky";
    if (r.object(cj, cp)) {
      r.number(cj, cp, "max_illuminance_lux", cs.max_illuminance_lux);
      r.number(cj, cp, "sunshine_hours", cs.sunshine_hours, true);
    }
    loc.weather_source = cs;
  } else {
    r.fail(path + "/weather", "must contain 'epw' or 'clear_sky'");
  }
}

void read_simulation(Reader& r, const json& j, const std::string& path, StudyConfig& c) {
  if (!r.object(j, path)) return;
  int timestep = static_cast<int>(c.simulation.timestep.count());
  int hold = static_cast<int>(c.simulation.hold_time.count());
  r.number(j, path, "timestep_min", timestep);
  r.number(j, path, "hold_time_min", hold);
  c.simulation.timestep = std::chrono::minutes(timestep);
  c.simulation.hold_time = std::chrono::minutes(hold);
  std::string mode{to_string(c.simulation.mode)};
  r.string(j, path, "mode", mode);
  try {
    c.simulation.mode = parse_simulation_mode(mode);
  } catch (const ConfigError&) {
    r.fail(path + "/mode", "must be 'expected' or 'stochastic'");
  }
  if (const json* seed = r.member(j, path, "seed", false)) {
    if (seed->is_number_unsigned() || (seed->is_number_integer() && seed->get<long long>() >= 0))
      c.simulation.seed = seed->get<std::uint64_t>();
    else
      r.fail(path + "/seed", "must be a non-negative integer");
  }
  std::string weekday{to_string(c.simulation.first_day)};
  r.string(j, path, "first_weekday", weekday);
  try {
    c.simulation.first_day = parse_weekday(weekday);
  } catch (const ConfigError&) {
    r.fail(path + "/first_weekday", "must be a weekday name");
  }
  r.number(j, path, "harvest_hysteresis_lux", c.simulation.harvest_hysteresis_lux);
  r.number(j, path, "luminous_efficacy", c.luminous_efficacy);
}

void check_study(Reader& r, const StudyConfig& c) {
  HouseSpec house{c.zones, {}};
  r.append(check_invariants(house));
  r.append(check_invariants(c.catalog, "/catalog"));
  for (const auto& [id, t] : c.tariffs) r.append(check_invariants(t, "/tariffs/" + id));
  for (const auto& [id, f] : c.emission_factors) r.append(check_invariants(f, "/emission_factors/" + id));
  r.append(check_invariants(c.profile1, "/profiles/profile1"));
  r.append(check_invariants(c.profile2, "/profiles/profile2"));
  r.append(check_invariants(c.holidays, "/holidays"));
  if (c.locations.empty()) r.fail("/locations", "at least one location is required");
  std::set<std::string> names;
  for (std::size_t i = 0; i < c.locations.size(); ++i) {
    const auto& loc = c.locations[i];
    const std::string lp = "/locations/" + std::to_string(i);
    r.append(check_invariants(loc, lp));
    if (!names.insert(loc.name).second) r.fail(lp + "/name", "duplicate location name '" + loc.name + "'");
    if (!c.tariffs.count(loc.tariff_id)) r.fail(lp + "/tariff", "unknown tariff '" + loc.tariff_id + "'");
    if (!c.emission_factors.count(loc.emission_factors_id))
      r.fail(lp + "/emission_factors", "unknown emission factors '" + loc.emission_factors_id + "'");
  }
  const auto& ts = c.simulation.timestep;
  if (ts.count() <= 0 || 30 % ts.count() != 0) r.fail("/simulation/timestep_min", "must divide 30");
  if (c.simulation.hold_time < ts) r.fail("/simulation/hold_time_min", "must be at least one timestep");
  if (!(c.simulation.harvest_hysteresis_lux >= 0.0))
    r.fail("/simulation/harvest_hysteresis_lux", "must be >= 0");
  if (!(c.luminous_efficacy > 0.0)) r.fail("/simulation/luminous_efficacy", "must be > 0");
  if (c.economics.horizon_years < 1) r.fail("/economics/horizon_years", "must be >= 1");
  if (!(c.economics.discount_rate > -1.0)) r.fail("/economics/discount_rate", "must be > -1");
  if (!(c.economics.base_load_kwh >= 0.0)) r.fail("/economics/base_load_kwh", "must be >= 0");
  HouseSpec probe{c.zones.empty() ? std::vector<Zone>{Zone{}} : c.zones, {}};
  bool known = false;
  for (const auto& s : build_scenario_grid(probe, c.catalog))
    known = known || scenario_id_matches(s.id, c.reference_scenario);
  if (!known) r.fail("/economics/reference_scenario", "unknown scenario '" + c.reference_scenario + "'");
}

}  // namespace

ConfigParseResult parse_config(std::string_view json_text, const std::filesystem::path& base_dir) {
  ConfigParseResult result;
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    result.violations.push_back({"/", std::string("invalid JSON: ") + e.what()});
    return result;
  }
  Reader r;
  StudyConfig c;
  c.zones.clear();
  if (!r.object(doc, "")) {
    result.violations = std::move(r.violations);
    return result;
  }

  static const std::set<std::string> known_keys = {
      "house", "zones", "catalog", "tariffs", "emission_factors", "profiles",
      "holidays", "locations", "simulation", "economics"};
  for (const auto& [key, value] : doc.items()) {
    if (!known_keys.count(key)) r.fail("/" + key, "unknown key");
  }

  if (const json* zones = r.member(doc, "", "zones", true); zones && r.array(*zones, "/zones")) {
    for (std::size_t i = 0; i < zones->size(); ++i) {
      Zone z;
      read_zone(r, (*zones)[i], "/zones/" + std::to_string(i), z);
      c.zones.push_back(z);
    }
  }
  if (const json* cat = r.member(doc, "", "catalog", false); cat && r.object(*cat, "/catalog")) {
    r.number(*cat, "/catalog", "bulb_eur", c.catalog.bulb_eur);
    r.number(*cat, "/catalog", "motion_sensor_eur", c.catalog.motion_sensor_eur);
    r.number(*cat, "/catalog", "light_motion_sensor_eur", c.catalog.light_motion_sensor_eur);
    r.number(*cat, "/catalog", "hub_eur", c.catalog.hub_eur);
  }
  if (const json* tariffs = r.member(doc, "", "tariffs", true); tariffs && r.object(*tariffs, "/tariffs")) {
    for (const auto& [id, tj] : tariffs->items()) read_tariff(r, tj, "/tariffs/" + id, c.tariffs[id]);
  }
  if (const json* ef = r.member(doc, "", "emission_factors", true);
      ef && r.object(*ef, "/emission_factors")) {
    for (const auto& [id, fj] : ef->items())
      read_factors(r, fj, "/emission_factors/" + id, c.emission_factors[id]);
  }
  if (const json* profiles = r.member(doc, "", "profiles", false);
      profiles && r.object(*profiles, "/profiles")) {
    for (const auto& [id, pj] : profiles->items()) {
      if (id == "profile1") {
        read_profile(r, pj, "/profiles/profile1", c.profile1);
      } else if (id == "profile2") {
        read_profile(r, pj, "/profiles/profile2", c.profile2);
      } else {
        r.fail("/profiles/" + id, "unknown profile (expected profile1 or profile2)");
      }
    }
  }
  if (const json* hol = r.member(doc, "", "holidays", false); hol && r.object(*hol, "/holidays")) {
    if (const json* w = r.member(*hol, "/holidays", "winter", false))
      read_holiday(r, *w, "/holidays/winter", c.holidays.winter);
    if (const json* s = r.member(*hol, "/holidays", "summer", false))
      read_holiday(r, *s, "/holidays/summer", c.holidays.summer);
  }
  if (const json* locs = r.member(doc, "", "locations", true); locs && r.array(*locs, "/locations")) {
    for (std::size_t i = 0; i < locs->size(); ++i) {
      Location loc;
      read_location(r, (*locs)[i], "/locations/" + std::to_string(i), loc, base_dir);
      c.locations.push_back(loc);
    }
  }
  if (const json* sim = r.member(doc, "", "simulation", false)) read_simulation(r, *sim, "/simulation", c);
  if (const json* econ = r.member(doc, "", "economics", false); econ && r.object(*econ, "/economics")) {
    r.number(*econ, "/economics", "horizon_years", c.economics.horizon_years);
    r.number(*econ, "/economics", "discount_rate", c.economics.discount_rate);
    r.number(*econ, "/economics", "base_load_kwh", c.economics.base_load_kwh);
    r.string(*econ, "/economics", "reference_scenario", c.reference_scenario);
  }

  check_study(r, c);
  result.violations = std::move(r.violations);
  if (result.violations.empty()) result.config = std::move(c);
  return result;
}

ConfigParseResult load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot read config file: " + path.string());
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path.parent_path());
}

StudyConfig parse_config_or_throw(std::string_view json_text, const std::filesystem::path& base_dir) {
  auto result = parse_config(json_text, base_dir);
  if (result.ok()) return std::move(*result.config);
  std::string msg = "invalid config:";
  for (const auto& v : result.violations) msg += " " + v.path + " " + v.message + ";";
  throw ConfigError(msg);
}

namespace {

json pattern_json(const DailyPattern& p) {
  json arr = json::array();
  for (const auto& b : p.blocks)
    arr.push_back({{"start", format_clock_time(b.start_min)},
                   {"end", format_clock_time(b.end_min)},
                   {"occupancy", b.occupancy}});
  return arr;
}

json schedule_json(const std::vector<TimeInterval>& s) {
  json arr = json::array();
  for (const auto& iv : s)
    arr.push_back({{"start", format_clock_time(iv.start_min)}, {"end", format_clock_time(iv.end_min)}});
  return arr;
}

json profile_json(const Profile& p) {
  return {{"weekday", pattern_json(p.weekday)},
          {"weekend", pattern_json(p.weekend)},
          {"schedule_weekday", schedule_json(p.schedule_weekday)},
          {"schedule_weekend", schedule_json(p.schedule_weekend)}};
}

json holiday_json(const HolidayBlock& b) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "%02d-%02d", month_of(b.start_day), day_of_month(b.start_day));
  return {{"start", buf}, {"days", b.length_days}};
}

}  // namespace

std::string to_json(const StudyConfig& c, int indent) {
  json doc;
  json zones = json::array();
  for (const auto& z : c.zones)
    zones.push_back({{"name", z.name},
                     {"luminaire_count", z.luminaire_count},
                     {"luminaire_power_w", z.luminaire_power_w},
                     {"daylight_factor", z.daylight_factor},
                     {"illuminance_setpoint_lux", z.illuminance_setpoint_lux}});
  doc["zones"] = zones;
  doc["catalog"] = {{"bulb_eur", c.catalog.bulb_eur},
                    {"motion_sensor_eur", c.catalog.motion_sensor_eur},
                    {"light_motion_sensor_eur", c.catalog.light_motion_sensor_eur},
                    {"hub_eur", c.catalog.hub_eur}};
  json tariffs = json::object();
  for (const auto& [id, t] : c.tariffs) {
    if (t.kind == TariffKind::Flat) {
      tariffs[id] = {{"kind", "flat"}, {"rate", t.flat_rate_eur_per_kwh}};
    } else {
      json tiers = json::array();
      for (const auto& tier : t.tiers) {
        json tj = {{"rate", tier.rate_eur_per_kwh}};
        if (tier.up_to_kwh) tj["up_to_kwh"] = *tier.up_to_kwh;
        tiers.push_back(tj);
      }
      tariffs[id] = {{"kind", "tiered"}, {"window", std::string(to_string(t.window))}, {"tiers", tiers}};
    }
  }
  doc["tariffs"] = tariffs;
  json factors = json::object();
  for (const auto& [id, f] : c.emission_factors)
    factors[id] = {{"co2_kg_per_kwh", f.co2_kg_per_kwh}, {"no2_g_per_kwh", f.no2_g_per_kwh},
                   {"so2_g_per_kwh", f.so2_g_per_kwh},   {"co_g_per_kwh", f.co_g_per_kwh},
                   {"ch4_g_per_kwh", f.ch4_g_per_kwh}};
  doc["emission_factors"] = factors;
  doc["profiles"] = {{"profile1", profile_json(c.profile1)}, {"profile2", profile_json(c.profile2)}};
  doc["holidays"] = {{"winter", holiday_json(c.holidays.winter)}, {"summer", holiday_json(c.holidays.summer)}};
  json locs = json::array();
  for (const auto& loc : c.locations) {
    json lj = {{"name", loc.name},
               {"latitude", loc.latitude_deg},
               {"longitude", loc.longitude_deg},
               {"utc_offset", loc.utc_offset_h},
               {"tariff", loc.tariff_id},
               {"emission_factors", loc.emission_factors_id}};
    if (const auto* epw = std::get_if<EpwWeather>(&loc.weather_source)) {
      lj["weather"] = {{"epw", epw->path}};
    } else {
      const auto& cs = std::get<ClearSkyWeather>(loc.weather_source);
      lj["weather"] = {{"clear_sky",
                        {{"max_illuminance_lux", cs.max_illuminance_lux}, {"sunshine_hours", cs.sunshine_hours}}}};
    }
    locs.push_back(lj);
  }
  doc["locations"] = locs;
  doc["simulation"] = {{"timestep_min", c.simulation.timestep.count()},
                       {"mode", std::string(to_string(c.simulation.mode))},
                       {"seed", c.simulation.seed},
                       {"hold_time_min", c.simulation.hold_time.count()},
                       {"first_weekday", std::string(to_string(c.simulation.first_day))},
                       {"harvest_hysteresis_lux", c.simulation.harvest_hysteresis_lux},
                       {"luminous_efficacy", c.luminous_efficacy}};
  doc["economics"] = {{"horizon_years", c.economics.horizon_years},
                      {"discount_rate", c.economics.discount_rate},
                      {"base_load_kwh", c.economics.base_load_kwh},
                      {"reference_scenario", c.reference_scenario}};
  return doc.dump(indent);
}

}  // namespace lightsim
