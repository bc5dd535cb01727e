#include "lightsim/checks.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

namespace lightsim {

namespace {

constexpr const char* kAlgiers = "Algiers";
constexpr const char* kStuttgart = "Stuttgart";

const ScenarioRow* find_row(const StudyResult& study, const std::string& city, const std::string& id) {
  auto it = std::find_if(study.rows.begin(), study.rows.end(), [&](const ScenarioRow& r) {
    return r.location == city && scenario_id_matches(r.scenario.id, id);
  });
  return it == study.rows.end() ? nullptr : &*it;
}

const LocationWeather* find_weather(const StudyResult& study, const std::string& city) {
  auto it = std::find_if(study.weather.begin(), study.weather.end(),
                         [&](const LocationWeather& w) { return w.location == city; });
  return it == study.weather.end() ? nullptr : &*it;
}

const Location* find_location(const StudyConfig& config, const std::string& city) {
  auto it = std::find_if(config.locations.begin(), config.locations.end(),
                         [&](const Location& l) { return l.name == city; });
  return it == config.locations.end() ? nullptr : &*it;
}

std::string pct(double fraction, int decimals = 2) { return format_fixed(fraction * 100.0, decimals) + "%"; }

struct Checker {
  const StudyResult& study;
  std::vector<CheckResult> out;

  void add(std::string id, std::string what, std::string computed, std::string target, bool pass) {
    out.push_back({std::move(id), std::move(what), std::move(computed), std::move(target), pass});
  }
  void missing(std::string id, std::string what, const std::string& target) {
    add(std::move(id), std::move(what), "missing", target, false);
  }
  std::optional<double> energy(const std::string& city, const std::string& scenario) const {
    const auto* r = find_row(study, city, scenario);
    return r ? std::optional(r->energy.annual_energy_kwh) : std::nullopt;
  }
};

void scheduling_checks(Checker& c) {
  for (const char* city : {kAlgiers, kStuttgart}) {
    const std::string where = std::string(" (") + city + ")";
    const auto base = c.energy(city, "Baseline");
    const auto s1 = c.energy(city, "Sched 1st");
    const auto s2 = c.energy(city, "Sched 2nd");
    const std::string t1 = "33.33% (ratio 2/3 within 1e-9 relative)";
    if (base && s1) {
      const double ratio = *s1 / *base;
      c.add("1", "Profile 1 scheduling saving" + where, pct(1.0 - ratio), t1,
            std::abs(ratio - 2.0 / 3.0) <= 1e-9 * (2.0 / 3.0));
    } else {
      c.missing("1", "Profile 1 scheduling saving" + where, t1);
    }
    const std::string t2 = "63.1% +/- 0.5 pt";
    if (base && s2) {
      const double saving = 1.0 - *s2 / *base;
      c.add("2", "Profile 2 scheduling saving" + where, pct(saving), t2, std::abs(saving * 100.0 - 63.1) <= 0.5);
    } else {
      c.missing("2", "Profile 2 scheduling saving" + where, t2);
    }
  }
}

void motion_checks(Checker& c) {
  for (const char* city : {kAlgiers, kStuttgart}) {
    const std::string where = std::string(" (") + city + ")";
    int compared = 0;
    int violations = 0;
    for (const char* profile : {"1st", "2nd"}) {
      for (const char* daylight : {"", "+DH", "+DH+Dim"}) {
        const auto md = c.energy(city, std::string("MD ") + profile + daylight);
        const auto sc = c.energy(city, std::string("Sched ") + profile + daylight);
        if (!md || !sc) continue;
        ++compared;
        if (*md > *sc) ++violations;
      }
    }
    c.add("3", "Motion detection never above scheduling" + where,
          std::to_string(compared - violations) + "/" + std::to_string(compared) + " pairs",
          "6/6 pairs", compared == 6 && violations == 0);

    const auto base = c.energy(city, "Baseline");
    const auto md1 = c.energy(city, "MD 1st");
    const double target = 1.0 - 5066.875 / 8760.0;
    const std::string t = pct(target) + " +/- 0.01 pt";
    if (base && md1) {
      const double saving = 1.0 - *md1 / *base;
      c.add("3", "Profile 1 motion-detection saving" + where, pct(saving, 4), t,
            std::abs(saving - target) * 100.0 <= 0.01);
    } else {
      c.missing("3", "Profile 1 motion-detection saving" + where, t);
    }
  }
}

void daylight_checks(Checker& c) {
  for (const char* city : {kAlgiers, kStuttgart}) {
    const std::string where = std::string(" (") + city + ")";
    const auto base = c.energy(city, "Baseline");
    const auto dh = c.energy(city, "DH");
    const auto dim = c.energy(city, "DH+Dim");
    if (!base || !dh || !dim) {
      c.missing("4", "Daylight harvesting ordering" + where, "DH+Dim <= DH <= Baseline");
      c.missing("4", "Daylight harvesting saving" + where, "5% to 30%");
      continue;
    }
    c.add("4", "Daylight harvesting ordering" + where,
          format_fixed(*dim, 2) + " <= " + format_fixed(*dh, 2) + " <= " + format_fixed(*base, 2) + " kWh",
          "DH+Dim <= DH <= Baseline", *dim <= *dh && *dh <= *base);
    const double saving = 1.0 - *dh / *base;
    c.add("4", "Daylight harvesting saving" + where, pct(saving), "5% to 30%",
          saving >= 0.05 && saving <= 0.30);
  }
  const auto a = c.energy(kAlgiers, "DH");
  const auto s = c.energy(kStuttgart, "DH");
  if (a && s) {
    c.add("4", "Algiers DH energy below Stuttgart DH energy",
          format_fixed(*a, 2) + " vs " + format_fixed(*s, 2) + " kWh", "Algiers < Stuttgart", *a < *s);
  } else {
    c.missing("4", "Algiers DH energy below Stuttgart DH energy", "Algiers < Stuttgart");
  }
}

void sunshine_checks(Checker& c) {
  const auto* a = find_weather(c.study, kAlgiers);
  const auto* s = find_weather(c.study, kStuttgart);
  auto within = [&](const LocationWeather* w, const char* city, double target) {
    const std::string t = format_fixed(target, 0) + " h +/- 15%";
    if (!w) return c.missing("5", std::string("Sunshine hours ") + city, t);
    c.add("5", std::string("Sunshine hours ") + city, format_fixed(w->sunshine_hours, 1) + " h", t,
          std::abs(w->sunshine_hours - target) <= 0.15 * target);
  };
  within(a, kAlgiers, 2847.0);
  within(s, kStuttgart, 1662.0);
  if (a && s) {
    c.add("5", "Algiers sunnier than Stuttgart",
          format_fixed(a->sunshine_hours, 1) + " vs " + format_fixed(s->sunshine_hours, 1) + " h",
          "Algiers > Stuttgart", a->sunshine_hours > s->sunshine_hours);
  } else {
    c.missing("5", "Algiers sunnier than Stuttgart", "Algiers > Stuttgart");
  }
}

void tariff_checks(Checker& c, const StudyConfig& config) {
  const auto* de = find_location(config, kStuttgart);
  const auto* dz = find_location(config, kAlgiers);
  if (!de || !dz) {
    c.missing("6", "German to Algerian cost ratio for every simulated energy", "> 5");
  } else {
    const Tariff& german = config.tariff_for(*de);
    const Tariff& algerian = config.tariff_for(*dz);
    double worst = std::numeric_limits<double>::infinity();
    for (const auto& row : c.study.rows) {
      const auto& e = row.energy;
      if (e.annual_energy_kwh <= 0.0) continue;
      const double g = energy_cost(e.annual_energy_kwh, german, e.monthly_energy_kwh,
                                   config.economics.base_load_kwh);
      const double d = energy_cost(e.annual_energy_kwh, algerian, e.monthly_energy_kwh,
                                   config.economics.base_load_kwh);
      worst = std::min(worst, d > 0.0 ? g / d : std::numeric_limits<double>::infinity());
    }
    const bool any = std::isfinite(worst);
    c.add("6", "German to Algerian cost ratio for every simulated energy",
          any ? "min " + format_fixed(worst, 2) : "no rows", "> 5", any && worst > 5.0);
  }
  const double spot = energy_cost(1000.0, german_flat_tariff());
  c.add("6", "1000 kWh at the German flat rate", "EUR " + format_fixed(spot, 2), "EUR 304.80",
        std::abs(spot - 304.80) < 1e-9);
}

void emission_checks(Checker& c) {
  const Emissions e = emissions(1000.0, german_grid_emissions());
  const bool exact = std::abs(e.co2_kg - 516.0) < 1e-9 && std::abs(e.no2_g - 440.0) < 1e-9 &&
                     std::abs(e.so2_g - 290.0) < 1e-9 && std::abs(e.co_g - 230.0) < 1e-9 &&
                     std::abs(e.ch4_g - 184.0) < 1e-9;
  c.add("7", "Emissions of 1000 kWh (CO2 kg NO2 SO2 CO CH4 g)",
        format_fixed(e.co2_kg, 2) + " " + format_fixed(e.no2_g, 2) + " " + format_fixed(e.so2_g, 2) + " " +
            format_fixed(e.co_g, 2) + " " + format_fixed(e.ch4_g, 2),
        "516 440 290 230 184", exact);
  for (const char* city : {kAlgiers, kStuttgart}) {
    const std::string what = std::string("Profile 2 motion-detection CO2 share of baseline (") + city + ")";
    const auto* base = find_row(c.study, city, "Baseline");
    const auto* md = find_row(c.study, city, "MD 2nd");
    if (!base || !md || base->metrics.emissions.co2_kg <= 0.0) {
      c.missing("7", what, "<= 30%");
      continue;
    }
    const double share = md->metrics.emissions.co2_kg / base->metrics.emissions.co2_kg;
    c.add("7", what, pct(share), "<= 30%", share <= 0.30);
  }
}

void finance_checks(Checker& c) {
  std::mt19937_64 rng(20190130);
  auto uniform = [&](double lo, double hi) {
    return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
  };
  int irr_ok = 0;
  int identity_ok = 0;
  double worst_npv = 0.0;
  constexpr int kSets = 1000;
  for (int i = 0; i < kSets; ++i) {
    CashflowParams p;
    p.horizon_years = 1 + static_cast<int>(rng() % 30);
    p.initial_investment_eur = uniform(10.0, 5000.0);
    p.annual_inflow_eur = p.initial_investment_eur * uniform(0.02, 2.0);
    p.discount_rate = uniform(0.0, 0.15);
    if (const auto r = irr(p)) {
      CashflowParams at = p;
      at.discount_rate = *r;
      const double v = std::abs(npv(at));
      worst_npv = std::max(worst_npv, v);
      if (v <= 1e-6) ++irr_ok;
    }
    const double initial = p.initial_investment_eur;
    const auto pb = payback(initial, p.annual_inflow_eur);
    // Exact in real arithmetic; in doubles adi - (adi - initial) carries a few ulps.
    const double scale = std::max(adi(p), initial);
    if (std::abs(adi(p) - npv(p) - initial) <= 1e-9 * scale && pb &&
        std::abs(*pb * p.annual_inflow_eur - initial) <= 1e-12 * initial)
      ++identity_ok;
  }
  c.add("8", "npv(irr) = 0 within EUR 1e-6 over random cash flows",
        std::to_string(irr_ok) + "/" + std::to_string(kSets) + " (max " + format_fixed(worst_npv * 1e9, 3) +
            " nEUR)",
        std::to_string(kSets) + "/" + std::to_string(kSets), irr_ok == kSets);
  c.add("8", "adi - npv = initial and payback x inflow = initial",
        std::to_string(identity_ok) + "/" + std::to_string(kSets),
        std::to_string(kSets) + "/" + std::to_string(kSets), identity_ok == kSets);
  const CashflowParams even{10, 0.0, 1000.0, 100.0};
  const double v = npv(even);
  c.add("8", "Zero-rate break-even NPV", "EUR " + format_fixed(v, 6), "EUR 0", std::abs(v) < 1e-9);
}

void capex_checks(Checker& c) {
  struct Expect {
    const char* what;
    double target;
    double tolerance;
  };
  auto check = [&](const Expect& e, auto pred) {
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (const auto& row : c.study.rows) {
      if (!pred(row.scenario.features)) continue;
      lo = std::min(lo, row.scenario.capex_eur);
      hi = std::max(hi, row.scenario.capex_eur);
    }
    const std::string t = "EUR " + format_fixed(e.target, 2) +
                          (e.tolerance > 0.005 ? " +/- " + format_fixed(e.tolerance, 2) : std::string{});
    if (!std::isfinite(lo)) return c.missing("9", e.what, t);
    const std::string computed =
        lo == hi ? "EUR " + format_fixed(lo, 2) : "EUR " + format_fixed(lo, 2) + " to " + format_fixed(hi, 2);
    c.add("9", e.what, computed, t,
          std::abs(lo - e.target) <= e.tolerance && std::abs(hi - e.target) <= e.tolerance);
  };
  check({"Scheduling-only capex", 139.93, 0.005}, [](const ControlFeatures& f) {
    return f.occupancy_mode == OccupancyMode::Schedule && f.daylight_mode == DaylightMode::None;
  });
  check({"Motion-detection-only capex", 374.07, 2.0}, [](const ControlFeatures& f) {
    return f.occupancy_mode == OccupancyMode::MotionDetection && f.daylight_mode == DaylightMode::None;
  });
  check({"Daylight scenario capex", 399.35, 2.0},
        [](const ControlFeatures& f) { return f.daylight_mode != DaylightMode::None; });
}

}  // namespace

std::vector<CheckResult> reproduction_checks(const StudyConfig& config, const StudyResult& study) {
  Checker c{study, {}};
  scheduling_checks(c);
  motion_checks(c);
  daylight_checks(c);
  sunshine_checks(c);
  tariff_checks(c, config);
  emission_checks(c);
  finance_checks(c);
  capex_checks(c);
  std::stable_sort(c.out.begin(), c.out.end(),
                   [](const CheckResult& a, const CheckResult& b) { return std::stoi(a.id) < std::stoi(b.id); });
  return c.out;
}

bool all_pass(const std::vector<CheckResult>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckResult& r) { return r.pass; });
}

}  // namespace lightsim
