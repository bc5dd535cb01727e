// Generates the synthetic EPW weather fixtures shipped under data/weather.
//
// Irradiance comes from a clear-sky model (Meinel beam transmittance plus a
// fixed diffuse fraction) modulated by a seeded day/hour cloud process. The
// monthly share of sunny hours follows the site's climatological sunshine
// profile and one global scale is bisected until the hours with direct normal
// irradiance >= 120 W/m2 match the site's annual sunshine total.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "lightsim/calendar.hpp"
#include "lightsim/weather.hpp"

namespace {

using lightsim::kDaysPerYear;

constexpr double kDeg = std::numbers::pi / 180.0;

struct Site {
  std::string city;
  std::string region;
  std::string country;
  std::string wmo;
  double latitude;
  double longitude;
  double utc_offset;
  double elevation;
  double sunshine_hours;
  std::array<double, 12> monthly_sunshine;  // climatological shape, any scale
  std::array<double, 12> monthly_temp_c;
};

const Site kAlgiers{"Algiers", "-", "DZA", "603900", 36.72, 3.25, 1.0, 25.0, 2847.0,
                    {149, 165, 202, 231, 275, 306, 337, 309, 249, 211, 160, 153},
                    {11.2, 11.9, 13.7, 15.8, 18.7, 22.5, 25.5, 26.2, 23.7, 20.2, 15.6, 12.6}};

const Site kStuttgart{"Stuttgart", "BW", "DEU", "107380", 48.68, 9.22, 1.0, 419.0, 1662.0,
                      {54, 84, 128, 173, 207, 219, 237, 221, 164, 113, 58, 43},
                      {0.4, 1.6, 5.3, 9.1, 13.5, 16.7, 18.6, 18.1, 14.4, 9.6, 4.6, 1.4}};

struct HourSample {
  double elevation_deg;
  double extraterrestrial_normal;
  double beam_clear;
  double day_u;
  double hour_u;
  double beam_jitter;
  double overcast_level;
};

std::vector<HourSample> sample_year(const Site& site, unsigned seed) {
  std::mt19937_64 rng(seed);
  auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };
  std::vector<HourSample> out;
  out.reserve(lightsim::kHoursPerYear);
  double day_state = uniform();
  for (int doy = 0; doy < kDaysPerYear; ++doy) {
    // AR(1) day weather keeps sunny and dull spells together.
    day_state = std::clamp(0.55 * day_state + 0.45 * uniform(), 0.0, 1.0);
    const double day_u = std::clamp(0.5 * day_state + 0.5 * uniform(), 0.0, 1.0);
    for (int hour = 1; hour <= 24; ++hour) {
      const double solar = lightsim::solar_hour_from_clock(hour - 0.5, site.longitude, site.utc_offset);
      const auto pos = lightsim::solar_position(site.latitude, doy + 1, solar);
      HourSample s;
      s.elevation_deg = pos.elevation_deg;
      s.extraterrestrial_normal = 1367.0 * (1.0 + 0.033 * std::cos(2.0 * std::numbers::pi * (doy + 1) / 365.0));
      s.beam_clear = lightsim::clear_sky_direct_normal(pos.elevation_deg) * s.extraterrestrial_normal / 1367.0;
      s.day_u = day_u;
      s.hour_u = uniform();
      s.beam_jitter = uniform();
      s.overcast_level = uniform();
      out.push_back(s);
    }
  }
  return out;
}

struct Irradiance {
  double ghi;
  double dni;
  double dhi;
  double lux;
};

Irradiance hour_irradiance(const HourSample& s, double sunny_probability) {
  if (s.elevation_deg <= 0.0) return {0, 0, 0, 0};
  const double sin_el = std::sin(s.elevation_deg * kDeg);
  const double sky = 0.6 * s.day_u + 0.4 * s.hour_u;
  const bool sunny = sky < sunny_probability;
  double dni;
  double dhi;
  if (sunny) {
    dni = s.beam_clear * (0.88 + 0.12 * s.beam_jitter);
    dhi = s.extraterrestrial_normal * sin_el * (0.08 + 0.04 * s.overcast_level);
  } else {
    // Cloud-covered: weak beam, diffuse at 15-45 % of the clear-sky global.
    dni = std::min(s.beam_clear * 0.08 * s.beam_jitter, 100.0);
    const double clear_global = s.beam_clear * sin_el + 0.1 * s.extraterrestrial_normal * sin_el;
    dhi = clear_global * (0.15 + 0.30 * s.overcast_level);
  }
  const double beam_h = dni * sin_el;
  Irradiance out;
  out.dni = std::round(dni);
  out.dhi = std::round(dhi);
  out.ghi = std::round(beam_h + dhi);
  // Beam ~100 lm/W, diffuse sky ~120 lm/W.
  out.lux = std::round(beam_h * 100.0 + dhi * 120.0);
  return out;
}

double count_sunshine(const std::vector<HourSample>& year, const std::array<double, 12>& monthly_p) {
  double hours = 0.0;
  for (std::size_t i = 0; i < year.size(); ++i) {
    const int month = lightsim::month_of(static_cast<int>(i / 24));
    const auto irr = hour_irradiance(year[i], monthly_p[static_cast<std::size_t>(month - 1)]);
    if (irr.dni >= lightsim::kSunshineThresholdWm2) hours += 1.0;
  }
  return hours;
}

std::array<double, 12> monthly_probability(const Site& site, double scale) {
  const double peak = *std::max_element(site.monthly_sunshine.begin(), site.monthly_sunshine.end());
  std::array<double, 12> p{};
  for (std::size_t m = 0; m < 12; ++m) p[m] = std::min(1.0, scale * site.monthly_sunshine[m] / peak);
  return p;
}

void write_site(const Site& site, unsigned seed, const std::string& path) {
  const auto year = sample_year(site, seed);
  double lo = 0.0, hi = 2.0;
  for (int i = 0; i < 60; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (count_sunshine(year, monthly_probability(site, mid)) >= site.sunshine_hours) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  const auto probs = monthly_probability(site, hi);

  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  char buf[512];
  std::snprintf(buf, sizeof buf, "LOCATION,%s,%s,%s,Synthetic,%s,%.2f,%.2f,%.1f,%.1f", site.city.c_str(),
                site.region.c_str(), site.country.c_str(), site.wmo.c_str(), site.latitude, site.longitude,
                site.utc_offset, site.elevation);
  out << buf << '\n';
  out << "DESIGN CONDITIONS,0\n";
  out << "TYPICAL/EXTREME PERIODS,0\n";
  out << "GROUND TEMPERATURES,0\n";
  out << "HOLIDAYS/DAYLIGHT SAVINGS,No,0,0,0\n";
  std::snprintf(buf, sizeof buf,
                "COMMENTS 1,Synthetic test fixture generated by make_fixture_epw (seed %u); "
                "not measured data",
                seed);
  out << buf << '\n';
  std::snprintf(buf, sizeof buf, "COMMENTS 2,Calibrated to %.0f sunshine hours per year (DNI >= 120 W/m2)",
                site.sunshine_hours);
  out << buf << '\n';
  out << "DATA PERIODS,1,1,Data,Monday,1/1,12/31\n";

  for (std::size_t i = 0; i < year.size(); ++i) {
    const int doy = static_cast<int>(i / 24);
    const int hour = static_cast<int>(i % 24) + 1;
    const int month = lightsim::month_of(doy);
    const auto irr = hour_irradiance(year[i], probs[static_cast<std::size_t>(month - 1)]);
    const double daily = std::sin((hour - 9.0) / 24.0 * 2.0 * std::numbers::pi);
    const double temp = site.monthly_temp_c[static_cast<std::size_t>(month - 1)] + 4.0 * daily;
    const double ext_h = std::max(0.0, year[i].extraterrestrial_normal * std::sin(year[i].elevation_deg * kDeg));
    const double ext_n = year[i].elevation_deg > 0.0 ? year[i].extraterrestrial_normal : 0.0;
    const double sky_cover = irr.dni >= 120.0 ? 2.0 : 8.0;
    std::snprintf(buf, sizeof buf,
                  "2018,%d,%d,%d,60,?9?9?9?9E0?9?9?9?9?9?9?9?9?9?9?9?9?9?9?9*9*9?9?9?9,"
                  "%.1f,%.1f,70,101300,%.0f,%.0f,330,%.0f,%.0f,%.0f,%.0f,%.0f,%.0f,%.0f,"
                  "180,2.5,%.0f,%.0f,9999,77777,9,999999999,15,0.1200,0,88,0.200,0.0,1.0",
                  month, lightsim::day_of_month(doy), hour, temp, temp - 6.0, ext_h, ext_n, irr.ghi, irr.dni,
                  irr.dhi, irr.lux, irr.dni * 100.0, irr.dhi * 120.0, irr.dhi > 0 ? 2000.0 : 0.0, sky_cover,
                  sky_cover);
    out << buf << '\n';
  }
  std::printf("%s: scale %.4f, sunshine %.0f h\n", path.c_str(), hi, count_sunshine(year, probs));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Generate the synthetic EPW weather fixtures"};
  std::string out_dir = ".";
  unsigned seed = 20190130;
  app.add_option("--out", out_dir, "Output directory");
  app.add_option("--seed", seed, "Cloud-process seed");
  CLI11_PARSE(app, argc, argv);

  try {
    write_site(kAlgiers, seed, out_dir + "/DZA_Algiers_synthetic.epw");
    write_site(kStuttgart, seed + 1, out_dir + "/DEU_Stuttgart_synthetic.epw");
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
