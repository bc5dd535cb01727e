#include "lightsim/weather.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <numbers>
#include <ostream>
#include <sstream>

#include "lightsim/errors.hpp"

namespace lightsim {

namespace {

constexpr double kDeg = std::numbers::pi / 180.0;

// EPW column indices (0-based) of the consumed fields.
constexpr std::size_t kColMonth = 1;
constexpr std::size_t kColDay = 2;
constexpr std::size_t kColHour = 3;
constexpr std::size_t kColGhi = 13;
constexpr std::size_t kColDni = 14;
constexpr std::size_t kColDhi = 15;
constexpr std::size_t kColGhIllum = 16;
constexpr std::size_t kEpwColumns = 35;

// Missing-value codes for all 35 data columns, used by the debug writer.
constexpr std::array<std::string_view, kEpwColumns> kMissingCodes = {
    "1900", "", "", "", "60", "?", "99.9", "99.9", "999", "999999", "9999", "9999",
    "9999", "9999", "9999", "9999", "999999", "999999", "999999", "9999", "999", "999",
    "99", "99", "9999", "99999", "9", "999999999", "999", "0.999", "999", "99",
    "999", "999", "99"};

std::vector<std::string_view> split_csv(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    auto pos = line.find(',', start);
    if (pos == std::string_view::npos) {
      fields.push_back(line.substr(start));
      break;
    }
    fields.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return fields;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::optional<double> to_double(std::string_view s) {
  s = trim(s);
  if (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v))
    return std::nullopt;
  return v;
}

double field_double(std::string_view s, std::size_t row, std::size_t col) {
  auto v = to_double(s);
  if (!v) throw ParseError("non-numeric value '" + std::string(trim(s)) + "'", row, col + 1);
  return *v;
}

int field_int(std::string_view s, std::size_t row, std::size_t col, int lo, int hi) {
  double v = field_double(s, row, col);
  if (v != std::floor(v) || v < lo || v > hi)
    throw ParseError("value '" + std::string(trim(s)) + "' out of range [" + std::to_string(lo) +
                         ", " + std::to_string(hi) + "]",
                     row, col + 1);
  return static_cast<int>(v);
}

std::optional<double> field_measure(std::string_view s, std::size_t row, std::size_t col,
                                    double missing) {
  double v = field_double(s, row, col);
  if (v >= missing) return std::nullopt;
  if (v < 0.0) throw ParseError("negative value '" + std::string(trim(s)) + "'", row, col + 1);
  return v;
}

EpwLocation parse_location(std::string_view line) {
  auto fields = split_csv(line);
  if (fields.empty() || trim(fields[0]) != "LOCATION")
    throw FormatError("expected LOCATION header", 1);
  if (fields.size() < 10) throw FormatError("LOCATION header has too few fields", 1);
  EpwLocation loc;
  loc.city = std::string(trim(fields[1]));
  loc.country = std::string(trim(fields[3]));
  auto number = [&](std::size_t i, const char* what) {
    auto v = to_double(fields[i]);
    if (!v) throw FormatError(std::string("LOCATION header has invalid ") + what, 1);
    return *v;
  };
  loc.latitude_deg = number(6, "latitude");
  loc.longitude_deg = number(7, "longitude");
  loc.utc_offset_h = number(8, "time zone");
  loc.elevation_m = number(9, "elevation");
  if (loc.latitude_deg < -90.0 || loc.latitude_deg > 90.0)
    throw FormatError("LOCATION latitude out of range", 1);
  if (loc.longitude_deg < -180.0 || loc.longitude_deg > 180.0)
    throw FormatError("LOCATION longitude out of range", 1);
  return loc;
}

std::string format_number(double v) {
  std::array<char, 32> buf{};
  auto [ptr, ec] = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), ptr);
}

}  // namespace

EpwFile parse_epw(std::istream& in) {
  EpwFile file;
  std::string line;
  std::size_t line_no = 0;
  while (file.header_lines.size() < kEpwHeaderLines) {
    if (!std::getline(in, line)) {
      throw FormatError(line_no == 0 ? "empty input, expected LOCATION header"
                                     : "truncated header",
                        line_no + 1);
    }
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line_no == 1) file.location = parse_location(line);
    file.header_lines.push_back(line);
  }

  std::vector<std::size_t> row_lines;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (trim(line).empty()) continue;
    auto fields = split_csv(line);
    if (fields.size() <= kColGhIllum)
      throw ParseError("expected at least " + std::to_string(kColGhIllum + 1) + " fields",
                       line_no, fields.size() + 1);
    EpwRecord r;
    r.month = field_int(fields[kColMonth], line_no, kColMonth, 1, 12);
    r.day = field_int(fields[kColDay], line_no, kColDay, 1, 31);
    r.hour = field_int(fields[kColHour], line_no, kColHour, 1, 24);
    r.global_horizontal_wh_m2 = field_measure(fields[kColGhi], line_no, kColGhi, kEpwMissingIrradiance);
    r.direct_normal_wh_m2 = field_measure(fields[kColDni], line_no, kColDni, kEpwMissingIrradiance);
    r.diffuse_horizontal_wh_m2 = field_measure(fields[kColDhi], line_no, kColDhi, kEpwMissingIrradiance);
    r.global_horizontal_lux = field_measure(fields[kColGhIllum], line_no, kColGhIllum, kEpwMissingIlluminance);
    file.records.push_back(r);
    row_lines.push_back(line_no);
  }

  if (file.records.size() != static_cast<std::size_t>(kHoursPerYear))
    throw LengthError(kHoursPerYear, file.records.size());

  for (std::size_t i = 0; i < file.records.size(); ++i) {
    const auto& r = file.records[i];
    const int doy = static_cast<int>(i / 24);
    if (r.month != month_of(doy) || r.day != day_of_month(doy) ||
        r.hour != static_cast<int>(i % 24) + 1) {
      throw FormatError("record out of sequence: " + std::to_string(r.month) + "/" +
                            std::to_string(r.day) + " hour " + std::to_string(r.hour),
                        row_lines[i]);
    }
  }
  return file;
}

EpwFile parse_epw_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_epw(in);
}

EpwFile load_epw(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open weather file: " + path);
  return parse_epw(in);
}

void write_epw(std::ostream& out, const EpwFile& file) {
  for (const auto& h : file.header_lines) out << h << '\n';
  auto measure = [](const std::optional<double>& v, double missing) {
    return format_number(v ? *v : missing);
  };
  for (const auto& r : file.records) {
    std::array<std::string, kEpwColumns> cols;
    for (std::size_t i = 0; i < kEpwColumns; ++i) cols[i] = std::string(kMissingCodes[i]);
    cols[kColMonth] = std::to_string(r.month);
    cols[kColDay] = std::to_string(r.day);
    cols[kColHour] = std::to_string(r.hour);
    cols[kColGhi] = measure(r.global_horizontal_wh_m2, kEpwMissingIrradiance);
    cols[kColDni] = measure(r.direct_normal_wh_m2, kEpwMissingIrradiance);
    cols[kColDhi] = measure(r.diffuse_horizontal_wh_m2, kEpwMissingIrradiance);
    cols[kColGhIllum] = measure(r.global_horizontal_lux, kEpwMissingIlluminance);
    for (std::size_t i = 0; i < kEpwColumns; ++i) {
      if (i) out << ',';
      out << cols[i];
    }
    out << '\n';
  }
}

SolarPosition solar_position(double latitude_deg, int day_of_year, double solar_hour) {
  SolarPosition p;
  p.declination_deg = 23.45 * std::sin(2.0 * std::numbers::pi * (284.0 + day_of_year) / 365.0);
  p.hour_angle_deg = 15.0 * (solar_hour - 12.0);
  const double phi = latitude_deg * kDeg;
  const double delta = p.declination_deg * kDeg;
  const double h = p.hour_angle_deg * kDeg;
  const double s = std::sin(phi) * std::sin(delta) + std::cos(phi) * std::cos(delta) * std::cos(h);
  p.elevation_deg = std::asin(std::clamp(s, -1.0, 1.0)) / kDeg;
  return p;
}

double solar_hour_from_clock(double clock_hour, double longitude_deg, double utc_offset_h) {
  return clock_hour + longitude_deg / 15.0 - utc_offset_h;
}

double exterior_illuminance(const EpwRecord& record, double luminous_efficacy) {
  if (!(luminous_efficacy > 0.0)) throw DomainError("luminous efficacy must be > 0");
  if (record.global_horizontal_lux) return *record.global_horizontal_lux;
  return record.global_horizontal_wh_m2.value_or(0.0) * luminous_efficacy;
}

double exterior_illuminance(const ClearSkyModel& model, double solar_elevation_deg) {
  return model.max_illuminance_lux * std::max(0.0, std::sin(solar_elevation_deg * kDeg)) *
         model.clearness;
}

double sunshine_hours(std::span<const EpwRecord> records) {
  double hours = 0.0;
  for (const auto& r : records) {
    if (r.direct_normal_wh_m2 && *r.direct_normal_wh_m2 >= kSunshineThresholdWm2) hours += 1.0;
  }
  return hours;
}

double clear_sky_direct_normal(double solar_elevation_deg) {
  if (solar_elevation_deg <= 0.0) return 0.0;
  // Meinel transmittance with the plane-parallel air mass.
  const double air_mass = 1.0 / std::sin(solar_elevation_deg * kDeg);
  return 1367.0 * std::pow(0.7, std::pow(air_mass, 0.678));
}

std::vector<EpwRecord> clear_sky_records(const ClearSkyModel& model, double luminous_efficacy) {
  std::vector<EpwRecord> out;
  out.reserve(kHoursPerYear);
  for (int doy = 0; doy < kDaysPerYear; ++doy) {
    for (int hour = 1; hour <= 24; ++hour) {
      const double solar = solar_hour_from_clock(hour - 0.5, model.longitude_deg, model.utc_offset_h);
      const auto pos = solar_position(model.latitude_deg, doy + 1, solar);
      const double lux = exterior_illuminance(model, pos.elevation_deg);
      EpwRecord r;
      r.month = month_of(doy);
      r.day = day_of_month(doy);
      r.hour = hour;
      r.global_horizontal_lux = lux;
      r.global_horizontal_wh_m2 = lux / luminous_efficacy;
      r.direct_normal_wh_m2 = model.clearness * clear_sky_direct_normal(pos.elevation_deg);
      r.diffuse_horizontal_wh_m2 = 0.0;
      out.push_back(r);
    }
  }
  return out;
}

double calibrate_clearness(ClearSkyModel model, double target_sunshine_hours) {
  auto hours_at = [&](double c) {
    model.clearness = c;
    return sunshine_hours(clear_sky_records(model));
  };
  if (hours_at(1.0) <= target_sunshine_hours) return 1.0;
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 40; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (hours_at(mid) >= target_sunshine_hours) {
      hi = mid;
    } else {
      lo = mid;
    }
  }
  return hi;
}

double DaylightSeries::lux_hours() const {
  double sum = 0.0;
  for (double v : exterior_lux) sum += v;
  return sum * (static_cast<double>(timestep.count()) / 60.0);
}

DaylightSeries daylight_from_epw(std::span<const EpwRecord> records, const YearClock& clock,
                                 double luminous_efficacy) {
  if (records.size() != static_cast<std::size_t>(kHoursPerYear))
    throw LengthError(kHoursPerYear, records.size());
  std::vector<double> hourly(records.size());
  std::transform(records.begin(), records.end(), hourly.begin(),
                 [&](const EpwRecord& r) { return exterior_illuminance(r, luminous_efficacy); });
  DaylightSeries series;
  series.timestep = clock.timestep();
  series.exterior_lux.resize(clock.steps());
  const std::size_t steps_per_hour = 60 / static_cast<std::size_t>(clock.timestep().count());
  for (std::size_t i = 0; i < clock.steps(); ++i) series.exterior_lux[i] = hourly[i / steps_per_hour];
  return series;
}

DaylightSeries daylight_from_clear_sky(const ClearSkyModel& model, const YearClock& clock) {
  DaylightSeries series;
  series.timestep = clock.timestep();
  series.exterior_lux.resize(clock.steps());
  const double dt_h = clock.timestep_hours();
  for (std::size_t i = 0; i < clock.steps(); ++i) {
    const int doy = clock.day_of_year(i);
    const double clock_hour = clock.minute_of_day(i) / 60.0 + 0.5 * dt_h;
    const double solar = solar_hour_from_clock(clock_hour, model.longitude_deg, model.utc_offset_h);
    const auto pos = solar_position(model.latitude_deg, doy + 1, solar);
    series.exterior_lux[i] = exterior_illuminance(model, pos.elevation_deg);
  }
  return series;
}

}  // namespace lightsim
