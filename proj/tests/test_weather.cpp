#include <gtest/gtest.h>

#include <sstream>

#include "lightsim/errors.hpp"
#include "lightsim/weather.hpp"
#include "oracles.hpp"
#include "test_support.hpp"

using namespace lightsim;
using testing_support::algiers_epw;
using testing_support::slurp;
using testing_support::stuttgart_epw;

namespace {

const EpwFile& stuttgart() {
  static const EpwFile f = load_epw(stuttgart_epw());
  return f;
}
const EpwFile& algiers() {
  static const EpwFile f = load_epw(algiers_epw());
  return f;
}

// Splits a file into lines, keeping the content but not the terminators.
std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) out.push_back(line);
  return out;
}

std::string join(const std::vector<std::string>& lines) {
  std::string out;
  for (const auto& l : lines) out += l + "\n";
  return out;
}

std::string replace_field(const std::string& line, std::size_t index, const std::string& value) {
  std::vector<std::string> f;
  std::stringstream ss(line);
  std::string item;
  while (std::getline(ss, item, ',')) f.push_back(item);
  f.at(index) = value;
  std::string out;
  for (std::size_t i = 0; i < f.size(); ++i) out += (i ? "," : "") + f[i];
  return out;
}

}  // namespace

TEST(EpwParse, StuttgartFixtureHeaderAndLength) {
  const auto& f = stuttgart();
  EXPECT_EQ(f.records.size(), 8760u);
  EXPECT_EQ(f.header_lines.size(), 8u);
  EXPECT_NEAR(f.location.latitude_deg, 48.7, 0.05);
  EXPECT_NEAR(f.location.longitude_deg, 9.22, 1e-12);
  EXPECT_EQ(f.location.utc_offset_h, 1.0);
  EXPECT_EQ(f.records.front().month, 1);
  EXPECT_EQ(f.records.front().hour, 1);
  EXPECT_EQ(f.records.back().month, 12);
  EXPECT_EQ(f.records.back().day, 31);
  EXPECT_EQ(f.records.back().hour, 24);
}

TEST(EpwParse, AlgiersFixtureHeader) {
  EXPECT_EQ(algiers().records.size(), 8760u);
  EXPECT_NEAR(algiers().location.latitude_deg, 36.72, 1e-12);
}

TEST(EpwParse, ConsumedFieldsRoundTripBitExactly) {
  for (const auto* f : {&stuttgart(), &algiers()}) {
    std::ostringstream out;
    write_epw(out, *f);
    const auto again = parse_epw_text(out.str());
    ASSERT_EQ(again.records.size(), f->records.size());
    for (std::size_t i = 0; i < f->records.size(); ++i) ASSERT_EQ(again.records[i], f->records[i]) << i;
    EXPECT_EQ(again.header_lines, f->header_lines);
  }
}

TEST(EpwParse, EmptyInputIsFormatError) {
  try {
    parse_epw_text("");
    FAIL();
  } catch (const FormatError& e) {
    EXPECT_EQ(e.line(), 1u);
  }
}

TEST(EpwParse, MissingLocationHeaderIsFormatError) {
  auto lines = lines_of(slurp(stuttgart_epw()));
  lines[0] = "PLACE,Stuttgart";
  EXPECT_THROW(parse_epw_text(join(lines)), FormatError);
}

TEST(EpwParse, DeletedRowIsLengthError) {
  auto lines = lines_of(slurp(stuttgart_epw()));
  lines.erase(lines.begin() + 100);
  try {
    parse_epw_text(join(lines));
    FAIL();
  } catch (const LengthError& e) {
    EXPECT_EQ(e.expected(), 8760u);
    EXPECT_EQ(e.actual(), 8759u);
    EXPECT_NE(std::string(e.what()).find("8759"), std::string::npos);
  }
}

TEST(EpwParse, NonNumericFieldReportsRowAndColumn) {
  auto lines = lines_of(slurp(stuttgart_epw()));
  // File line 20 is data row 12; column 15 is direct normal irradiance.
  lines[19] = replace_field(lines[19], 14, "abc");
  try {
    parse_epw_text(join(lines));
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.row(), 20u);
    EXPECT_EQ(e.column(), 15u);
  }
}

TEST(EpwParse, NegativeIrradianceRejected) {
  auto lines = lines_of(slurp(stuttgart_epw()));
  lines[8] = replace_field(lines[8], 13, "-5");
  EXPECT_THROW(parse_epw_text(join(lines)), ParseError);
}

TEST(EpwParse, ShuffledRecordIsFormatError) {
  auto lines = lines_of(slurp(stuttgart_epw()));
  std::swap(lines[8], lines[9]);
  EXPECT_THROW(parse_epw_text(join(lines)), FormatError);
}

TEST(EpwParse, SentinelsMapToAbsent) {
  auto lines = lines_of(slurp(stuttgart_epw()));
  lines[8] = replace_field(lines[8], 13, "9999");
  lines[8] = replace_field(lines[8], 16, "999999");
  const auto f = parse_epw_text(join(lines));
  EXPECT_FALSE(f.records[0].global_horizontal_wh_m2.has_value());
  EXPECT_FALSE(f.records[0].global_horizontal_lux.has_value());
  EXPECT_TRUE(f.records[0].direct_normal_wh_m2.has_value());
}

TEST(EpwParse, CrLfLineEndingsAccepted) {
  std::string text = slurp(stuttgart_epw());
  std::string crlf;
  for (char c : text) {
    if (c == '\n') crlf += '\r';
    crlf += c;
  }
  const auto f = parse_epw_text(crlf);
  EXPECT_EQ(f.records, stuttgart().records);
}

TEST(SolarPosition, EquatorEquinoxNoonIsOverhead) {
  EXPECT_NEAR(solar_position(0.0, 81, 12.0).elevation_deg, 90.0, 0.05);
}

TEST(SolarPosition, AlgiersSolsticeNoon) {
  // 90 - 36.75 + 23.45
  const auto p = solar_position(36.75, 172, 12.0);
  EXPECT_NEAR(p.elevation_deg, 76.7, 0.05);
  EXPECT_NEAR(p.declination_deg, 23.45, 0.01);
}

TEST(SolarPosition, MatchesOracleAcrossTheYear) {
  for (double lat : {-60.0, -10.0, 0.0, 36.72, 48.68, 70.0}) {
    for (int n = 1; n <= 365; n += 17) {
      for (double h = 0.0; h < 24.0; h += 1.25) {
        const auto p = solar_position(lat, n, h);
        EXPECT_NEAR(p.elevation_deg, oracle::elevation_deg(lat, n, h), 1e-9);
        EXPECT_GE(p.elevation_deg, -90.0);
        EXPECT_LE(p.elevation_deg, 90.0);
        EXPECT_LE(std::abs(p.declination_deg), 23.45 + 1e-12);
      }
    }
  }
}

TEST(SolarPosition, WinterMidnightIsBelowHorizon) {
  for (double lat : {-30.0, 0.0, 36.72, 48.68}) EXPECT_LT(solar_position(lat, 355, 0.0).elevation_deg, 0.0);
}

TEST(SolarPosition, ClockToSolarUsesLongitudeOnly) {
  EXPECT_DOUBLE_EQ(solar_hour_from_clock(12.0, 15.0, 1.0), 12.0);
  EXPECT_DOUBLE_EQ(solar_hour_from_clock(12.0, 0.0, 1.0), 11.0);
}

TEST(ExteriorIlluminance, GhiTimesEfficacyWhenFieldAbsent) {
  EpwRecord r;
  r.global_horizontal_wh_m2 = 500.0;
  EXPECT_DOUBLE_EQ(exterior_illuminance(r, 120.0), 60000.0);
}

TEST(ExteriorIlluminance, IlluminanceFieldTakesPrecedence) {
  EpwRecord r;
  r.global_horizontal_wh_m2 = 500.0;
  r.global_horizontal_lux = 45000.0;
  EXPECT_DOUBLE_EQ(exterior_illuminance(r, 120.0), 45000.0);
}

TEST(ExteriorIlluminance, ClearSkyZeroAtNight) {
  ClearSkyModel m{36.72, 3.25, 1.0, 100000.0, 0.8};
  EXPECT_EQ(exterior_illuminance(m, 0.0), 0.0);
  EXPECT_EQ(exterior_illuminance(m, -20.0), 0.0);
  EXPECT_NEAR(exterior_illuminance(m, 30.0), 100000.0 * 0.5 * 0.8, 1e-6);
}

TEST(ExteriorIlluminance, RejectsNonPositiveEfficacy) {
  EXPECT_THROW(exterior_illuminance(EpwRecord{}, 0.0), DomainError);
}

TEST(Sunshine, AllZeroYearHasNone) {
  std::vector<EpwRecord> zero(8760);
  for (auto& r : zero) r.direct_normal_wh_m2 = 0.0;
  EXPECT_EQ(sunshine_hours(zero), 0.0);
}

TEST(Sunshine, ThresholdIsInclusive) {
  std::vector<EpwRecord> recs(3);
  recs[0].direct_normal_wh_m2 = 119.999;
  recs[1].direct_normal_wh_m2 = 120.0;
  recs[2].direct_normal_wh_m2 = std::nullopt;
  EXPECT_EQ(sunshine_hours(recs), 1.0);
}

TEST(Sunshine, FixturesMatchPublishedTotals) {
  const double a = sunshine_hours(algiers().records);
  const double s = sunshine_hours(stuttgart().records);
  EXPECT_NEAR(a, 2847.0, 0.15 * 2847.0);
  EXPECT_NEAR(s, 1662.0, 0.15 * 1662.0);
  EXPECT_GT(a, s);
}

TEST(Daylight, AlgiersIntegralExceedsStuttgart) {
  const YearClock clock(std::chrono::minutes(10));
  EXPECT_GT(daylight_from_epw(algiers().records, clock).lux_hours(),
            daylight_from_epw(stuttgart().records, clock).lux_hours());
}

TEST(Daylight, ZeroOrderHoldRepeatsHourlyValues) {
  const YearClock clock(std::chrono::minutes(15));
  const auto s = daylight_from_epw(stuttgart().records, clock);
  ASSERT_EQ(s.exterior_lux.size(), 8760u * 4);
  for (std::size_t h = 0; h < 8760; h += 97) {
    const double v = exterior_illuminance(stuttgart().records[h], kDefaultLuminousEfficacy);
    for (std::size_t k = 0; k < 4; ++k) EXPECT_EQ(s.exterior_lux[h * 4 + k], v);
  }
  // The integral does not depend on the timestep.
  const auto hourly = daylight_from_epw(stuttgart().records, YearClock(std::chrono::minutes(30)));
  EXPECT_NEAR(s.lux_hours(), hourly.lux_hours(), 1e-9 * s.lux_hours());
}

TEST(Daylight, ClearSkyNonNegativeAndDarkAtNight) {
  ClearSkyModel m{48.68, 9.22, 1.0, 100000.0, 1.0};
  const YearClock clock(std::chrono::minutes(10));
  const auto s = daylight_from_clear_sky(m, clock);
  ASSERT_EQ(s.exterior_lux.size(), clock.steps());
  for (std::size_t i = 0; i < s.exterior_lux.size(); ++i) {
    EXPECT_GE(s.exterior_lux[i], 0.0);
    const double clock_hour = clock.minute_of_day(i) / 60.0 + 5.0 / 60.0;
    const double el = oracle::elevation_deg(48.68, clock.day_of_year(i) + 1,
                                            clock_hour + 9.22 / 15.0 - 1.0);
    if (el <= 0.0) EXPECT_EQ(s.exterior_lux[i], 0.0) << i;
  }
}

TEST(Daylight, ClearnessCalibrationHitsTarget) {
  ClearSkyModel m{36.72, 3.25, 1.0, 100000.0, 1.0};
  m.clearness = calibrate_clearness(m, 2847.0);
  EXPECT_GT(m.clearness, 0.0);
  EXPECT_LE(m.clearness, 1.0);
  EXPECT_NEAR(sunshine_hours(clear_sky_records(m)), 2847.0, 0.15 * 2847.0);
}
