#include "lightsim/calendar.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <string>

#include "lightsim/errors.hpp"

namespace lightsim {

namespace {

constexpr std::array<int, 12> kMonthLengths = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
constexpr std::array<std::string_view, 7> kWeekdayNames = {
    "monday", "tuesday", "wednesday", "thursday", "friday", "saturday", "sunday"};

}  // namespace

Weekday parse_weekday(std::string_view name) {
  std::string lower;
  for (char c : name) lower.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  for (std::size_t i = 0; i < kWeekdayNames.size(); ++i) {
    if (lower == kWeekdayNames[i]) return static_cast<Weekday>(i);
  }
  throw ConfigError("unknown weekday '" + std::string(name) + "'");
}

std::string_view to_string(Weekday day) { return kWeekdayNames[static_cast<int>(day)]; }

int day_of_year(int month, int day) {
  if (month < 1 || month > 12) throw DomainError("month out of range: " + std::to_string(month));
  if (day < 1 || day > kMonthLengths[month - 1])
    throw DomainError("day out of range: " + std::to_string(month) + "/" + std::to_string(day));
  int doy = 0;
  for (int m = 1; m < month; ++m) doy += kMonthLengths[m - 1];
  return doy + day - 1;
}

int month_of(int doy) {
  int month = 1;
  for (int len : kMonthLengths) {
    if (doy < len) return month;
    doy -= len;
    ++month;
  }
  return 12;
}

int day_of_month(int doy) {
  for (int len : kMonthLengths) {
    if (doy < len) return doy + 1;
    doy -= len;
  }
  return 31;
}

void check_timestep(std::chrono::minutes timestep) {
  if (timestep.count() <= 0 || 30 % timestep.count() != 0) {
    throw ConfigError("timestep must divide 30 minutes, got " + std::to_string(timestep.count()) +
                      " min");
  }
}

YearClock::YearClock(std::chrono::minutes timestep, Weekday first_day)
    : timestep_(timestep), first_day_(first_day) {
  check_timestep(timestep);
  steps_per_day_ = static_cast<std::size_t>(kMinutesPerDay / timestep.count());
  steps_ = steps_per_day_ * kDaysPerYear;
}

}  // namespace lightsim
