#pragma once

#include <chrono>
#include <cstdint>
#include <string>
#include <vector>

#include "lightsim/calendar.hpp"
#include "lightsim/model.hpp"

namespace lightsim {

/// Occupancy probability over a clock-time block [start, end), in minutes
/// after midnight.
struct OccupancyBlock {
  int start_min = 0;
  int end_min = 0;
  double occupancy = 0.0;
};

/// A day of occupancy probabilities; blocks tile [00:00, 24:00) on 30-minute marks.
struct DailyPattern {
  std::vector<OccupancyBlock> blocks;

  double at(int minute_of_day) const;
  /// Expected occupied hours over the day.
  double expected_hours() const;
};

/// Scheduled "occupied" interval [start, end) in minutes after midnight.
struct TimeInterval {
  int start_min = 0;
  int end_min = 0;
};

struct Profile {
  ProfileId id = ProfileId::Profile1;
  DailyPattern weekday;
  DailyPattern weekend;
  std::vector<TimeInterval> schedule_weekday;
  std::vector<TimeInterval> schedule_weekend;
};

struct HolidayBlock {
  int start_day = 0;  ///< 0-based day of year
  int length_days = 15;
};

/// Days on which the family is away. Defaults: Jan 1-15 and Aug 1-15.
struct HolidayCalendar {
  HolidayBlock winter{0, 15};
  HolidayBlock summer{212, 15};

  bool is_holiday(int day_of_year) const noexcept;
  int total_days() const noexcept { return winter.length_days + summer.length_days; }
};

struct OccupancySeries {
  std::chrono::minutes timestep{10};
  std::vector<double> values;

  /// Sum of values times the step length, in hours.
  double on_hours() const;
  double mean() const;
};

/// Continuous random occupancy, identical every day.
Profile profile1();
/// Vacant during weekday working hours; weekends follow profile 1.
Profile profile2();
Profile preset_profile(ProfileId id);

std::vector<Violation> check_invariants(const DailyPattern& pattern, const std::string& path);
std::vector<Violation> check_invariants(const std::vector<TimeInterval>& schedule,
                                        const std::string& path);
std::vector<Violation> check_invariants(const Profile& profile, const std::string& path);
std::vector<Violation> check_invariants(const HolidayCalendar& calendar, const std::string& path);

/// Probability of presence at each step; zero on holidays.
OccupancySeries expected_series(const Profile& profile, const HolidayCalendar& calendar,
                                const YearClock& clock);

/// Binary preset schedule. Holidays are not applied: a timer knows nothing of vacancy.
OccupancySeries schedule_series(const Profile& profile, const YearClock& clock);

/// Sampled presence. A positive sample keeps the lights on for hold_time
/// (counting the sampled step itself); holiday steps are always vacant.
OccupancySeries stochastic_series(const Profile& profile, const HolidayCalendar& calendar,
                                  const YearClock& clock, std::uint64_t seed,
                                  std::chrono::minutes hold_time);

}  // namespace lightsim
