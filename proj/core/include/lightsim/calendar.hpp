#pragma once

#include <chrono>
#include <cstddef>
#include <string_view>

namespace lightsim {

inline constexpr int kDaysPerYear = 365;
inline constexpr int kHoursPerYear = 8760;
inline constexpr int kMinutesPerDay = 1440;

enum class Weekday { Monday, Tuesday, Wednesday, Thursday, Friday, Saturday, Sunday };

Weekday parse_weekday(std::string_view name);
std::string_view to_string(Weekday day);

/// Day of year (0-based) of a month (1-12) / day (1-31) pair in a non-leap year.
int day_of_year(int month, int day);
/// Month (1-12) containing a 0-based day of year.
int month_of(int day_of_year);
/// Day of month (1-31) of a 0-based day of year.
int day_of_month(int day_of_year);

/// Non-leap simulation year sampled at a fixed timestep. Step i starts at
/// i * timestep minutes after Jan 1 00:00 local clock time.
class YearClock {
 public:
  /// Throws ConfigError unless timestep divides 30 minutes.
  explicit YearClock(std::chrono::minutes timestep, Weekday first_day = Weekday::Monday);

  std::chrono::minutes timestep() const noexcept { return timestep_; }
  double timestep_hours() const noexcept { return static_cast<double>(timestep_.count()) / 60.0; }
  std::size_t steps() const noexcept { return steps_; }
  std::size_t steps_per_day() const noexcept { return steps_per_day_; }
  Weekday first_day() const noexcept { return first_day_; }

  int day_of_year(std::size_t step) const noexcept {
    return static_cast<int>(step / steps_per_day_);
  }
  /// Minutes after local midnight at the start of the step.
  int minute_of_day(std::size_t step) const noexcept {
    return static_cast<int>((step % steps_per_day_) * timestep_.count());
  }
  Weekday weekday(int day_of_year) const noexcept {
    return static_cast<Weekday>((static_cast<int>(first_day_) + day_of_year) % 7);
  }
  bool is_weekend(int day_of_year) const noexcept {
    auto d = weekday(day_of_year);
    return d == Weekday::Saturday || d == Weekday::Sunday;
  }

 private:
  std::chrono::minutes timestep_;
  Weekday first_day_;
  std::size_t steps_per_day_;
  std::size_t steps_;
};

/// Throws ConfigError unless the timestep is positive and divides 30 minutes.
void check_timestep(std::chrono::minutes timestep);

}  // namespace lightsim
