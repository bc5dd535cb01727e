#include "lightsim/occupancy.hpp"

#include <algorithm>
#include <random>

#include "lightsim/errors.hpp"

namespace lightsim {

namespace {

constexpr int h(int hours, int minutes = 0) { return hours * 60 + minutes; }

double pattern_at(const DailyPattern& p, int minute) {
  for (const auto& b : p.blocks) {
    if (minute >= b.start_min && minute < b.end_min) return b.occupancy;
  }
  return 0.0;
}

bool scheduled(const std::vector<TimeInterval>& schedule, int minute) {
  return std::any_of(schedule.begin(), schedule.end(), [&](const TimeInterval& iv) {
    return minute >= iv.start_min && minute < iv.end_min;
  });
}

// Per-day lookup tables so the year loops stay branch-light.
std::vector<double> day_table(const DailyPattern& p, const YearClock& clock) {
  std::vector<double> table(clock.steps_per_day());
  for (std::size_t i = 0; i < table.size(); ++i) table[i] = pattern_at(p, clock.minute_of_day(i));
  return table;
}

std::vector<double> day_table(const std::vector<TimeInterval>& s, const YearClock& clock) {
  std::vector<double> table(clock.steps_per_day());
  for (std::size_t i = 0; i < table.size(); ++i)
    table[i] = scheduled(s, clock.minute_of_day(i)) ? 1.0 : 0.0;
  return table;
}

}  // namespace

double DailyPattern::at(int minute_of_day) const { return pattern_at(*this, minute_of_day); }

double DailyPattern::expected_hours() const {
  double hours = 0.0;
  for (const auto& b : blocks) hours += b.occupancy * (b.end_min - b.start_min) / 60.0;
  return hours;
}

bool HolidayCalendar::is_holiday(int doy) const noexcept {
  auto in = [doy](const HolidayBlock& b) {
    return doy >= b.start_day && doy < b.start_day + b.length_days;
  };
  return in(winter) || in(summer);
}

double OccupancySeries::on_hours() const {
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum * (static_cast<double>(timestep.count()) / 60.0);
}

double OccupancySeries::mean() const {
  if (values.empty()) return 0.0;
  double sum = 0.0;
  for (double v : values) sum += v;
  return sum / static_cast<double>(values.size());
}

Profile profile1() {
  Profile p;
  p.id = ProfileId::Profile1;
  p.weekday.blocks = {{h(0), h(6), 0.0},       {h(6), h(7), 0.5},   {h(7), h(8), 0.75},
                      {h(8), h(21, 30), 1.0},  {h(21, 30), h(22), 0.75}, {h(22), h(24), 0.0}};
  p.weekend = p.weekday;
  p.schedule_weekday = {{h(6), h(22)}};
  p.schedule_weekend = p.schedule_weekday;
  return p;
}

Profile profile2() {
  const Profile weekend = profile1();
  Profile p;
  p.id = ProfileId::Profile2;
  p.weekday.blocks = {{h(0), h(6), 0.0},         {h(6), h(7), 0.5},          {h(7), h(7, 30), 0.75},
                      {h(7, 30), h(8), 1.0},     {h(8), h(18), 0.0},         {h(18), h(18, 30), 0.5},
                      {h(18, 30), h(19), 0.75},  {h(19), h(21, 30), 1.0},    {h(21, 30), h(22), 0.75},
                      {h(22), h(24), 0.0}};
  p.weekend = weekend.weekend;
  p.schedule_weekday = {{h(6), h(8)}, {h(18), h(22)}};
  p.schedule_weekend = weekend.schedule_weekend;
  return p;
}

Profile preset_profile(ProfileId id) { return id == ProfileId::Profile1 ? profile1() : profile2(); }

std::vector<Violation> check_invariants(const DailyPattern& pattern, const std::string& path) {
  std::vector<Violation> out;
  int expected_start = 0;
  for (std::size_t i = 0; i < pattern.blocks.size(); ++i) {
    const auto& b = pattern.blocks[i];
    const std::string bp = path + "/" + std::to_string(i);
    if (b.start_min != expected_start)
      out.push_back({bp + "/start", "blocks must tile the day without gaps or overlap"});
    if (b.end_min <= b.start_min) out.push_back({bp + "/end", "must be after start"});
    if (b.start_min % 30 != 0 || b.end_min % 30 != 0)
      out.push_back({bp, "boundaries must align to 30-minute marks"});
    if (!(b.occupancy >= 0.0 && b.occupancy <= 1.0))
      out.push_back({bp + "/occupancy", "must be within [0, 1]"});
    expected_start = b.end_min;
  }
  if (expected_start != kMinutesPerDay) out.push_back({path, "blocks must end at 24:00"});
  return out;
}

std::vector<Violation> check_invariants(const std::vector<TimeInterval>& schedule,
                                        const std::string& path) {
  std::vector<Violation> out;
  auto sorted = schedule;
  std::sort(sorted.begin(), sorted.end(),
            [](const TimeInterval& a, const TimeInterval& b) { return a.start_min < b.start_min; });
  for (std::size_t i = 0; i < schedule.size(); ++i) {
    const auto& iv = schedule[i];
    const std::string ip = path + "/" + std::to_string(i);
    if (iv.start_min < 0 || iv.end_min > kMinutesPerDay || iv.end_min <= iv.start_min)
      out.push_back({ip, "interval must satisfy 00:00 <= start < end <= 24:00"});
    if (iv.start_min % 30 != 0 || iv.end_min % 30 != 0)
      out.push_back({ip, "boundaries must align to 30-minute marks"});
  }
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i].start_min < sorted[i - 1].end_min) {
      out.push_back({path, "intervals overlap"});
      break;
    }
  }
  return out;
}

std::vector<Violation> check_invariants(const Profile& profile, const std::string& path) {
  std::vector<Violation> out;
  auto append = [&](std::vector<Violation> v) { out.insert(out.end(), v.begin(), v.end()); };
  append(check_invariants(profile.weekday, path + "/weekday"));
  append(check_invariants(profile.weekend, path + "/weekend"));
  append(check_invariants(profile.schedule_weekday, path + "/schedule_weekday"));
  append(check_invariants(profile.schedule_weekend, path + "/schedule_weekend"));
  return out;
}

std::vector<Violation> check_invariants(const HolidayCalendar& calendar, const std::string& path) {
  std::vector<Violation> out;
  auto check = [&](const HolidayBlock& b, const std::string& bp) {
    if (b.length_days < 0) out.push_back({bp + "/length_days", "must be >= 0"});
    if (b.start_day < 0 || b.start_day + b.length_days > kDaysPerYear)
      out.push_back({bp, "block must lie within the year"});
  };
  check(calendar.winter, path + "/winter");
  check(calendar.summer, path + "/summer");
  const auto& a = calendar.winter;
  const auto& b = calendar.summer;
  if (a.start_day < b.start_day + b.length_days && b.start_day < a.start_day + a.length_days &&
      a.length_days > 0 && b.length_days > 0)
    out.push_back({path, "winter and summer blocks overlap"});
  return out;
}

OccupancySeries expected_series(const Profile& profile, const HolidayCalendar& calendar,
                                const YearClock& clock) {
  const auto weekday = day_table(profile.weekday, clock);
  const auto weekend = day_table(profile.weekend, clock);
  OccupancySeries series{clock.timestep(), std::vector<double>(clock.steps(), 0.0)};
  const std::size_t spd = clock.steps_per_day();
  for (int d = 0; d < kDaysPerYear; ++d) {
    if (calendar.is_holiday(d)) continue;
    const auto& table = clock.is_weekend(d) ? weekend : weekday;
    std::copy(table.begin(), table.end(), series.values.begin() + static_cast<std::ptrdiff_t>(d * spd));
  }
  return series;
}

OccupancySeries schedule_series(const Profile& profile, const YearClock& clock) {
  const auto weekday = day_table(profile.schedule_weekday, clock);
  const auto weekend = day_table(profile.schedule_weekend, clock);
  OccupancySeries series{clock.timestep(), std::vector<double>(clock.steps(), 0.0)};
  const std::size_t spd = clock.steps_per_day();
  for (int d = 0; d < kDaysPerYear; ++d) {
    const auto& table = clock.is_weekend(d) ? weekend : weekday;
    std::copy(table.begin(), table.end(), series.values.begin() + static_cast<std::ptrdiff_t>(d * spd));
  }
  return series;
}

OccupancySeries stochastic_series(const Profile& profile, const HolidayCalendar& calendar,
                                  const YearClock& clock, std::uint64_t seed,
                                  std::chrono::minutes hold_time) {
  if (hold_time < clock.timestep())
    throw ConfigError("hold time must be at least one timestep");
  const auto probability = expected_series(profile, calendar, clock);
  const auto step = clock.timestep().count();
  const long hold_steps = (hold_time.count() + step - 1) / step;

  // mt19937_64 output is fixed by the standard; the uniform is built from its
  // top 53 bits so the stream is identical across standard libraries.
  std::mt19937_64 rng(seed);
  OccupancySeries series{clock.timestep(), std::vector<double>(clock.steps(), 0.0)};
  long remaining = 0;
  for (std::size_t i = 0; i < clock.steps(); ++i) {
    const double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
    if (calendar.is_holiday(clock.day_of_year(i))) {
      remaining = 0;
      continue;
    }
    if (u < probability.values[i]) remaining = hold_steps;
    if (remaining > 0) {
      series.values[i] = 1.0;
      --remaining;
    }
  }
  return series;
}

}  // namespace lightsim
