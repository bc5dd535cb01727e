#pragma once

// Hand-written reference computations. These deliberately avoid the library:
// closed forms where the library loops, literal tables where it uses data.

#include <cmath>
#include <numbers>

namespace oracle {

inline constexpr double kHouseWatts = 7 * 11.0;
inline constexpr double kBaselineKwh = kHouseWatts * 8760.0 / 1000.0;  // 674.52

// Present value of 1 EUR/yr received at the end of years 1..n.
inline double annuity_factor(double r, int n) {
  if (r == 0.0) return n;
  return (1.0 - std::pow(1.0 + r, -n)) / r;
}

inline double npv(double inflow, double r, int n, double initial) {
  return inflow * annuity_factor(r, n) - initial;
}

// Plain bisection on [0, 1]; enough for the positive-return cases tested.
inline double irr(double inflow, int n, double initial) {
  double lo = 0.0;
  double hi = 1.0;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    if (npv(inflow, mid, n, initial) > 0.0) lo = mid;
    else hi = mid;
  }
  return 0.5 * (lo + hi);
}

// Occupancy probability by clock minute, transcribed block by block.
inline double profile1_at(int minute) {
  const double h = minute / 60.0;
  if (h < 6.0) return 0.0;
  if (h < 7.0) return 0.5;
  if (h < 8.0) return 0.75;
  if (h < 21.5) return 1.0;
  if (h < 22.0) return 0.75;
  return 0.0;
}

inline double profile2_weekday_at(int minute) {
  const double h = minute / 60.0;
  if (h < 6.0) return 0.0;
  if (h < 7.0) return 0.5;
  if (h < 7.5) return 0.75;
  if (h < 8.0) return 1.0;
  if (h < 18.0) return 0.0;
  if (h < 18.5) return 0.5;
  if (h < 19.0) return 0.75;
  if (h < 21.5) return 1.0;
  if (h < 22.0) return 0.75;
  return 0.0;
}

inline bool profile1_scheduled(int minute) { return minute >= 6 * 60 && minute < 22 * 60; }
inline bool profile2_weekday_scheduled(int minute) {
  return (minute >= 6 * 60 && minute < 8 * 60) || (minute >= 18 * 60 && minute < 22 * 60);
}

// Minute-resolution integral of a daily curve, in hours.
template <class F>
double daily_hours(F f) {
  double sum = 0.0;
  for (int m = 0; m < 1440; ++m) sum += f(m);
  return sum / 60.0;
}

inline double elevation_deg(double lat, int n, double solar_hour) {
  const double d2r = std::numbers::pi / 180.0;
  const double decl = 23.45 * std::sin(2.0 * std::numbers::pi * (284 + n) / 365.0);
  const double h = (solar_hour - 12.0) * 15.0;
  return std::asin(std::sin(lat * d2r) * std::sin(decl * d2r) +
                   std::cos(lat * d2r) * std::cos(decl * d2r) * std::cos(h * d2r)) /
         d2r;
}

}  // namespace oracle
