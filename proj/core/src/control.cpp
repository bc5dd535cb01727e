#include "lightsim/control.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "lightsim/errors.hpp"

namespace lightsim {

PowerFraction::PowerFraction(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0))
    throw DomainError("power fraction out of [0, 1]: " + std::to_string(value));
}

double interior_daylight(double exterior_lux, double daylight_factor) {
  if (!(exterior_lux >= 0.0)) throw DomainError("exterior illuminance must be >= 0");
  if (!(daylight_factor >= 0.0 && daylight_factor <= 1.0))
    throw DomainError("daylight factor must be within [0, 1]");
  return exterior_lux * daylight_factor;
}

PowerFraction dim_factor(DaylightMode mode, double interior_daylight_lux, double setpoint_lux) {
  if (!(setpoint_lux > 0.0)) throw DomainError("illuminance setpoint must be > 0");
  switch (mode) {
    case DaylightMode::None:
      return PowerFraction::full();
    case DaylightMode::Harvest:
      return interior_daylight_lux >= setpoint_lux ? PowerFraction::off() : PowerFraction::full();
    case DaylightMode::HarvestDim:
      return PowerFraction{std::clamp(1.0 - interior_daylight_lux / setpoint_lux, 0.0, 1.0)};
  }
  return PowerFraction::full();
}

PowerFraction power_fraction(const ControlFeatures& features, double occupancy_gate,
                             PowerFraction dim) {
  if (!(occupancy_gate >= 0.0 && occupancy_gate <= 1.0))
    throw DomainError("occupancy gate out of [0, 1]");
  const double gate = features.occupancy_mode == OccupancyMode::None ? 1.0 : occupancy_gate;
  return PowerFraction{gate * dim.value()};
}

HarvestSwitch::HarvestSwitch(double hysteresis_lux) : band_(hysteresis_lux) {
  if (!(hysteresis_lux >= 0.0)) throw DomainError("hysteresis band must be >= 0");
}

PowerFraction HarvestSwitch::update(double interior_daylight_lux, double setpoint_lux) {
  if (!(setpoint_lux > 0.0)) throw DomainError("illuminance setpoint must be > 0");
  if (interior_daylight_lux >= setpoint_lux) {
    on_ = false;
  } else if (interior_daylight_lux < setpoint_lux - band_) {
    on_ = true;
  }
  return on_ ? PowerFraction::full() : PowerFraction::off();
}

}  // namespace lightsim
