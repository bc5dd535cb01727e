#pragma once

#include "lightsim/model.hpp"

namespace lightsim {

/// Fraction of full lamp power delivered during a step, always in [0, 1].
/// Sub-perceptual duty cycling is energy-equivalent to proportional power.
class PowerFraction {
 public:
  constexpr PowerFraction() = default;
  /// Throws DomainError outside [0, 1].
  explicit PowerFraction(double value);

  constexpr double value() const noexcept { return value_; }
  constexpr bool operator==(const PowerFraction&) const = default;

  static constexpr PowerFraction full() { return PowerFraction{}; }
  static PowerFraction off() { return PowerFraction{0.0}; }

 private:
  double value_ = 1.0;
};

struct ControlInputs {
  double occupancy = 0.0;
  double interior_daylight_lux = 0.0;
  double setpoint_lux = 300.0;
};

/// Daylight-factor method: interior = exterior * DF.
double interior_daylight(double exterior_lux, double daylight_factor);

/// None -> 1; Harvest -> 0 once daylight meets the setpoint, else 1;
/// HarvestDim -> clamp(1 - daylight / setpoint, 0, 1).
PowerFraction dim_factor(DaylightMode mode, double interior_daylight_lux, double setpoint_lux);

/// occupancy_gate * dim; the gate is forced to 1 without an occupancy mode.
PowerFraction power_fraction(const ControlFeatures& features, double occupancy_gate,
                             PowerFraction dim);

/// On/off harvesting with an optional hysteresis band: lamps switch off when
/// daylight reaches the setpoint and back on only below setpoint - band.
/// A zero band reproduces dim_factor(Harvest, ...) exactly.
class HarvestSwitch {
 public:
  explicit HarvestSwitch(double hysteresis_lux = 0.0);

  PowerFraction update(double interior_daylight_lux, double setpoint_lux);
  bool lamps_on() const noexcept { return on_; }

 private:
  double band_;
  bool on_ = true;
};

}  // namespace lightsim
