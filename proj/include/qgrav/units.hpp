#pragma once

// Conversion between SI and the natural units of a model with
// hbar = m = 1 and a chosen length unit L.
//   time unit   m L^2 / hbar
//   accel unit  hbar^2 / (m^2 L^3)

namespace qgrav::units {

class NaturalScale {
 public:
  NaturalScale(double hbar, double mass, double length) noexcept
      : time_(mass * length * length / hbar), accel_(hbar * hbar / (mass * mass * length * length * length)) {}

  double time_unit() const noexcept { return time_; }
  double acceleration_unit() const noexcept { return accel_; }

  double time_to_natural(double seconds) const noexcept { return seconds / time_; }
  double acceleration_to_natural(double si) const noexcept { return si / accel_; }

 private:
  double time_;
  double accel_;
};

}  // namespace qgrav::units
