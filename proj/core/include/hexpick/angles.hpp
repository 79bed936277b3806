#pragma once

#include <cmath>

// Angle convention used across the library: every public API value is in
// degrees (calibration tables, gait tables, scenario files and logs all carry
// degrees). Conversion to radians happens inside the functions that need it.
namespace hexpick {

inline constexpr double kPi = 3.14159265358979323846;

constexpr double deg_to_rad(double deg) { return deg * kPi / 180.0; }
constexpr double rad_to_deg(double rad) { return rad * 180.0 / kPi; }

// Wraps an angle to (-180, 180].
inline double wrap_deg(double deg) {
  double w = std::fmod(deg + 180.0, 360.0);
  if (w <= 0.0) w += 360.0;
  return w - 180.0;
}

// Wraps a gait phase to [0, 1).
inline double wrap_phase(double phase) {
  double w = phase - std::floor(phase);
  return (w >= 1.0) ? 0.0 : w;
}

}  // namespace hexpick
