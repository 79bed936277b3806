#pragma once

namespace hexpick::sim {

/// Planar robot pose plus height and pitch. x/y are world coordinates in
/// meters, heading is degrees counterclockwise from +x, height is the chassis
/// origin above ground, pitch is positive nose-up.
struct ChassisState {
  double x_m = 0.0;
  double y_m = 0.0;
  double heading_deg = 0.0;
  double height_m = 0.14;
  double pitch_deg = 0.0;
};

}  // namespace hexpick::sim
