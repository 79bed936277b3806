#pragma once

#include "hexpick/gait.hpp"

namespace hexpick::gait {

/// Closed toe curve in the body frame (x forward, z up, origin at the chassis
/// center), of the rounded-profile kind: a flat low segment while the shaft
/// sweeps through stance, and an arched recovery that lifts the toe by
/// clearance and returns it to the stance start. Leg pairs share the shape;
/// mount_x_* give each pair's fore-aft mount position on the chassis.
struct ToeTrajectory {
  double stance_length_m = 1.0 / 6.0;  // chord of the ground segment
  double clearance_m = 0.06;           // recovery apex lift above the ground segment
  double standing_height_m = 0.14;     // chassis height when a stance toe is grounded
  double mount_x_front_m = 0.22;
  double mount_x_mid_m = 0.0;
  double mount_x_hind_m = -0.22;
};

struct ToePoint {
  double x_m = 0.0;
  double z_m = 0.0;
};

/// Toe position for a shaft angle, relative to the leg mount. The curve is
/// closed and 360-periodic: the stance segment (the clock's slow window) maps
/// to the flat low portion traversed back-to-front, and the recovery maps to
/// the arch. The clock supplies where the stance window sits in shaft angle.
ToePoint toe_position(double shaft_angle_deg, const ToeTrajectory& traj,
                      const BuehlerClock& clock);

}  // namespace hexpick::gait
