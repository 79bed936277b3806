#include "hexpick/toe_trajectory.hpp"

#include <cmath>

#include "hexpick/angles.hpp"

namespace hexpick::gait {

ToePoint toe_position(double shaft_angle_deg, const ToeTrajectory& traj,
                      const BuehlerClock& clock) {
  const double sweep = clock.stance_sweep_deg;
  const double stance_start = clock.stance_center_deg - sweep / 2.0;

  // Offset from stance start, wrapped to [0, 360).
  double u = std::fmod(shaft_angle_deg - stance_start, 360.0);
  if (u < 0.0) u += 360.0;

  const double half = traj.stance_length_m / 2.0;
  ToePoint p;
  if (u <= sweep) {
    // Stance: toe slides backward along the ground segment.
    const double t = u / sweep;
    p.x_m = half - t * traj.stance_length_m;
    p.z_m = -traj.standing_height_m;
  } else {
    // Recovery: arched return, apex at mid-recovery.
    const double t = (u - sweep) / (360.0 - sweep);
    p.x_m = -half + t * traj.stance_length_m;
    p.z_m = -traj.standing_height_m + traj.clearance_m * std::sin(kPi * t);
  }
  return p;
}

}  // namespace hexpick::gait
