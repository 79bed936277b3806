#pragma once

#include <optional>
#include <string>

#include "hexpick/gait.hpp"
#include "hexpick/geometry.hpp"
#include "hexpick/simulator.hpp"

namespace hexpick::control {

enum class Mode {
  Acquire,
  SteerWalk,
  Inspect,
  Swoop,
  BackOff,
  StraightApproach,
  Done,
  Failed,
};

const char* mode_name(Mode mode);

enum class SteeringPolicy { Calibrated, ArcSolver };

struct ControllerConfig {
  geometry::PickZone pick_zone;
  double stop_distance_m = 0.20;
  int max_overshoots = 5;   // per steering segment, before falling back to 4.2
  int max_attempts = 3;
  double backoff_turn_value = 0.3;
  double reapproach_distance_m = 0.45;  // back off at least this far before re-approaching
  int lost_target_ticks = 5;
  int backoff_blind_ticks = 40;  // keep backing this long when the target drops out of view
  int acquire_sweep_ticks = 80;  // control ticks per in-place sweep direction
  SteeringPolicy policy = SteeringPolicy::Calibrated;
  gait::CalibrationTable calibration = gait::default_calibration();
  gait::GaitParams params;
  sim::MotionModel motion;  // arc-radius map for the arc-solver policy
};

struct ControllerState {
  Mode mode = Mode::Acquire;
  std::optional<geometry::SphericalTarget> last_target;
  int overshoot_count = 0;          // total, for reports
  int segment_overshoots = 0;       // within the current SteerWalk segment
  int attempts = 0;
  int lost_ticks = 0;
  int acquire_ticks = 0;
  int acquire_direction = 1;
  sim::Command last_command;
};

/// One control step. Implements the picking processes: Acquire rotates in
/// place until a target appears; SteerWalk continuously re-steers from the
/// azimuth while watching the distance; at stop_distance the target is
/// inspected against the pick zone; in the zone the swoop plays, otherwise
/// the robot backs off on the tightest arc until the target re-enters the
/// zone and then approaches in a straight line. Terminal modes (Done, Failed)
/// emit the null command forever.
sim::Command tick(ControllerState& state, const std::optional<geometry::SphericalTarget>& obs,
                  const ControllerConfig& config);

/// True iff the azimuth sign strictly flipped between the stored observation
/// and this one (an exact zero is not a flip). Updates the overshoot
/// counters. Only meaningful while steering.
bool detect_overshoot(ControllerState& state, const geometry::SphericalTarget& obs);

/// Feeds a finished swoop's outcome back into the machine: Picked ends the
/// episode (Done); a miss consumes an attempt and triggers the back-off
/// reapproach, or Failed once max_attempts is exhausted.
void report_pick_outcome(ControllerState& state, const sim::PickOutcome& outcome,
                         const ControllerConfig& config);

}  // namespace hexpick::control
