#include "hexpick/controller.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexpick/angles.hpp"

namespace hexpick::control {

namespace {

sim::Command null_command() { return sim::Command{sim::Command::Kind::Idle, 1, 0.0}; }

double steering_turn_value(const geometry::SphericalTarget& target,
                           const ControllerConfig& config) {
  if (config.policy == SteeringPolicy::Calibrated) {
    return gait::steer_turn_value_from_azimuth(target.azimuth_deg, config.calibration);
  }
  // Arc-solver policy: fit the arc through the target's horizontal range.
  const double range = target.distance_m * std::cos(deg_to_rad(target.elevation_deg));
  try {
    const auto sol = gait::turn_value_from_steer_param(
        target.azimuth_deg, range, config.params, [&config](double turn) {
          const auto radius = sim::turn_radius(turn, config.motion);
          return radius ? std::abs(*radius) : std::numeric_limits<double>::infinity();
        });
    return sol.turn_value;
  } catch (const std::domain_error&) {
    // Required radius tighter than the gait can produce: clamp.
    return target.azimuth_deg < 0.0 ? -0.3 : 0.3;
  }
}

void enter_steer_walk(ControllerState& state) {
  state.mode = Mode::SteerWalk;
  state.segment_overshoots = 0;
  state.lost_ticks = 0;
}

void enter_acquire(ControllerState& state) {
  state.mode = Mode::Acquire;
  state.acquire_ticks = 0;
  state.lost_ticks = 0;
  if (state.last_target) {
    state.acquire_direction = state.last_target->azimuth_deg < 0.0 ? -1 : 1;
  }
}

}  // namespace

const char* mode_name(Mode mode) {
  switch (mode) {
    case Mode::Acquire: return "Acquire";
    case Mode::SteerWalk: return "SteerWalk";
    case Mode::Inspect: return "Inspect";
    case Mode::Swoop: return "Swoop";
    case Mode::BackOff: return "BackOff";
    case Mode::StraightApproach: return "StraightApproach";
    case Mode::Done: return "Done";
    case Mode::Failed: return "Failed";
  }
  return "?";
}

bool detect_overshoot(ControllerState& state, const geometry::SphericalTarget& obs) {
  if (!state.last_target) return false;
  const double prev = state.last_target->azimuth_deg;
  const double now = obs.azimuth_deg;
  const bool flipped = (prev > 0.0 && now < 0.0) || (prev < 0.0 && now > 0.0);
  if (flipped) {
    ++state.overshoot_count;
    ++state.segment_overshoots;
  }
  return flipped;
}

sim::Command tick(ControllerState& state, const std::optional<geometry::SphericalTarget>& obs,
                  const ControllerConfig& config) {
  sim::Command cmd = null_command();

  switch (state.mode) {
    case Mode::Acquire: {
      if (obs) {
        enter_steer_walk(state);
        state.last_target = obs;
        cmd = {sim::Command::Kind::Walk, 1, steering_turn_value(*obs, config)};
        break;
      }
      if (++state.acquire_ticks > config.acquire_sweep_ticks) {
        state.acquire_ticks = 0;
        state.acquire_direction = -state.acquire_direction;
      }
      cmd = {sim::Command::Kind::TurnInPlace, 1, 0.3 * state.acquire_direction};
      break;
    }

    case Mode::SteerWalk: {
      if (!obs) {
        if (++state.lost_ticks > config.lost_target_ticks) {
          enter_acquire(state);
          cmd = {sim::Command::Kind::TurnInPlace, 1, 0.3 * state.acquire_direction};
        } else {
          cmd = state.last_command;  // hold the last steering command briefly
        }
        break;
      }
      state.lost_ticks = 0;
      detect_overshoot(state, *obs);
      state.last_target = obs;
      if (obs->distance_m <= config.stop_distance_m) {
        state.mode = Mode::Inspect;
        cmd = null_command();
        break;
      }
      if (state.segment_overshoots > config.max_overshoots) {
        // Successive overshooting arcs failed to line the target up; fall
        // back to the back-off reapproach.
        state.mode = Mode::BackOff;
        cmd = {sim::Command::Kind::Walk, -1,
               obs->azimuth_deg < 0.0 ? config.backoff_turn_value : -config.backoff_turn_value};
        break;
      }
      cmd = {sim::Command::Kind::Walk, 1, steering_turn_value(*obs, config)};
      break;
    }

    case Mode::Inspect: {
      if (!obs) {
        if (++state.lost_ticks > config.lost_target_ticks) {
          enter_acquire(state);
        }
        cmd = null_command();
        break;
      }
      state.lost_ticks = 0;
      state.last_target = obs;
      if (geometry::in_pick_zone(obs->azimuth_deg, obs->elevation_deg, config.pick_zone)) {
        state.mode = Mode::Swoop;
        cmd = {sim::Command::Kind::PlayTable, 1, 0.0};
      } else {
        state.mode = Mode::BackOff;
        cmd = {sim::Command::Kind::Walk, -1,
               obs->azimuth_deg < 0.0 ? config.backoff_turn_value : -config.backoff_turn_value};
      }
      break;
    }

    case Mode::Swoop:
      cmd = {sim::Command::Kind::PlayTable, 1, 0.0};
      break;

    case Mode::BackOff: {
      if (!obs) {
        // A target lost here is usually too close to frame; backing up is
        // what brings it back, so keep reversing much longer than the usual
        // lost-target allowance.
        if (++state.lost_ticks > config.backoff_blind_ticks) {
          enter_acquire(state);
          cmd = {sim::Command::Kind::TurnInPlace, 1, 0.3 * state.acquire_direction};
        } else if (state.last_command.kind == sim::Command::Kind::Walk &&
                   state.last_command.direction < 0) {
          cmd = state.last_command;
        } else {
          cmd = {sim::Command::Kind::Walk, -1, 0.0};
        }
        break;
      }
      state.lost_ticks = 0;
      state.last_target = obs;
      const bool in_zone =
          geometry::in_pick_zone(obs->azimuth_deg, obs->elevation_deg, config.pick_zone);
      if (in_zone && obs->distance_m >= config.reapproach_distance_m) {
        // Target back in the zone with room to approach: go at it dead ahead.
        state.mode = Mode::StraightApproach;
        cmd = {sim::Command::Kind::Walk, 1, 0.0};
      } else if (in_zone) {
        // Lined up but still too close; back straight to keep it centered.
        cmd = {sim::Command::Kind::Walk, -1, 0.0};
      } else {
        cmd = {sim::Command::Kind::Walk, -1,
               obs->azimuth_deg < 0.0 ? config.backoff_turn_value : -config.backoff_turn_value};
      }
      break;
    }

    case Mode::StraightApproach: {
      if (!obs) {
        if (++state.lost_ticks > config.lost_target_ticks) {
          enter_acquire(state);
          cmd = {sim::Command::Kind::TurnInPlace, 1, 0.3 * state.acquire_direction};
        } else {
          cmd = state.last_command;
        }
        break;
      }
      state.lost_ticks = 0;
      state.last_target = obs;
      if (obs->distance_m <= config.stop_distance_m) {
        state.mode = Mode::Inspect;
        cmd = null_command();
      } else {
        cmd = {sim::Command::Kind::Walk, 1, 0.0};
      }
      break;
    }

    case Mode::Done:
    case Mode::Failed:
      cmd = null_command();
      break;
  }

  state.last_command = cmd;
  return cmd;
}

void report_pick_outcome(ControllerState& state, const sim::PickOutcome& outcome,
                         const ControllerConfig& config) {
  ++state.attempts;
  if (outcome.picked) {
    state.mode = Mode::Done;
    return;
  }
  if (state.attempts >= config.max_attempts) {
    state.mode = Mode::Failed;
    return;
  }
  state.mode = Mode::BackOff;
  state.lost_ticks = 0;
}

}  // namespace hexpick::control
