#include "hexpick/episode.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hexpick/angles.hpp"
#include "hexpick/errors.hpp"
#include "hexpick/perception.hpp"

namespace hexpick::episode {

namespace {

scenario::Scenario with_options(const scenario::Scenario& s, const EpisodeOptions& options) {
  scenario::Scenario out = s;
  if (options.seed) out.seed = *options.seed;
  if (options.noise) out.noise = *options.noise;
  out.controller.policy = options.policy;
  out.controller.params = out.params;
  out.controller.motion = out.motion;
  return out;
}

}  // namespace

EpisodeReport run_episode(const scenario::Scenario& input, const EpisodeOptions& options,
                          sim::TrajectoryLog* log) {
  const scenario::Scenario s = with_options(input, options);
  scenario::validate(s);

  sim::World world(scenario::make_world(s), scenario::make_sim_config(s));
  control::ControllerState ctrl;
  const control::ControllerConfig& cfg = s.controller;

  EpisodeReport report;
  report.seed = s.seed;

  const int control_every = std::max(1, static_cast<int>(std::lround(options.control_period_s /
                                                                     options.sim_dt_s)));
  sim::Command command;  // Idle until the first control tick
  std::optional<geometry::SphericalTarget> obs;
  control::Mode prev_mode = ctrl.mode;
  double prev_x = world.state().robot.x_m;
  double prev_y = world.state().robot.y_m;

  const long max_ticks = static_cast<long>(std::ceil(options.timeout_s / options.sim_dt_s));
  int ticks_until_control = 0;
  for (long tick = 0; tick < max_ticks; ++tick) {
    const bool control_tick = ticks_until_control == 0;
    if (control_tick) {
      ticks_until_control = control_every;
      const auto frame =
          perception::render_frame(world.state(), s.camera, world.state().robot);
      obs = perception::detect_dandelion(frame, s.camera);
      if (obs && !report.first_detection) {
        report.first_detection = obs;
        try {
          report.first_detection_cylindrical =
              geometry::spherical_to_cylindrical(*obs, options.gamma);
        } catch (const std::domain_error&) {
          // degenerate elevation/azimuth: leave the cylindrical echo empty
        }
      }
      command = control::tick(ctrl, obs, cfg);
    }
    --ticks_until_control;

    if (ctrl.mode == control::Mode::BackOff && prev_mode != control::Mode::BackOff) {
      ++report.backoff_count;
    }
    prev_mode = ctrl.mode;
    // The row must record the mode and command that drive this tick, so that
    // a replay can reconstruct the exact command stream.
    const control::Mode mode_at_step = ctrl.mode;
    const double turn_at_step = command.turn_value;

    world.step(command, options.sim_dt_s);

    const auto& pose = world.state().robot;
    report.path_length_m += std::hypot(pose.x_m - prev_x, pose.y_m - prev_y);
    prev_x = pose.x_m;
    prev_y = pose.y_m;

    if (log) {
      sim::LogRow row;
      row.t_s = world.state().clock_s;
      row.pose = pose;
      row.state = control::mode_name(mode_at_step);
      row.turn_value = turn_at_step;
      row.detection = control_tick ? obs : std::nullopt;
      log->append(row);
    }

    if (world.swoop_just_finished()) {
      const auto outcome = world.attempt_pick(cfg.pick_zone);
      control::report_pick_outcome(ctrl, outcome, cfg);
      if (outcome.picked) {
        report.cut_mode = outcome.mode;
      } else if (ctrl.mode == control::Mode::Failed) {
        world.mutable_state().dandelions[outcome.dandelion_index].state =
            sim::DandelionState::Missed;
      }
      // Re-synchronize the control cadence on the completion event so the
      // next tick is a decision tick (no idle gap rows between the last
      // Swoop row and the next mode's commands).
      command = sim::Command{};
      ticks_until_control = 0;
    }

    if (ctrl.mode == control::Mode::Done || ctrl.mode == control::Mode::Failed) {
      report.time_to_pick_s = world.state().clock_s;
      break;
    }
  }

  report.picked = ctrl.mode == control::Mode::Done;
  if (!report.picked && report.time_to_pick_s == 0.0) {
    report.time_to_pick_s = world.state().clock_s;  // timed out
  }
  report.overshoot_count = ctrl.overshoot_count;
  report.attempts = ctrl.attempts;
  report.final_pose = world.state().robot;
  return report;
}

sim::ChassisState replay_log(const scenario::Scenario& input, const EpisodeOptions& options,
                             const sim::TrajectoryLog& log) {
  const scenario::Scenario s = with_options(input, options);
  sim::World world(scenario::make_world(s), scenario::make_sim_config(s));

  for (const auto& row : log.rows()) {
    sim::Command cmd;
    if (row.state == "Acquire") {
      cmd = {sim::Command::Kind::TurnInPlace, 1, row.turn_value};
    } else if (row.state == "SteerWalk" || row.state == "StraightApproach") {
      cmd = {sim::Command::Kind::Walk, 1, row.turn_value};
    } else if (row.state == "BackOff") {
      cmd = {sim::Command::Kind::Walk, -1, row.turn_value};
    } else if (row.state == "Swoop") {
      cmd = {sim::Command::Kind::PlayTable, 1, 0.0};
    } else {
      cmd = {sim::Command::Kind::Idle, 1, 0.0};  // Inspect and terminal modes
    }
    world.step(cmd, options.sim_dt_s);
  }
  return world.state().robot;
}

BatchReport aggregate(std::vector<BatchEpisode> episodes) {
  BatchReport batch;
  batch.episodes = std::move(episodes);

  std::size_t completed = 0;
  std::size_t picked = 0;
  double time_sum = 0.0;
  double path_sum = 0.0;
  for (const auto& e : batch.episodes) {
    if (!e.report) continue;
    ++completed;
    path_sum += e.report->path_length_m;
    if (e.report->picked) {
      ++picked;
      time_sum += e.report->time_to_pick_s;
    }
  }
  batch.pick_rate = completed > 0 ? static_cast<double>(picked) / completed : 0.0;
  batch.mean_time_to_pick_s = picked > 0 ? time_sum / picked : 0.0;
  batch.mean_path_length_m = completed > 0 ? path_sum / completed : 0.0;
  return batch;
}

namespace {

// Constant-T walk toward a dandelion on the calibration arc; true iff the
// target's azimuth sign flips before the robot reaches stop distance.
bool overshoots(const scenario::Scenario& s, double turn_value, double stop_distance_m,
                double dt) {
  sim::World world(scenario::make_world(s), scenario::make_sim_config(s));
  const auto& d = s.dandelions.front();
  const auto cam0 = perception::camera_pose(s.camera, world.state().robot);
  double prev_az =
      perception::spherical_of_point(cam0, d.x_m, d.y_m, d.height_m).azimuth_deg;
  const sim::Command cmd{sim::Command::Kind::Walk, 1, turn_value};

  const long max_ticks = static_cast<long>(120.0 / dt);
  for (long i = 0; i < max_ticks; ++i) {
    world.step(cmd, dt);
    const auto cam = perception::camera_pose(s.camera, world.state().robot);
    const auto seen = perception::spherical_of_point(cam, d.x_m, d.y_m, d.height_m);
    if (seen.distance_m <= stop_distance_m) return false;
    if ((prev_az > 0.0 && seen.azimuth_deg < 0.0) || (prev_az < 0.0 && seen.azimuth_deg > 0.0)) {
      return true;
    }
    prev_az = seen.azimuth_deg;
  }
  return false;
}

}  // namespace

gait::CalibrationTable calibrate_steering(double distance_m, const std::vector<double>& azimuths,
                                          const scenario::Scenario& base,
                                          double overshoot_margin) {
  if (distance_m <= base.controller.stop_distance_m) {
    throw Error("calibrate_steering: distance must exceed the stop distance");
  }
  gait::CalibrationTable table;
  constexpr double kStep = 0.005;

  for (double azimuth : azimuths) {
    if (azimuth < 0.0) {
      throw Error("calibrate_steering: azimuth grid must be nonnegative (the table is "
                  "odd-extended on lookup)");
    }
    if (!table.points.empty() && azimuth <= table.points.back().first) {
      throw Error("calibrate_steering: azimuth grid must be ascending");
    }
    if (azimuth == 0.0) {
      table.points.emplace_back(0.0, 0.0);
      continue;
    }

    scenario::Scenario s = base;
    s.noise = false;
    s.dandelions.clear();
    // Place the target on the arc: at `distance_m` from the camera along the
    // (azimuth, elevation-of-head) ray.
    sim::World probe(scenario::make_world(s), scenario::make_sim_config(s));
    const auto cam = perception::camera_pose(s.camera, probe.state().robot);
    sim::DandelionSpec d;
    d.height_m = 0.10;
    const double dz = d.height_m - cam.z_m;
    const double horizontal = std::sqrt(std::max(distance_m * distance_m - dz * dz, 1e-12));
    const double bearing = deg_to_rad(cam.yaw_deg) - deg_to_rad(azimuth);
    d.x_m = cam.x_m + horizontal * std::cos(bearing);
    d.y_m = cam.y_m + horizontal * std::sin(bearing);
    s.dandelions.push_back(d);
    s.lawn_min_x = std::min(s.lawn_min_x, d.x_m - 1.0);
    s.lawn_max_x = std::max(s.lawn_max_x, d.x_m + 1.0);
    s.lawn_min_y = std::min(s.lawn_min_y, d.y_m - 1.0);
    s.lawn_max_y = std::max(s.lawn_max_y, d.y_m + 1.0);

    double found = 0.3;  // clamp when nothing overshoots
    for (double t = kStep; t <= 0.3 + 1e-12; t += kStep) {
      if (overshoots(s, t, base.controller.stop_distance_m, 0.05)) {
        found = std::min(t + overshoot_margin, 0.3);
        break;
      }
    }
    table.points.emplace_back(azimuth, found);
  }
  return table;
}

}  // namespace hexpick::episode
