#include "hexpick/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "hexpick/angles.hpp"
#include "hexpick/errors.hpp"

namespace hexpick::sim {

namespace {

constexpr double kMaxTurnValue = 0.3;
constexpr double kStraightEps = 1e-6;

std::uint64_t splitmix64(std::uint64_t& s) {
  s += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = s;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

}  // namespace

double dead_reckon_duration(double distance_m, const MotionModel& motion,
                            const gait::GaitParams& params) {
  if (distance_m < 0.0) {
    throw std::domain_error("dead_reckon_duration: distance must be nonnegative");
  }
  const double cycles_per_meter = 1.0 / motion.stride_per_cycle_m;
  return distance_m * cycles_per_meter / params.frequency_hz;
}

std::optional<double> turn_radius(double turn_value, const MotionModel& motion) {
  if (std::abs(turn_value) > kMaxTurnValue + 1e-12) {
    throw std::domain_error("turn_radius: |T| must be <= 0.3");
  }
  if (std::abs(turn_value) < kStraightEps) return std::nullopt;
  const double sign = turn_value < 0.0 ? -1.0 : 1.0;
  return sign * motion.min_turn_radius_m * kMaxTurnValue / std::abs(turn_value);
}

double turn_curvature(double turn_value, const MotionModel& motion) {
  if (std::abs(turn_value) > kMaxTurnValue + 1e-12) {
    throw std::domain_error("turn_curvature: |T| must be <= 0.3");
  }
  if (std::abs(turn_value) < kStraightEps) return 0.0;
  return -(turn_value / kMaxTurnValue) / motion.min_turn_radius_m;
}

World::World(WorldState initial, SimConfig config)
    : state_(std::move(initial)),
      config_(std::move(config)),
      swoop_table_(gait::swoop_plan(config_.clock, config_.toe)),
      rng_state_(state_.rng_seed ^ 0x5851f42d4c957f2dULL) {
  state_.robot.height_m = config_.toe.standing_height_m;
  state_.robot.pitch_deg = 0.0;
  if (config_.noise_enabled) {
    noise_multiplier_ = std::clamp(1.0 + config_.motion.stride_noise_sigma * normal_draw(),
                                   config_.motion.noise_clamp_min, config_.motion.noise_clamp_max);
  }
}

double World::uniform_draw() {
  return static_cast<double>(splitmix64(rng_state_) >> 11) * 0x1.0p-53;
}

double World::normal_draw() {
  double u1 = uniform_draw();
  while (u1 <= 0.0) u1 = uniform_draw();
  const double u2 = uniform_draw();
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
}

void World::refresh_noise(double new_phase) {
  if (std::floor(new_phase) > std::floor(gait_phase_) && config_.noise_enabled) {
    noise_multiplier_ = std::clamp(1.0 + config_.motion.stride_noise_sigma * normal_draw(),
                                   config_.motion.noise_clamp_min, config_.motion.noise_clamp_max);
  }
  gait_phase_ = new_phase;
}

void World::step(const Command& command, double dt) {
  if (dt <= 0.0) {
    throw std::domain_error("step: dt must be positive");
  }
  swoop_.just_finished = false;
  if (swoop_.active && command.kind != Command::Kind::PlayTable) {
    swoop_.active = false;  // playback aborted by a new command
  }

  switch (command.kind) {
    case Command::Kind::Idle:
      break;
    case Command::Kind::Walk:
      step_walk(command, dt);
      break;
    case Command::Kind::TurnInPlace:
      step_turn_in_place(command, dt);
      break;
    case Command::Kind::PlayTable:
      step_playback(dt);
      break;
  }
  state_.clock_s += dt;
}

void World::step_walk(const Command& command, double dt) {
  refresh_noise(gait_phase_ + config_.params.frequency_hz * dt);
  state_.robot.height_m = config_.toe.standing_height_m;
  state_.robot.pitch_deg = 0.0;

  const double speed = config_.motion.stride_per_cycle_m * config_.params.frequency_hz *
                       noise_multiplier_ * (command.direction < 0 ? -1.0 : 1.0);
  const double kappa = turn_curvature(command.turn_value, config_.motion);
  const double ds = speed * dt;
  const double heading = deg_to_rad(state_.robot.heading_deg);

  if (kappa == 0.0) {
    state_.robot.x_m += ds * std::cos(heading);
    state_.robot.y_m += ds * std::sin(heading);
  } else {
    const double dh = kappa * ds;
    state_.robot.x_m += (std::sin(heading + dh) - std::sin(heading)) / kappa;
    state_.robot.y_m -= (std::cos(heading + dh) - std::cos(heading)) / kappa;
    state_.robot.heading_deg += rad_to_deg(dh);
  }
}

void World::step_turn_in_place(const Command& command, double dt) {
  refresh_noise(gait_phase_ + config_.params.frequency_hz * dt);
  state_.robot.height_m = config_.toe.standing_height_m;
  state_.robot.pitch_deg = 0.0;

  const double omega_max = config_.motion.stride_per_cycle_m * config_.params.frequency_hz /
                           config_.motion.min_turn_radius_m;
  const double rate = -(command.turn_value / kMaxTurnValue) * omega_max * noise_multiplier_;
  state_.robot.heading_deg += rad_to_deg(rate * dt);
}

World::SupportPose World::support_pose(const gait::ShaftAngles& angles) const {
  const double mounts[3] = {config_.toe.mount_x_front_m, config_.toe.mount_x_mid_m,
                            config_.toe.mount_x_hind_m};
  const double shafts[3] = {angles.fl, angles.ml, angles.hl};

  double px[3], pz[3];
  for (int i = 0; i < 3; ++i) {
    const auto toe = gait::toe_position(shafts[i], config_.toe, config_.clock);
    px[i] = mounts[i] + toe.x_m;
    pz[i] = toe.z_m;
  }

  static constexpr int kPairs[3][2] = {{0, 1}, {0, 2}, {1, 2}};
  SupportPose best;
  double best_h = -std::numeric_limits<double>::infinity();
  for (const auto& pair : kPairs) {
    const int i = pair[0];
    const int j = pair[1];
    // A resting pair must straddle the chassis origin, or the pose tips over.
    if (px[i] * px[j] > 1e-9) continue;
    const double theta = std::atan((pz[j] - pz[i]) / (px[i] - px[j]));
    const double s = std::sin(theta);
    const double c = std::cos(theta);
    const double h = -(px[i] * s + pz[i] * c);
    const int k = 3 - i - j;
    const double third_clearance = h + px[k] * s + pz[k] * c;
    if (third_clearance >= -1e-9 && h > best_h) {
      best_h = h;
      best.height_m = h;
      best.pitch_deg = rad_to_deg(theta);
      best.pair[0] = i;
      best.pair[1] = j;
      best.offset[0] = px[i] * c - pz[i] * s;
      best.offset[1] = px[j] * c - pz[j] * s;
    }
  }
  if (!std::isfinite(best_h)) {
    // All candidates invalid (numerically collinear); rest on front+hind.
    const double theta = std::atan((pz[2] - pz[0]) / (px[0] - px[2]));
    best.height_m = -(px[0] * std::sin(theta) + pz[0] * std::cos(theta));
    best.pitch_deg = rad_to_deg(theta);
    best.pair[0] = 0;
    best.pair[1] = 2;
    best.offset[0] = px[0] * std::cos(theta) - pz[0] * std::sin(theta);
    best.offset[1] = px[2] * std::cos(theta) - pz[2] * std::sin(theta);
  }
  return best;
}

void World::vertex_position(double* x_m, double* y_m, double* z_m) const {
  const double theta = deg_to_rad(state_.robot.pitch_deg);
  const double xv = config_.blade.vertex_offset_m;
  const double zv = config_.blade.blade_height_m - config_.toe.standing_height_m;
  const double fwd = xv * std::cos(theta) - zv * std::sin(theta);
  const double heading = deg_to_rad(state_.robot.heading_deg);
  if (x_m) *x_m = state_.robot.x_m + fwd * std::cos(heading);
  if (y_m) *y_m = state_.robot.y_m + fwd * std::sin(heading);
  if (z_m) *z_m = state_.robot.height_m + xv * std::sin(theta) + zv * std::cos(theta);
}

void World::step_playback(double dt) {
  if (!swoop_.active) {
    swoop_.active = true;
    swoop_.elapsed_s = 0.0;
    swoop_.anchor = -1;
    swoop_.start_pose = state_.robot;
    swoop_.has_nadir = false;
  }
  swoop_.elapsed_s += dt;
  const double phase = std::min(swoop_.elapsed_s / config_.swoop_period_s, 1.0);
  const auto angles = swoop_table_.sample(phase * swoop_table_.duration());
  const auto pose = support_pose(angles);

  // Advance the chassis so the anchored support toe stays put in the world.
  double advance = 0.0;
  if (swoop_.anchor == pose.pair[0]) {
    advance = -(pose.offset[0] - swoop_.anchor_offset_m);
  } else if (swoop_.anchor == pose.pair[1]) {
    advance = -(pose.offset[1] - swoop_.anchor_offset_m);
  }
  // Prefer to keep the current anchor; otherwise re-anchor on the rear toe.
  if (swoop_.anchor != pose.pair[0] && swoop_.anchor != pose.pair[1]) {
    swoop_.anchor = pose.pair[1];
    swoop_.anchor_offset_m = pose.offset[1];
  } else if (swoop_.anchor == pose.pair[0]) {
    swoop_.anchor_offset_m = pose.offset[0];
  } else {
    swoop_.anchor_offset_m = pose.offset[1];
  }

  const double heading = deg_to_rad(state_.robot.heading_deg);
  state_.robot.x_m += advance * std::cos(heading);
  state_.robot.y_m += advance * std::sin(heading);
  state_.robot.height_m = pose.height_m;
  state_.robot.pitch_deg = pose.pitch_deg;

  double vx, vy, vz;
  vertex_position(&vx, &vy, &vz);
  if (!swoop_.has_nadir || vz < swoop_.nadir_vertex_z) {
    swoop_.has_nadir = true;
    swoop_.nadir_vertex_z = vz;
    swoop_.nadir_vertex_x = vx;
    swoop_.nadir_vertex_y = vy;
    swoop_.nadir_heading_deg = state_.robot.heading_deg;
  }

  if (phase >= 1.0) {
    swoop_.active = false;
    swoop_.just_finished = true;
    swoop_.completed_once = true;
  }
}

PickOutcome World::attempt_pick(const geometry::PickZone& zone) {
  if (!swoop_.completed_once || !swoop_.has_nadir) {
    throw Error("attempt_pick: requires a completed swoop");
  }

  std::size_t nearest = state_.dandelions.size();
  double nearest_dist = config_.pick_search_radius_m;
  for (std::size_t i = 0; i < state_.dandelions.size(); ++i) {
    const auto& d = state_.dandelions[i];
    if (d.state != DandelionState::Standing) continue;
    const double dist = std::hypot(d.x_m - swoop_.nadir_vertex_x, d.y_m - swoop_.nadir_vertex_y);
    if (dist <= nearest_dist) {
      nearest_dist = dist;
      nearest = i;
    }
  }
  if (nearest == state_.dandelions.size()) {
    throw Error("attempt_pick: no standing dandelion in range");
  }
  auto& target = state_.dandelions[nearest];

  PickOutcome outcome;
  outcome.dandelion_index = nearest;
  outcome.mode = geometry::cut_mode(target.height_m, config_.blade);

  const double heading = deg_to_rad(swoop_.nadir_heading_deg);
  const double dx = target.x_m - swoop_.nadir_vertex_x;
  const double dy = target.y_m - swoop_.nadir_vertex_y;
  const double fwd = dx * std::cos(heading) + dy * std::sin(heading);
  const double lat = -dx * std::sin(heading) + dy * std::cos(heading);
  const double sin_half = std::sin(deg_to_rad(config_.blade.half_angle_deg));
  const double depth = config_.wedge_max_half_width_m / sin_half;
  const bool in_wedge = fwd >= 0.0 && fwd <= depth &&
                        std::abs(lat) <= std::min(fwd * sin_half, config_.wedge_max_half_width_m);
  if (!in_wedge) {
    outcome.picked = false;
    outcome.reason = MissReason::OutOfWedge;
    return outcome;
  }

  const auto cam = perception::camera_pose(config_.camera, swoop_.start_pose);
  const auto seen = perception::spherical_of_point(cam, target.x_m, target.y_m, target.height_m);
  if (!geometry::in_pick_zone(seen.azimuth_deg, seen.elevation_deg, zone)) {
    outcome.picked = false;
    outcome.reason = MissReason::NotInZoneAtStart;
    return outcome;
  }

  outcome.picked = true;
  target.state = DandelionState::Picked;
  return outcome;
}

}  // namespace hexpick::sim
