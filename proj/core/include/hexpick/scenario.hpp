#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "hexpick/camera.hpp"
#include "hexpick/controller.hpp"
#include "hexpick/geometry.hpp"
#include "hexpick/simulator.hpp"

namespace hexpick::scenario {

/// Everything needed to set up one episode: lawn bounds, robot start pose,
/// dandelion population, rig geometry and model parameters, and the seed.
/// Lengths are meters, angles degrees.
struct Scenario {
  int format_version = 1;
  double lawn_min_x = -1.0;
  double lawn_min_y = -3.0;
  double lawn_max_x = 6.0;
  double lawn_max_y = 3.0;
  double robot_x = 0.0;
  double robot_y = 0.0;
  double robot_heading_deg = 0.0;
  std::uint64_t seed = 0;
  bool noise = false;
  std::vector<sim::DandelionSpec> dandelions;
  geometry::BladeGeometry blade;
  perception::CameraModel camera;
  sim::MotionModel motion;
  gait::GaitParams params;
  control::ControllerConfig controller;
};

/// Parses the flat key/value scenario format:
///   format_version 1
///   lawn <xmin> <ymin> <xmax> <ymax>
///   robot <x> <y> <heading_deg>
///   seed <n>
///   noise <on|off>
///   blade <half_angle_deg> <blade_height_m> <vertex_offset_m>   (optional)
///   motion <stride_per_cycle> <min_turn_radius> <noise_sigma>   (optional)
///   controller <stop_distance> <max_overshoots> <max_attempts>  (optional)
///   dandelion <x> <y> <stem_radius_m> <height_m>                (repeated)
/// '#' starts a comment. Unknown keys and malformed values raise ParseError
/// naming the key.
Scenario parse_scenario(std::istream& in);
void write_scenario(const Scenario& s, std::ostream& out);

/// Enforces the cross-field invariants (dandelions inside the lawn, positive
/// radii/heights, valid blade angle...). Throws Error naming the field.
void validate(const Scenario& s);

/// World + simulator configuration assembled from a scenario.
sim::WorldState make_world(const Scenario& s);
sim::SimConfig make_sim_config(const Scenario& s);

}  // namespace hexpick::scenario
