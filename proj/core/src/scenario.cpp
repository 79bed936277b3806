#include "hexpick/scenario.hpp"

#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hexpick/errors.hpp"
#include "number_format.hpp"

namespace hexpick::scenario {

namespace {

template <typename T>
T parse_value(std::istringstream& in, const std::string& key, std::size_t lineno) {
  T v;
  if (!(in >> v)) {
    throw ParseError("scenario: bad or missing value for '" + key + "'", lineno);
  }
  return v;
}

}  // namespace

Scenario parse_scenario(std::istream& in) {
  Scenario s;
  bool version_seen = false;
  std::string line;
  std::size_t lineno = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream row(line);
    std::string key;
    if (!(row >> key)) continue;

    if (key == "format_version") {
      s.format_version = parse_value<int>(row, key, lineno);
      if (s.format_version != 1) {
        throw ParseError("scenario: unsupported format_version " +
                             std::to_string(s.format_version),
                         lineno);
      }
      version_seen = true;
    } else if (key == "lawn") {
      s.lawn_min_x = parse_value<double>(row, key, lineno);
      s.lawn_min_y = parse_value<double>(row, key, lineno);
      s.lawn_max_x = parse_value<double>(row, key, lineno);
      s.lawn_max_y = parse_value<double>(row, key, lineno);
    } else if (key == "robot") {
      s.robot_x = parse_value<double>(row, key, lineno);
      s.robot_y = parse_value<double>(row, key, lineno);
      s.robot_heading_deg = parse_value<double>(row, key, lineno);
    } else if (key == "seed") {
      s.seed = parse_value<std::uint64_t>(row, key, lineno);
    } else if (key == "noise") {
      const auto v = parse_value<std::string>(row, key, lineno);
      if (v == "on") {
        s.noise = true;
      } else if (v == "off") {
        s.noise = false;
      } else {
        throw ParseError("scenario: noise must be 'on' or 'off'", lineno);
      }
    } else if (key == "blade") {
      s.blade.half_angle_deg = parse_value<double>(row, key, lineno);
      s.blade.blade_height_m = parse_value<double>(row, key, lineno);
      s.blade.vertex_offset_m = parse_value<double>(row, key, lineno);
    } else if (key == "camera") {
      s.camera.hfov_deg = parse_value<double>(row, key, lineno);
      s.camera.vfov_deg = parse_value<double>(row, key, lineno);
      s.camera.width = parse_value<int>(row, key, lineno);
      s.camera.height = parse_value<int>(row, key, lineno);
    } else if (key == "camera_mount") {
      s.camera.mount_offset_m = parse_value<double>(row, key, lineno);
      s.camera.mount_height_m = parse_value<double>(row, key, lineno);
      s.camera.mount_pitch_deg = parse_value<double>(row, key, lineno);
      s.camera.body_x_m = parse_value<double>(row, key, lineno);
    } else if (key == "motion") {
      s.motion.stride_per_cycle_m = parse_value<double>(row, key, lineno);
      s.motion.min_turn_radius_m = parse_value<double>(row, key, lineno);
      s.motion.stride_noise_sigma = parse_value<double>(row, key, lineno);
    } else if (key == "controller") {
      s.controller.stop_distance_m = parse_value<double>(row, key, lineno);
      s.controller.max_overshoots = parse_value<int>(row, key, lineno);
      s.controller.max_attempts = parse_value<int>(row, key, lineno);
    } else if (key == "dandelion") {
      sim::DandelionSpec d;
      d.x_m = parse_value<double>(row, key, lineno);
      d.y_m = parse_value<double>(row, key, lineno);
      d.stem_radius_m = parse_value<double>(row, key, lineno);
      d.height_m = parse_value<double>(row, key, lineno);
      s.dandelions.push_back(d);
    } else {
      throw ParseError("scenario: unknown key '" + key + "'", lineno);
    }
  }
  if (!version_seen) {
    throw ParseError("scenario: missing format_version", lineno == 0 ? 1 : lineno);
  }
  validate(s);
  return s;
}

void write_scenario(const Scenario& s, std::ostream& out) {
  using detail::format_double;
  out << "format_version " << s.format_version << "\n";
  out << "lawn " << format_double(s.lawn_min_x) << ' ' << format_double(s.lawn_min_y) << ' '
      << format_double(s.lawn_max_x) << ' ' << format_double(s.lawn_max_y) << "\n";
  out << "robot " << format_double(s.robot_x) << ' ' << format_double(s.robot_y) << ' '
      << format_double(s.robot_heading_deg) << "\n";
  out << "seed " << s.seed << "\n";
  out << "noise " << (s.noise ? "on" : "off") << "\n";
  out << "blade " << format_double(s.blade.half_angle_deg) << ' '
      << format_double(s.blade.blade_height_m) << ' ' << format_double(s.blade.vertex_offset_m)
      << "\n";
  out << "camera " << format_double(s.camera.hfov_deg) << ' ' << format_double(s.camera.vfov_deg)
      << ' ' << s.camera.width << ' ' << s.camera.height << "\n";
  out << "camera_mount " << format_double(s.camera.mount_offset_m) << ' '
      << format_double(s.camera.mount_height_m) << ' ' << format_double(s.camera.mount_pitch_deg)
      << ' ' << format_double(s.camera.body_x_m) << "\n";
  out << "motion " << format_double(s.motion.stride_per_cycle_m) << ' '
      << format_double(s.motion.min_turn_radius_m) << ' '
      << format_double(s.motion.stride_noise_sigma) << "\n";
  out << "controller " << format_double(s.controller.stop_distance_m) << ' '
      << s.controller.max_overshoots << ' ' << s.controller.max_attempts << "\n";
  for (const auto& d : s.dandelions) {
    out << "dandelion " << format_double(d.x_m) << ' ' << format_double(d.y_m) << ' '
        << format_double(d.stem_radius_m) << ' ' << format_double(d.height_m) << "\n";
  }
}

void validate(const Scenario& s) {
  if (s.lawn_min_x >= s.lawn_max_x || s.lawn_min_y >= s.lawn_max_y) {
    throw Error("scenario: lawn bounds must satisfy min < max");
  }
  if (s.blade.half_angle_deg <= 0.0 || s.blade.half_angle_deg >= 90.0) {
    throw Error("scenario: blade half_angle must be in (0, 90)");
  }
  if (s.blade.blade_height_m < 0.0) {
    throw Error("scenario: blade_height must be nonnegative");
  }
  if (s.camera.hfov_deg <= 0.0 || s.camera.vfov_deg <= 0.0 || s.camera.width <= 0 ||
      s.camera.height <= 0) {
    throw Error("scenario: camera fov and resolution must be positive");
  }
  if (s.motion.stride_per_cycle_m <= 0.0) {
    throw Error("scenario: motion stride_per_cycle must be positive");
  }
  if (s.motion.min_turn_radius_m <= 0.0) {
    throw Error("scenario: motion min_turn_radius must be positive");
  }
  if (s.controller.stop_distance_m <= 0.0) {
    throw Error("scenario: controller stop_distance must be positive");
  }
  for (std::size_t i = 0; i < s.dandelions.size(); ++i) {
    const auto& d = s.dandelions[i];
    const std::string which = "dandelion #" + std::to_string(i + 1);
    if (d.x_m < s.lawn_min_x || d.x_m > s.lawn_max_x || d.y_m < s.lawn_min_y ||
        d.y_m > s.lawn_max_y) {
      throw Error("scenario: " + which + " lies outside the lawn bounds");
    }
    if (d.stem_radius_m <= 0.0) {
      throw Error("scenario: " + which + " stem_radius must be positive");
    }
    if (d.height_m <= 0.0) {
      throw Error("scenario: " + which + " height must be positive");
    }
  }
}

sim::WorldState make_world(const Scenario& s) {
  sim::WorldState world;
  world.robot.x_m = s.robot_x;
  world.robot.y_m = s.robot_y;
  world.robot.heading_deg = s.robot_heading_deg;
  world.dandelions = s.dandelions;
  world.rng_seed = s.seed;
  return world;
}

sim::SimConfig make_sim_config(const Scenario& s) {
  sim::SimConfig config;
  config.motion = s.motion;
  config.params = s.params;
  config.blade = s.blade;
  config.camera = s.camera;
  config.noise_enabled = s.noise;
  return config;
}

}  // namespace hexpick::scenario
