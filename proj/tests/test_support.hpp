#pragma once

#include <cmath>
#include <cstdint>

#include "hexpick/camera.hpp"
#include "hexpick/scenario.hpp"
#include "hexpick/simulator.hpp"

namespace hexpick::testsupport {

// Places a single dandelion whose head sits at exactly (azimuth, line-of-sight
// distance) from the camera of a robot parked at the origin. The elevation is
// solved so the head lands at the requested height above ground.
inline scenario::Scenario arc_scenario(double azimuth_deg, double distance_m,
                                       std::uint64_t seed = 7, bool noise = false,
                                       double head_height_m = 0.10) {
  scenario::Scenario s;
  s.seed = seed;
  s.noise = noise;
  s.lawn_min_x = -2.0;
  s.lawn_max_x = 8.0;
  s.lawn_min_y = -5.0;
  s.lawn_max_y = 5.0;

  sim::ChassisState at_start;
  const auto cam = perception::camera_pose(s.camera, at_start);

  // world z of the ray endpoint: A cos(e) + B sin(e) = k
  const double pitch = cam.pitch_deg * M_PI / 180.0;
  const double a = azimuth_deg * M_PI / 180.0;
  const double A = std::cos(a) * std::sin(pitch);
  const double B = std::cos(pitch);
  const double k = (head_height_m - cam.z_m) / distance_m;
  const double R = std::hypot(A, B);
  const double e = std::asin(k / R) - std::atan2(A, B);

  geometry::SphericalTarget t{azimuth_deg, e * 180.0 / M_PI, distance_m};
  double x, y, z;
  perception::point_of_spherical(cam, t, &x, &y, &z);

  sim::DandelionSpec d;
  d.x_m = x;
  d.y_m = y;
  d.height_m = head_height_m;
  s.dandelions.push_back(d);
  return s;
}

}  // namespace hexpick::testsupport
