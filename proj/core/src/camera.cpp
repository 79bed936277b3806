#include "hexpick/camera.hpp"

#include <cmath>

#include "hexpick/angles.hpp"

namespace hexpick::perception {

CameraPose camera_pose(const CameraModel& camera, const sim::ChassisState& chassis) {
  const double pitch = deg_to_rad(chassis.pitch_deg);
  const double yaw = deg_to_rad(chassis.heading_deg);
  const double bx = camera.body_x_m;
  const double bz = camera.mount_height_m - camera.ref_standing_height_m;

  // Body offset rotated by chassis pitch (about the body Y axis), then yaw.
  const double fwd = bx * std::cos(pitch) - bz * std::sin(pitch);
  const double up = bx * std::sin(pitch) + bz * std::cos(pitch);

  CameraPose pose;
  pose.x_m = chassis.x_m + fwd * std::cos(yaw);
  pose.y_m = chassis.y_m + fwd * std::sin(yaw);
  pose.z_m = chassis.height_m + up;
  pose.yaw_deg = chassis.heading_deg;
  pose.pitch_deg = chassis.pitch_deg + camera.mount_pitch_deg;
  return pose;
}

geometry::SphericalTarget spherical_of_point(const CameraPose& pose, double x_m, double y_m,
                                             double z_m) {
  const double yaw = deg_to_rad(pose.yaw_deg);
  const double pitch = deg_to_rad(pose.pitch_deg);

  const double dx = x_m - pose.x_m;
  const double dy = y_m - pose.y_m;
  const double dz = z_m - pose.z_m;

  // World -> camera: undo yaw, then undo pitch.
  const double fx = dx * std::cos(yaw) + dy * std::sin(yaw);
  const double fy = -dx * std::sin(yaw) + dy * std::cos(yaw);
  const double cx = fx * std::cos(pitch) + dz * std::sin(pitch);
  const double cz = -fx * std::sin(pitch) + dz * std::cos(pitch);

  geometry::SphericalTarget t;
  t.azimuth_deg = rad_to_deg(-std::atan2(fy, cx));
  t.elevation_deg = rad_to_deg(std::atan2(cz, std::hypot(cx, fy)));
  t.distance_m = std::sqrt(dx * dx + dy * dy + dz * dz);
  return t;
}

void point_of_spherical(const CameraPose& pose, const geometry::SphericalTarget& t, double* x_m,
                        double* y_m, double* z_m) {
  const double a = deg_to_rad(t.azimuth_deg);
  const double e = deg_to_rad(t.elevation_deg);

  // Camera-frame ray (forward, left, up).
  const double cx = t.distance_m * std::cos(e) * std::cos(a);
  const double cy = -t.distance_m * std::cos(e) * std::sin(a);
  const double cz = t.distance_m * std::sin(e);

  const double pitch = deg_to_rad(pose.pitch_deg);
  const double yaw = deg_to_rad(pose.yaw_deg);
  const double fx = cx * std::cos(pitch) - cz * std::sin(pitch);
  const double fz = cx * std::sin(pitch) + cz * std::cos(pitch);

  *x_m = pose.x_m + fx * std::cos(yaw) - cy * std::sin(yaw);
  *y_m = pose.y_m + fx * std::sin(yaw) + cy * std::cos(yaw);
  *z_m = pose.z_m + fz;
}

}  // namespace hexpick::perception
