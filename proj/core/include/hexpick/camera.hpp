#pragma once

#include "hexpick/chassis.hpp"
#include "hexpick/geometry.hpp"

namespace hexpick::perception {

/// RGB-D camera intrinsics and rig placement. The camera sits body_x meters
/// forward of the chassis origin, which puts the blade vertex mount_offset
/// meters in front of it (vertex_offset = body_x + mount_offset).
/// mount_height is the optical center's height above ground in the standing
/// pose, measured with the chassis origin at ref_standing_height.
struct CameraModel {
  double hfov_deg = 54.0;
  double vfov_deg = 40.0;
  int width = 640;
  int height = 480;
  double mount_offset_m = 0.20;       // forward distance to the blade vertex
  double mount_height_m = 0.12;       // above ground, standing pose
  double mount_pitch_deg = -10.0;     // tilted down toward the ground targets
  double body_x_m = 0.15;             // forward of the chassis origin
  double ref_standing_height_m = 0.14;
};

/// Camera optical-center pose in the world: position plus yaw/pitch of the
/// optical axis.
struct CameraPose {
  double x_m = 0.0;
  double y_m = 0.0;
  double z_m = 0.0;
  double yaw_deg = 0.0;
  double pitch_deg = 0.0;
};

CameraPose camera_pose(const CameraModel& camera, const sim::ChassisState& chassis);

/// Spherical coordinates of a world point as seen from the camera. Azimuth is
/// positive to the right of the optical axis, elevation positive above it.
geometry::SphericalTarget spherical_of_point(const CameraPose& pose, double x_m, double y_m,
                                             double z_m);

/// World position at the given spherical coordinates from the camera
/// (inverse of spherical_of_point).
void point_of_spherical(const CameraPose& pose, const geometry::SphericalTarget& t, double* x_m,
                        double* y_m, double* z_m);

}  // namespace hexpick::perception
