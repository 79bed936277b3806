#pragma once

namespace hexpick::geometry {

/// Target location as seen from the camera, in spherical coordinates.
/// Azimuth is positive when the target is to the robot's right, elevation is
/// positive above the optical axis, distance is along the line of sight.
struct SphericalTarget {
  double azimuth_deg = 0.0;
  double elevation_deg = 0.0;
  double distance_m = 0.0;
};

/// Cylindrical form of a target: horizontal range r, height z, and theta
/// (always equal to the source azimuth).
struct CylindricalTarget {
  double r_m = 0.0;
  double z_m = 0.0;
  double theta_deg = 0.0;
};

/// V-blade cutting appendage geometry. half_angle is half the interior angle
/// of the V; blade_height is the blade edge's height above ground in the
/// standing pose; vertex_offset is the vertex position forward of the chassis
/// origin. Note: the stem radius appearing in critical_distance is a property
/// of the dandelion, not of this struct.
struct BladeGeometry {
  double half_angle_deg = 30.0;
  double blade_height_m = 0.08;
  double vertex_offset_m = 0.35;
};

/// How a dandelion separates from its stem: tall stems are sliced between
/// the blades, short heads rest on the blades and fracture in tension.
enum class CutMode { Slice, TensileFracture };

/// Azimuth/elevation box in which a swoop reliably captures the target.
struct PickZone {
  double azimuth_min_deg = -7.0;
  double azimuth_max_deg = 7.0;
  double elevation_min_deg = -15.0;
  double elevation_max_deg = 20.0;
};

/// Which spherical-to-cylindrical reduction to use; the CLI exposes these as
/// --gamma paper|standard. Paper evaluates gamma = arctan(1 / (cos a tan e)),
/// r = d cos(gamma), z = d sin(gamma). Standard is the textbook alternative
/// r = d cos(e), z = d sin(e). Both are kept because the first form has
/// surprising limits (r -> d as e -> 90 deg) and callers may want to compare.
enum class GammaFormula { Paper, Standard };

/// Converts (a, e, d) to (r, z, theta). theta is copied from the azimuth
/// bit-for-bit. Throws std::domain_error on |tan e| < 1e-12 (degenerate
/// elevation) or |cos a| < 1e-12 (degenerate azimuth) with the Paper formula.
CylindricalTarget spherical_to_cylindrical(const SphericalTarget& t,
                                           GammaFormula formula = GammaFormula::Paper);

/// Largest stem radius the blades accommodate at distance d from the vertex:
/// L = d sin(half_angle).
double max_stem_radius(double vertex_distance_m, const BladeGeometry& blade);

/// Distance from the vertex at which slicing starts for a stem of the given
/// radius: d_cr = r / sin(half_angle). Inverse of max_stem_radius.
double critical_distance(double stem_radius_m, const BladeGeometry& blade);

/// Slice when the dandelion stands taller than the blade edge; tensile
/// fracture otherwise (a head resting exactly at blade height fractures).
CutMode cut_mode(double dandelion_height_m, const BladeGeometry& blade);

/// Inclusive-boundary containment test.
bool in_pick_zone(double azimuth_deg, double elevation_deg, const PickZone& zone);

}  // namespace hexpick::geometry
