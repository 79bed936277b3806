#include "hexpick/geometry.hpp"

#include <cmath>
#include <stdexcept>

#include "hexpick/angles.hpp"

namespace hexpick::geometry {

CylindricalTarget spherical_to_cylindrical(const SphericalTarget& t, GammaFormula formula) {
  if (t.distance_m <= 0.0) {
    throw std::domain_error("spherical_to_cylindrical: distance must be positive");
  }

  double gamma_rad = 0.0;
  if (formula == GammaFormula::Paper) {
    const double cos_a = std::cos(deg_to_rad(t.azimuth_deg));
    const double tan_e = std::tan(deg_to_rad(t.elevation_deg));
    if (std::abs(tan_e) < 1e-12) {
      throw std::domain_error("spherical_to_cylindrical: degenerate elevation, |tan e| < 1e-12");
    }
    if (std::abs(cos_a) < 1e-12) {
      throw std::domain_error("spherical_to_cylindrical: degenerate azimuth, |cos a| < 1e-12");
    }
    gamma_rad = std::atan(1.0 / (cos_a * tan_e));
  } else {
    gamma_rad = deg_to_rad(t.elevation_deg);
  }

  CylindricalTarget out;
  out.r_m = t.distance_m * std::cos(gamma_rad);
  out.z_m = t.distance_m * std::sin(gamma_rad);
  out.theta_deg = t.azimuth_deg;
  return out;
}

double max_stem_radius(double vertex_distance_m, const BladeGeometry& blade) {
  if (vertex_distance_m < 0.0) {
    throw std::domain_error("max_stem_radius: distance must be nonnegative");
  }
  return vertex_distance_m * std::sin(deg_to_rad(blade.half_angle_deg));
}

double critical_distance(double stem_radius_m, const BladeGeometry& blade) {
  if (stem_radius_m < 0.0) {
    throw std::domain_error("critical_distance: stem radius must be nonnegative");
  }
  return stem_radius_m / std::sin(deg_to_rad(blade.half_angle_deg));
}

CutMode cut_mode(double dandelion_height_m, const BladeGeometry& blade) {
  if (dandelion_height_m <= 0.0) {
    throw std::domain_error("cut_mode: dandelion height must be positive");
  }
  return dandelion_height_m > blade.blade_height_m ? CutMode::Slice : CutMode::TensileFracture;
}

bool in_pick_zone(double azimuth_deg, double elevation_deg, const PickZone& zone) {
  return azimuth_deg >= zone.azimuth_min_deg && azimuth_deg <= zone.azimuth_max_deg &&
         elevation_deg >= zone.elevation_min_deg && elevation_deg <= zone.elevation_max_deg;
}

}  // namespace hexpick::geometry
