#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <utility>
#include <vector>

#include "hexpick/camera.hpp"
#include "hexpick/geometry.hpp"
#include "hexpick/simulator.hpp"

namespace hexpick::perception {

/// Aligned color + depth grids. Depth is in meters with 0 meaning invalid.
struct RgbdFrame {
  int width = 640;
  int height = 480;
  std::vector<std::uint8_t> color;  // RGB triplets, row-major
  std::vector<float> depth;

  RgbdFrame() = default;
  RgbdFrame(int w, int h) : width(w), height(h), color(3 * w * h, 0), depth(w * h, 0.0f) {}

  std::uint8_t* rgb(int px, int py) { return &color[3 * (py * width + px)]; }
  const std::uint8_t* rgb(int px, int py) const { return &color[3 * (py * width + px)]; }
  float depth_at(int px, int py) const { return depth[py * width + px]; }
};

struct RenderOptions {
  double head_radius_m = 0.02;
  std::uint8_t lawn_rgb[3] = {62, 140, 70};
  std::uint8_t dandelion_rgb[3] = {235, 220, 40};
};

/// Synthetic stand-in for the RGB-D sensor: lawn-green background with each
/// visible standing dandelion drawn as a filled yellow disk at its projected
/// pixel position, radius scaled by angular size. Dandelion pixels carry the
/// true range; everything else is invalid depth. The projection is
/// equiangular and is the exact inverse of pixel_to_angles.
RgbdFrame render_frame(const sim::WorldState& world, const CameraModel& camera,
                       const sim::ChassisState& robot_pose, const RenderOptions& options = {});

struct Mask {
  int width = 0;
  int height = 0;
  std::vector<std::uint8_t> data;

  bool at(int px, int py) const { return data[py * width + px] != 0; }
};

/// HSV threshold over the standard hexcone conversion. A pixel is set iff its
/// hue (degrees in [0, 360)), saturation and value ([0, 1]) all fall inside
/// the inclusive ranges.
Mask hsv_mask(const RgbdFrame& frame, std::pair<double, double> hue_range,
              std::pair<double, double> sat_range, std::pair<double, double> val_range);

/// Candidate region: centroid from first moments, area in pixels, perimeter
/// from the outer boundary trace, tight bounding box, all in pixel units.
struct Blob {
  double centroid_x = 0.0;
  double centroid_y = 0.0;
  double area = 0.0;
  double perimeter = 0.0;
  int x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // inclusive bbox
};

/// 8-connected components of the mask, sorted by area descending. Perimeter
/// is the Moore-neighbor outer contour length with sqrt(2)-weighted diagonal
/// steps.
std::vector<Blob> find_blobs(const Mask& mask);

/// c = 4 pi A / P^2.
double circularity(const Blob& blob);

/// The dandelion acceptance band 0.4 < c < 1.45 (strict). The upper bound
/// compensates for the discrete perimeter underestimating small shapes.
bool passes_circularity_gate(double c);

/// Linear-in-angle pixel -> (azimuth, elevation), degrees. Pixel centers are
/// addressed so that ((width-1)/2, (height-1)/2) is the optical axis and up
/// is positive elevation.
std::pair<double, double> pixel_to_angles(double px, double py, const CameraModel& camera);

/// Mean of valid (nonzero) depth values inside the inclusive bbox. Throws
/// Error when the bbox holds no valid depth.
double depth_from_bbox(const RgbdFrame& frame, int x0, int y0, int x1, int y1);

struct DetectionThresholds {
  std::pair<double, double> hue{45.0, 75.0};
  std::pair<double, double> sat{0.4, 1.0};
  std::pair<double, double> val{0.3, 1.0};
};

/// Full pipeline: threshold, blobs, circularity gate, then angle/depth
/// reduction of the largest passing blob. Absence (no passing blob, or no
/// valid depth) is a value, not an error.
std::optional<geometry::SphericalTarget> detect_dandelion(const RgbdFrame& frame,
                                                          const CameraModel& camera,
                                                          const DetectionThresholds& thresholds = {});

/// Binary PPM (P6) dump of the color grid and a flat little-endian float32
/// dump of the depth grid, for golden tests.
void write_ppm(const RgbdFrame& frame, std::ostream& out);
void write_depth_f32(const RgbdFrame& frame, std::ostream& out);

}  // namespace hexpick::perception
