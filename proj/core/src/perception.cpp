#include "hexpick/perception.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include "hexpick/angles.hpp"
#include "hexpick/errors.hpp"

namespace hexpick::perception {

namespace {

void rgb_to_hsv(std::uint8_t r8, std::uint8_t g8, std::uint8_t b8, double* h, double* s,
                double* v) {
  const double r = r8 / 255.0;
  const double g = g8 / 255.0;
  const double b = b8 / 255.0;
  const double mx = std::max({r, g, b});
  const double mn = std::min({r, g, b});
  const double delta = mx - mn;

  *v = mx;
  *s = mx > 0.0 ? delta / mx : 0.0;
  if (delta <= 0.0) {
    *h = 0.0;
    return;
  }
  double hue;
  if (mx == r) {
    hue = 60.0 * std::fmod((g - b) / delta, 6.0);
  } else if (mx == g) {
    hue = 60.0 * ((b - r) / delta + 2.0);
  } else {
    hue = 60.0 * ((r - g) / delta + 4.0);
  }
  if (hue < 0.0) hue += 360.0;
  *h = hue;
}

}  // namespace

RgbdFrame render_frame(const sim::WorldState& world, const CameraModel& camera,
                       const sim::ChassisState& robot_pose, const RenderOptions& options) {
  RgbdFrame frame(camera.width, camera.height);
  for (int i = 0; i < camera.width * camera.height; ++i) {
    frame.color[3 * i + 0] = options.lawn_rgb[0];
    frame.color[3 * i + 1] = options.lawn_rgb[1];
    frame.color[3 * i + 2] = options.lawn_rgb[2];
  }

  const auto cam = camera_pose(camera, robot_pose);
  const double px_per_deg_h = camera.width / camera.hfov_deg;
  const double px_per_deg_v = camera.height / camera.vfov_deg;
  const double cx = (camera.width - 1) / 2.0;
  const double cy = (camera.height - 1) / 2.0;

  for (const auto& d : world.dandelions) {
    if (d.state != sim::DandelionState::Standing) continue;
    const auto t = spherical_of_point(cam, d.x_m, d.y_m, d.height_m);
    if (t.distance_m <= 0.0) continue;
    if (std::abs(t.azimuth_deg) > camera.hfov_deg || std::abs(t.elevation_deg) > camera.vfov_deg) {
      continue;  // clearly outside; partial disks near the edge still render
    }

    const double center_px = cx + t.azimuth_deg * px_per_deg_h;
    const double center_py = cy - t.elevation_deg * px_per_deg_v;
    const double ang_radius = rad_to_deg(std::atan(options.head_radius_m / t.distance_m));
    const double radius_px = ang_radius * px_per_deg_h;

    const int x_lo = std::max(0, static_cast<int>(std::floor(center_px - radius_px)));
    const int x_hi = std::min(camera.width - 1, static_cast<int>(std::ceil(center_px + radius_px)));
    const int y_lo = std::max(0, static_cast<int>(std::floor(center_py - radius_px)));
    const int y_hi =
        std::min(camera.height - 1, static_cast<int>(std::ceil(center_py + radius_px)));
    const double r2 = radius_px * radius_px;
    for (int py = y_lo; py <= y_hi; ++py) {
      for (int px = x_lo; px <= x_hi; ++px) {
        const double ddx = px - center_px;
        const double ddy = py - center_py;
        if (ddx * ddx + ddy * ddy > r2) continue;
        auto* rgb = frame.rgb(px, py);
        rgb[0] = options.dandelion_rgb[0];
        rgb[1] = options.dandelion_rgb[1];
        rgb[2] = options.dandelion_rgb[2];
        frame.depth[py * camera.width + px] = static_cast<float>(t.distance_m);
      }
    }
  }
  return frame;
}

Mask hsv_mask(const RgbdFrame& frame, std::pair<double, double> hue_range,
              std::pair<double, double> sat_range, std::pair<double, double> val_range) {
  Mask mask;
  mask.width = frame.width;
  mask.height = frame.height;
  mask.data.assign(static_cast<std::size_t>(frame.width) * frame.height, 0);
  for (int i = 0; i < frame.width * frame.height; ++i) {
    double h, s, v;
    rgb_to_hsv(frame.color[3 * i], frame.color[3 * i + 1], frame.color[3 * i + 2], &h, &s, &v);
    const bool in = h >= hue_range.first && h <= hue_range.second && s >= sat_range.first &&
                    s <= sat_range.second && v >= val_range.first && v <= val_range.second;
    mask.data[i] = in ? 1 : 0;
  }
  return mask;
}

namespace {

// Moore-neighbor outer boundary trace starting at the first (topmost,
// leftmost) pixel, clockwise, with Jacob's stopping criterion: stop when the
// start pixel is re-entered from the same neighbor it was first left toward.
double trace_perimeter(const Mask& mask, const std::vector<int>& labels, int label, int start_x,
                       int start_y) {
  const int w = mask.width;
  const int h = mask.height;
  auto inside = [&](int x, int y) {
    return x >= 0 && x < w && y >= 0 && y < h && labels[y * w + x] == label;
  };

  // Clockwise Moore neighborhood starting west (screen coordinates, y down).
  static constexpr int kDx[8] = {-1, -1, 0, 1, 1, 1, 0, -1};
  static constexpr int kDy[8] = {0, -1, -1, -1, 0, 1, 1, 1};
  const double kSqrt2 = std::sqrt(2.0);

  int cx = start_x;
  int cy = start_y;
  int backtrack = 0;  // begin the scan from the west neighbor
  int first_exit = -1;
  double perimeter = 0.0;
  const int step_cap = 8 * w * h;

  for (int steps = 0; steps < step_cap; ++steps) {
    int found = -1;
    for (int i = 0; i < 8; ++i) {
      const int idx = (backtrack + i) % 8;
      if (inside(cx + kDx[idx], cy + kDy[idx])) {
        found = idx;
        break;
      }
    }
    if (found < 0) return 0.0;  // isolated pixel

    const bool at_start = (cx == start_x && cy == start_y);
    if (at_start) {
      if (first_exit < 0) {
        first_exit = found;
      } else if (found == first_exit) {
        break;  // closed the contour
      }
    }

    perimeter += (kDx[found] != 0 && kDy[found] != 0) ? kSqrt2 : 1.0;
    cx += kDx[found];
    cy += kDy[found];
    backtrack = (found + 5) % 8;  // restart scan just past the previous pixel
  }
  return perimeter;
}

}  // namespace

std::vector<Blob> find_blobs(const Mask& mask) {
  const int w = mask.width;
  const int h = mask.height;
  std::vector<int> labels(static_cast<std::size_t>(w) * h, -1);
  std::vector<Blob> blobs;
  std::vector<std::pair<int, int>> first_pixel;
  std::vector<int> stack;

  for (int y = 0; y < h; ++y) {
    for (int x = 0; x < w; ++x) {
      if (!mask.at(x, y) || labels[y * w + x] >= 0) continue;
      const int label = static_cast<int>(blobs.size());
      Blob blob;
      blob.x0 = blob.x1 = x;
      blob.y0 = blob.y1 = y;
      double sum_x = 0.0, sum_y = 0.0;
      double count = 0.0;

      stack.clear();
      stack.push_back(y * w + x);
      labels[y * w + x] = label;
      while (!stack.empty()) {
        const int idx = stack.back();
        stack.pop_back();
        const int px = idx % w;
        const int py = idx / w;
        sum_x += px;
        sum_y += py;
        count += 1.0;
        blob.x0 = std::min(blob.x0, px);
        blob.x1 = std::max(blob.x1, px);
        blob.y0 = std::min(blob.y0, py);
        blob.y1 = std::max(blob.y1, py);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            if (dx == 0 && dy == 0) continue;
            const int nx = px + dx;
            const int ny = py + dy;
            if (nx < 0 || nx >= w || ny < 0 || ny >= h) continue;
            if (!mask.at(nx, ny) || labels[ny * w + nx] >= 0) continue;
            labels[ny * w + nx] = label;
            stack.push_back(ny * w + nx);
          }
        }
      }
      blob.area = count;
      blob.centroid_x = sum_x / count;
      blob.centroid_y = sum_y / count;
      blobs.push_back(blob);
      first_pixel.emplace_back(x, y);
    }
  }

  for (std::size_t i = 0; i < blobs.size(); ++i) {
    const double traced =
        trace_perimeter(mask, labels, static_cast<int>(i), first_pixel[i].first,
                        first_pixel[i].second);
    blobs[i].perimeter = std::max(traced, 1.0);
  }

  std::sort(blobs.begin(), blobs.end(), [](const Blob& a, const Blob& b) { return a.area > b.area; });
  return blobs;
}

double circularity(const Blob& blob) {
  return 4.0 * kPi * blob.area / (blob.perimeter * blob.perimeter);
}

bool passes_circularity_gate(double c) { return c > 0.4 && c < 1.45; }

std::pair<double, double> pixel_to_angles(double px, double py, const CameraModel& camera) {
  const double a = (px - (camera.width - 1) / 2.0) * camera.hfov_deg / camera.width;
  const double e = ((camera.height - 1) / 2.0 - py) * camera.vfov_deg / camera.height;
  return {a, e};
}

double depth_from_bbox(const RgbdFrame& frame, int x0, int y0, int x1, int y1) {
  if (x0 < 0 || y0 < 0 || x1 >= frame.width || y1 >= frame.height || x0 > x1 || y0 > y1) {
    throw Error("depth_from_bbox: bbox outside the frame");
  }
  double sum = 0.0;
  std::size_t n = 0;
  for (int py = y0; py <= y1; ++py) {
    for (int px = x0; px <= x1; ++px) {
      const float d = frame.depth_at(px, py);
      if (d > 0.0f) {
        sum += d;
        ++n;
      }
    }
  }
  if (n == 0) {
    throw Error("depth_from_bbox: no valid depth in bbox");
  }
  return sum / static_cast<double>(n);
}

std::optional<geometry::SphericalTarget> detect_dandelion(const RgbdFrame& frame,
                                                          const CameraModel& camera,
                                                          const DetectionThresholds& thresholds) {
  const Mask mask = hsv_mask(frame, thresholds.hue, thresholds.sat, thresholds.val);
  const auto blobs = find_blobs(mask);
  for (const auto& blob : blobs) {  // sorted by area, largest first
    if (!passes_circularity_gate(circularity(blob))) continue;
    const auto [a, e] = pixel_to_angles(blob.centroid_x, blob.centroid_y, camera);
    double d;
    try {
      d = depth_from_bbox(frame, blob.x0, blob.y0, blob.x1, blob.y1);
    } catch (const Error&) {
      continue;  // no usable depth for this blob
    }
    return geometry::SphericalTarget{a, e, d};
  }
  return std::nullopt;
}

void write_ppm(const RgbdFrame& frame, std::ostream& out) {
  out << "P6\n" << frame.width << " " << frame.height << "\n255\n";
  out.write(reinterpret_cast<const char*>(frame.color.data()),
            static_cast<std::streamsize>(frame.color.size()));
}

void write_depth_f32(const RgbdFrame& frame, std::ostream& out) {
  // Raw little-endian float32 grid, row-major; matches the in-memory layout
  // on every platform this builds for.
  out.write(reinterpret_cast<const char*>(frame.depth.data()),
            static_cast<std::streamsize>(frame.depth.size() * sizeof(float)));
}

}  // namespace hexpick::perception
