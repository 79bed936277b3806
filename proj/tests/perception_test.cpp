#include "hexpick/perception.hpp"

#include <gtest/gtest.h>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <sstream>

#include "hexpick/errors.hpp"

using namespace hexpick;
using namespace hexpick::perception;

namespace {

Mask blank_mask(int w, int h) {
  Mask m;
  m.width = w;
  m.height = h;
  m.data.assign(static_cast<std::size_t>(w) * h, 0);
  return m;
}

void fill_disk(Mask* m, int cx, int cy, int r) {
  for (int y = 0; y < m->height; ++y) {
    for (int x = 0; x < m->width; ++x) {
      if ((x - cx) * (x - cx) + (y - cy) * (y - cy) <= r * r) {
        m->data[y * m->width + x] = 1;
      }
    }
  }
}

void fill_rect(Mask* m, int x0, int y0, int x1, int y1) {
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      m->data[y * m->width + x] = 1;
    }
  }
}

RgbdFrame solid_frame(int w, int h, std::uint8_t r, std::uint8_t g, std::uint8_t b) {
  RgbdFrame f(w, h);
  for (int i = 0; i < w * h; ++i) {
    f.color[3 * i] = r;
    f.color[3 * i + 1] = g;
    f.color[3 * i + 2] = b;
  }
  return f;
}

sim::WorldState world_with_dandelion(double x, double y, double height) {
  sim::WorldState state;
  state.dandelions.push_back({x, y, 0.003, height, sim::DandelionState::Standing});
  return state;
}

// A dandelion whose head sits at the given camera-frame spherical coordinates
// for a robot parked at the origin.
sim::WorldState world_with_target(const CameraModel& camera, double azimuth_deg,
                                  double elevation_deg, double distance_m) {
  const auto cam = camera_pose(camera, sim::ChassisState{});
  double x, y, z;
  point_of_spherical(cam, {azimuth_deg, elevation_deg, distance_m}, &x, &y, &z);
  return world_with_dandelion(x, y, z);
}

}  // namespace

TEST(HsvMask, PureYellowPassesDefaultBand) {
  auto f = solid_frame(4, 4, 255, 255, 0);  // hue 60
  const auto mask = hsv_mask(f, {50.0, 70.0}, {0.3, 1.0}, {0.3, 1.0});
  EXPECT_TRUE(mask.at(0, 0));
}

TEST(HsvMask, PureGreenFailsYellowBand) {
  auto f = solid_frame(4, 4, 0, 255, 0);  // hue 120
  const auto mask = hsv_mask(f, {50.0, 70.0}, {0.3, 1.0}, {0.3, 1.0});
  EXPECT_FALSE(mask.at(0, 0));
}

TEST(HsvMask, GrayFailsSaturationFloor) {
  auto f = solid_frame(4, 4, 128, 128, 128);
  const auto mask = hsv_mask(f, {0.0, 360.0}, {0.3, 1.0}, {0.0, 1.0});
  EXPECT_FALSE(mask.at(0, 0));
}

TEST(HsvMask, WideningRangesNeverUnsetsPixels) {
  // Monotonicity over a gradient image.
  RgbdFrame f(32, 32);
  for (int y = 0; y < 32; ++y) {
    for (int x = 0; x < 32; ++x) {
      auto* rgb = f.rgb(x, y);
      rgb[0] = static_cast<std::uint8_t>(8 * x);
      rgb[1] = static_cast<std::uint8_t>(8 * y);
      rgb[2] = static_cast<std::uint8_t>(4 * (x + y));
    }
  }
  const auto narrow = hsv_mask(f, {40.0, 80.0}, {0.3, 0.9}, {0.2, 0.8});
  const auto wide = hsv_mask(f, {30.0, 100.0}, {0.2, 1.0}, {0.1, 0.9});
  for (int i = 0; i < 32 * 32; ++i) {
    if (narrow.data[i]) EXPECT_TRUE(wide.data[i]);
  }
}

TEST(FindBlobs, FilledSquareMoments) {
  auto mask = blank_mask(64, 64);
  fill_rect(&mask, 10, 20, 30, 40);  // 21x21
  const auto blobs = find_blobs(mask);
  ASSERT_EQ(blobs.size(), 1u);
  EXPECT_EQ(blobs[0].area, 441.0);
  EXPECT_NEAR(blobs[0].centroid_x, 20.0, 1e-12);
  EXPECT_NEAR(blobs[0].centroid_y, 30.0, 1e-12);
  EXPECT_EQ(blobs[0].x0, 10);
  EXPECT_EQ(blobs[0].y1, 40);
  EXPECT_NEAR(blobs[0].perimeter, 80.0, 1e-9);  // 4 * (n - 1) center-path edges
}

TEST(FindBlobs, EmptyMaskYieldsNothing) {
  const auto blobs = find_blobs(blank_mask(16, 16));
  EXPECT_TRUE(blobs.empty());
}

TEST(FindBlobs, DiskPerimeterNearCircumference) {
  // Oracle band: the traced perimeter of a radius-20 digital disk must sit
  // within [0.9, 1.2] of the true circumference (measured ratio 1.0495).
  auto mask = blank_mask(64, 64);
  fill_disk(&mask, 31, 31, 20);
  const auto blobs = find_blobs(mask);
  ASSERT_EQ(blobs.size(), 1u);
  EXPECT_EQ(blobs[0].area, 1257.0);
  EXPECT_GT(blobs[0].perimeter, 2.0 * M_PI * 20.0 * 0.9);
  EXPECT_LT(blobs[0].perimeter, 2.0 * M_PI * 20.0 * 1.2);
  EXPECT_NEAR(blobs[0].perimeter, 131.88225, 1.0);
}

TEST(FindBlobs, AreasSumToMaskPopcountAndSortedDescending) {
  auto mask = blank_mask(128, 96);
  fill_disk(&mask, 30, 30, 12);
  fill_rect(&mask, 70, 10, 110, 20);
  fill_rect(&mask, 90, 60, 92, 62);
  const auto blobs = find_blobs(mask);
  ASSERT_EQ(blobs.size(), 3u);
  double total = 0.0;
  for (const auto& b : blobs) total += b.area;
  double popcount = 0.0;
  for (auto v : mask.data) popcount += v;
  EXPECT_EQ(total, popcount);
  EXPECT_GE(blobs[0].area, blobs[1].area);
  EXPECT_GE(blobs[1].area, blobs[2].area);
}

TEST(FindBlobs, EightConnectivityJoinsDiagonals) {
  auto mask = blank_mask(8, 8);
  mask.data[1 * 8 + 1] = 1;
  mask.data[2 * 8 + 2] = 1;
  const auto blobs = find_blobs(mask);
  EXPECT_EQ(blobs.size(), 1u);
}

TEST(Circularity, ContinuousCircleIsOne) {
  Blob ideal;
  ideal.area = M_PI;
  ideal.perimeter = 2.0 * M_PI;
  EXPECT_NEAR(circularity(ideal), 1.0, 1e-12);
  EXPECT_TRUE(passes_circularity_gate(circularity(ideal)));
}

TEST(Circularity, TenToOneRectangleFails) {
  Blob stripe;
  stripe.area = 10.0;
  stripe.perimeter = 22.0;
  EXPECT_NEAR(circularity(stripe), 0.2596, 1e-3);
  EXPECT_FALSE(passes_circularity_gate(circularity(stripe)));
}

TEST(Circularity, RasterizedDiskPassesGate) {
  auto mask = blank_mask(64, 64);
  fill_disk(&mask, 31, 31, 20);
  const auto blobs = find_blobs(mask);
  ASSERT_EQ(blobs.size(), 1u);
  const double c = circularity(blobs[0]);
  EXPECT_GT(c, 0.7);
  EXPECT_LT(c, 1.45);
}

TEST(Circularity, ScaleInvarianceAcrossDiskSizes) {
  double values[3];
  const int radii[3] = {10, 20, 40};
  for (int i = 0; i < 3; ++i) {
    auto mask = blank_mask(128, 128);
    fill_disk(&mask, 63, 63, radii[i]);
    const auto blobs = find_blobs(mask);
    ASSERT_EQ(blobs.size(), 1u);
    values[i] = circularity(blobs[0]);
  }
  const double spread = std::max({values[0], values[1], values[2]}) -
                        std::min({values[0], values[1], values[2]});
  EXPECT_LT(spread, 0.1);
}

TEST(PixelToAngles, CenterAndEdges) {
  CameraModel camera;
  const auto [a0, e0] = pixel_to_angles(319.5, 239.5, camera);
  EXPECT_NEAR(a0, 0.0, 1e-12);
  EXPECT_NEAR(e0, 0.0, 1e-12);
  const auto [a1, e1] = pixel_to_angles(639.0, 239.5, camera);
  EXPECT_NEAR(a1, 26.9578125, 1e-9);  // ~ half of the 54 degree FOV
  const auto [a2, e2] = pixel_to_angles(319.5, 0.0, camera);
  EXPECT_NEAR(e2, 19.9583333333, 1e-9);  // ~ half of the 40 degree FOV
}

TEST(DepthFromBbox, MeanOverValidPixels) {
  RgbdFrame f(8, 8);
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 8; ++x) f.depth[y * 8 + x] = 1.5f;
  }
  EXPECT_NEAR(depth_from_bbox(f, 0, 0, 7, 7), 1.5, 1e-9);

  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 4; ++x) f.depth[y * 8 + x] = 1.0f;
    for (int x = 4; x < 8; ++x) f.depth[y * 8 + x] = 2.0f;
  }
  EXPECT_NEAR(depth_from_bbox(f, 0, 0, 7, 7), 1.5, 1e-9);

  // invalid zeros are excluded from the mean
  for (int y = 0; y < 8; ++y) {
    for (int x = 0; x < 4; ++x) f.depth[y * 8 + x] = 1.5f;
    for (int x = 4; x < 8; ++x) f.depth[y * 8 + x] = 0.0f;
  }
  EXPECT_NEAR(depth_from_bbox(f, 0, 0, 7, 7), 1.5, 1e-9);
}

TEST(DepthFromBbox, AllInvalidThrows) {
  RgbdFrame f(8, 8);
  EXPECT_THROW(depth_from_bbox(f, 0, 0, 7, 7), Error);
  EXPECT_THROW(depth_from_bbox(f, -1, 0, 7, 7), Error);
}

TEST(RenderFrame, OnAxisDandelionCentered) {
  CameraModel camera;
  auto world = world_with_target(camera, 0.0, 0.0, 1.5);
  sim::ChassisState pose;
  const auto frame = render_frame(world, camera, pose);
  const auto* rgb = frame.rgb(320, 240);
  EXPECT_GT(rgb[0], 200);  // yellow at the principal point
  EXPECT_LT(rgb[2], 100);
  EXPECT_NEAR(frame.depth_at(320, 240), 1.5f, 1e-4f);
  // lawn-green background outside the disk
  const auto* bg = frame.rgb(10, 10);
  EXPECT_LT(bg[0], 100);
  EXPECT_GT(bg[1], 100);
  EXPECT_EQ(frame.depth_at(10, 10), 0.0f);
}

TEST(RenderFrame, EmptyWorldIsUniformGreen) {
  CameraModel camera;
  sim::WorldState world;
  sim::ChassisState pose;
  const auto frame = render_frame(world, camera, pose);
  const auto* a = frame.rgb(0, 0);
  const auto* b = frame.rgb(333, 111);
  EXPECT_EQ(a[0], b[0]);
  EXPECT_EQ(a[1], b[1]);
  EXPECT_EQ(a[2], b[2]);
  EXPECT_FALSE(detect_dandelion(frame, camera).has_value());
}

TEST(RenderFrame, EdgeOfFovLandsAtImageEdge) {
  CameraModel camera;
  sim::ChassisState pose;
  auto world = world_with_target(camera, 27.0, 0.0, 1.5);
  const auto frame = render_frame(world, camera, pose);
  // disk center projects to the right edge: find the yellow pixels
  int min_x = frame.width, max_x = -1;
  for (int y = 0; y < frame.height; ++y) {
    for (int x = 0; x < frame.width; ++x) {
      if (frame.rgb(x, y)[0] > 200) {
        min_x = std::min(min_x, x);
        max_x = std::max(max_x, x);
      }
    }
  }
  ASSERT_GE(max_x, 0);
  EXPECT_EQ(max_x, frame.width - 1);   // clipped at the right edge
  EXPECT_GT(min_x, frame.width - 40);  // only a sliver is visible
}

TEST(DetectDandelion, RenderDetectRoundTrip) {
  CameraModel camera;
  sim::ChassisState pose;
  auto world = world_with_target(camera, 10.0, 0.0, 1.2);
  const auto frame = render_frame(world, camera, pose);
  const auto target = detect_dandelion(frame, camera);
  ASSERT_TRUE(target.has_value());
  EXPECT_NEAR(target->azimuth_deg, 10.0, 0.5);
  EXPECT_NEAR(target->elevation_deg, 0.0, 0.5);
  EXPECT_NEAR(target->distance_m, 1.2, 0.02);
}

TEST(DetectDandelion, YellowStripeRejectedByCircularity) {
  CameraModel camera;
  RgbdFrame frame(camera.width, camera.height);
  for (int i = 0; i < camera.width * camera.height; ++i) {
    frame.color[3 * i] = 62;
    frame.color[3 * i + 1] = 140;
    frame.color[3 * i + 2] = 70;
  }
  // 200x20 yellow stripe with uniform depth
  for (int y = 230; y < 250; ++y) {
    for (int x = 220; x < 420; ++x) {
      auto* rgb = frame.rgb(x, y);
      rgb[0] = 235;
      rgb[1] = 220;
      rgb[2] = 40;
      frame.depth[y * camera.width + x] = 1.0f;
    }
  }
  EXPECT_FALSE(detect_dandelion(frame, camera).has_value());
}

TEST(FrameDumps, PpmAndDepthLayout) {
  RgbdFrame f(3, 2);
  f.color[0] = 9;
  f.depth[5] = 2.5f;
  std::stringstream ppm;
  write_ppm(f, ppm);
  const std::string s = ppm.str();
  EXPECT_EQ(s.substr(0, 9), "P6\n3 2\n25");
  EXPECT_EQ(s.size(), std::string("P6\n3 2\n255\n").size() + 3 * 2 * 3);

  std::stringstream depth;
  write_depth_f32(f, depth);
  const std::string d = depth.str();
  ASSERT_EQ(d.size(), 6 * sizeof(float));
  float last;
  std::memcpy(&last, d.data() + 5 * sizeof(float), sizeof(float));
  EXPECT_EQ(last, 2.5f);
}
