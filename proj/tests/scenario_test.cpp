#include "hexpick/scenario.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <sstream>

#include "hexpick/episode.hpp"
#include "hexpick/errors.hpp"

using namespace hexpick;

namespace {

const char* kSample = R"(# test lawn
format_version 1
lawn -1 -2 5 2
robot 0.5 -0.25 10
seed 99
noise on
blade 25 0.07 0.33
camera 54 40 640 480
camera_mount 0.2 0.12 0 0.15
motion 0.32 0.55 0.04
controller 0.22 4 2
dandelion 1.5 -0.5 0.004 0.12
dandelion 3.0 1.0 0.002 0.06
)";

scenario::Scenario sample() {
  std::stringstream in(kSample);
  return scenario::parse_scenario(in);
}

}  // namespace

TEST(ScenarioParse, ReadsEveryField) {
  const auto s = sample();
  EXPECT_EQ(s.format_version, 1);
  EXPECT_EQ(s.lawn_min_x, -1.0);
  EXPECT_EQ(s.lawn_max_y, 2.0);
  EXPECT_EQ(s.robot_x, 0.5);
  EXPECT_EQ(s.robot_heading_deg, 10.0);
  EXPECT_EQ(s.seed, 99u);
  EXPECT_TRUE(s.noise);
  EXPECT_EQ(s.blade.half_angle_deg, 25.0);
  EXPECT_EQ(s.camera.hfov_deg, 54.0);
  EXPECT_EQ(s.camera.mount_height_m, 0.12);
  EXPECT_EQ(s.motion.min_turn_radius_m, 0.55);
  EXPECT_EQ(s.controller.max_attempts, 2);
  ASSERT_EQ(s.dandelions.size(), 2u);
  EXPECT_EQ(s.dandelions[1].height_m, 0.06);
}

TEST(ScenarioParse, WriteParseRoundTripIsFieldIdentical) {
  const auto s = sample();
  std::stringstream buf;
  scenario::write_scenario(s, buf);
  const auto t = scenario::parse_scenario(buf);
  EXPECT_EQ(t.lawn_min_x, s.lawn_min_x);
  EXPECT_EQ(t.lawn_min_y, s.lawn_min_y);
  EXPECT_EQ(t.lawn_max_x, s.lawn_max_x);
  EXPECT_EQ(t.lawn_max_y, s.lawn_max_y);
  EXPECT_EQ(t.robot_x, s.robot_x);
  EXPECT_EQ(t.robot_y, s.robot_y);
  EXPECT_EQ(t.robot_heading_deg, s.robot_heading_deg);
  EXPECT_EQ(t.seed, s.seed);
  EXPECT_EQ(t.noise, s.noise);
  EXPECT_EQ(t.blade.half_angle_deg, s.blade.half_angle_deg);
  EXPECT_EQ(t.blade.blade_height_m, s.blade.blade_height_m);
  EXPECT_EQ(t.blade.vertex_offset_m, s.blade.vertex_offset_m);
  EXPECT_EQ(t.camera.hfov_deg, s.camera.hfov_deg);
  EXPECT_EQ(t.camera.vfov_deg, s.camera.vfov_deg);
  EXPECT_EQ(t.camera.width, s.camera.width);
  EXPECT_EQ(t.camera.height, s.camera.height);
  EXPECT_EQ(t.camera.mount_offset_m, s.camera.mount_offset_m);
  EXPECT_EQ(t.camera.mount_height_m, s.camera.mount_height_m);
  EXPECT_EQ(t.camera.mount_pitch_deg, s.camera.mount_pitch_deg);
  EXPECT_EQ(t.camera.body_x_m, s.camera.body_x_m);
  EXPECT_EQ(t.motion.stride_per_cycle_m, s.motion.stride_per_cycle_m);
  EXPECT_EQ(t.motion.min_turn_radius_m, s.motion.min_turn_radius_m);
  EXPECT_EQ(t.motion.stride_noise_sigma, s.motion.stride_noise_sigma);
  EXPECT_EQ(t.controller.stop_distance_m, s.controller.stop_distance_m);
  EXPECT_EQ(t.controller.max_overshoots, s.controller.max_overshoots);
  EXPECT_EQ(t.controller.max_attempts, s.controller.max_attempts);
  ASSERT_EQ(t.dandelions.size(), s.dandelions.size());
  for (std::size_t i = 0; i < s.dandelions.size(); ++i) {
    EXPECT_EQ(t.dandelions[i].x_m, s.dandelions[i].x_m);
    EXPECT_EQ(t.dandelions[i].y_m, s.dandelions[i].y_m);
    EXPECT_EQ(t.dandelions[i].stem_radius_m, s.dandelions[i].stem_radius_m);
    EXPECT_EQ(t.dandelions[i].height_m, s.dandelions[i].height_m);
  }
}

TEST(ScenarioParse, UnknownKeyNamesTheLine) {
  std::stringstream in("format_version 1\nwibble 3\n");
  try {
    scenario::parse_scenario(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_NE(std::string(e.what()).find("wibble"), std::string::npos);
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(ScenarioParse, MissingVersionRejected) {
  std::stringstream in("lawn 0 0 1 1\n");
  EXPECT_THROW(scenario::parse_scenario(in), ParseError);
}

TEST(ScenarioValidate, DandelionOutsideLawnNamed) {
  auto s = sample();
  s.dandelions[1].x_m = 50.0;
  try {
    scenario::validate(s);
    FAIL() << "expected Error";
  } catch (const Error& e) {
    EXPECT_NE(std::string(e.what()).find("dandelion #2"), std::string::npos);
  }
}

TEST(ScenarioValidate, FieldInvariants) {
  auto s = sample();
  s.blade.half_angle_deg = 90.0;
  EXPECT_THROW(scenario::validate(s), Error);
  s = sample();
  s.dandelions[0].stem_radius_m = 0.0;
  EXPECT_THROW(scenario::validate(s), Error);
  s = sample();
  s.lawn_min_x = s.lawn_max_x;
  EXPECT_THROW(scenario::validate(s), Error);
}

TEST(BatchAggregate, SingleEpisodeEqualsItsReport) {
  episode::BatchEpisode e;
  e.scenario_name = "one";
  episode::EpisodeReport r;
  r.picked = true;
  r.time_to_pick_s = 30.0;
  r.path_length_m = 1.5;
  e.report = r;
  const auto batch = episode::aggregate({e});
  EXPECT_EQ(batch.pick_rate, 1.0);
  EXPECT_EQ(batch.mean_time_to_pick_s, 30.0);
  EXPECT_EQ(batch.mean_path_length_m, 1.5);
}

TEST(BatchAggregate, ErrorsRecordedWithoutAborting) {
  episode::BatchEpisode good;
  episode::EpisodeReport r;
  r.picked = false;
  r.path_length_m = 2.0;
  good.report = r;
  episode::BatchEpisode bad;
  bad.error = "scenario: dandelion #1 lies outside the lawn bounds";
  const auto batch = episode::aggregate({good, bad});
  EXPECT_EQ(batch.episodes.size(), 2u);
  EXPECT_EQ(batch.pick_rate, 0.0);
  EXPECT_EQ(batch.mean_path_length_m, 2.0);
}

TEST(BatchAggregate, PickRateStaysInUnitInterval) {
  std::vector<episode::BatchEpisode> eps;
  for (int i = 0; i < 7; ++i) {
    episode::BatchEpisode e;
    episode::EpisodeReport r;
    r.picked = (i % 3 == 0);
    e.report = r;
    eps.push_back(e);
  }
  const auto batch = episode::aggregate(eps);
  EXPECT_GE(batch.pick_rate, 0.0);
  EXPECT_LE(batch.pick_rate, 1.0);
}

TEST(CalibrateSteering, ZeroAzimuthIsZeroAndOddByLookup) {
  scenario::Scenario base;
  base.lawn_min_x = -3.0;
  base.lawn_max_x = 8.0;
  base.lawn_min_y = -5.0;
  base.lawn_max_y = 5.0;
  const auto table = episode::calibrate_steering(1.5, {0.0, 9.0, 18.0}, base);
  ASSERT_EQ(table.points.size(), 3u);
  EXPECT_EQ(table.points[0].second, 0.0);
  for (double a : {4.0, 9.0, 14.0, 18.0}) {
    EXPECT_EQ(table.lookup(-a), -table.lookup(a));
  }
}

TEST(CalibrateSteering, RegeneratedMatchesShippedDefault) {
  scenario::Scenario base;
  base.lawn_min_x = -3.0;
  base.lawn_max_x = 8.0;
  base.lawn_min_y = -5.0;
  base.lawn_max_y = 5.0;
  std::vector<double> grid;
  for (double a = 0.0; a <= 27.0; a += 3.0) grid.push_back(a);
  const auto regenerated = episode::calibrate_steering(1.5, grid, base);
  const auto shipped = gait::default_calibration();
  for (double a : grid) {
    EXPECT_NEAR(regenerated.lookup(a), shipped.lookup(a), 0.02) << "azimuth " << a;
  }
}

TEST(CalibrateSteering, RejectsDistanceInsideStopRadius) {
  scenario::Scenario base;
  EXPECT_THROW(episode::calibrate_steering(0.1, {0.0, 9.0}, base), Error);
}

TEST(ReplayLog, CommandsReproduceFinalPose) {
  // Noise-on episode: the replayed command stream must land on the same pose.
  scenario::Scenario s;
  s.lawn_min_x = -2.0;
  s.lawn_max_x = 8.0;
  s.lawn_min_y = -5.0;
  s.lawn_max_y = 5.0;
  s.seed = 11;
  s.noise = true;
  sim::DandelionSpec d;
  d.x_m = 1.55;
  d.y_m = -0.45;
  d.height_m = 0.10;
  s.dandelions.push_back(d);

  // both a cadence that divides the swoop period and one that does not
  for (double control_period : {0.25, 0.35}) {
    episode::EpisodeOptions options;
    options.control_period_s = control_period;
    sim::TrajectoryLog log;
    const auto report = episode::run_episode(s, options, &log);
    ASSERT_FALSE(log.rows().empty());
    const auto replayed = episode::replay_log(s, options, log);
    EXPECT_NEAR(replayed.x_m, report.final_pose.x_m, 1e-9) << control_period;
    EXPECT_NEAR(replayed.y_m, report.final_pose.y_m, 1e-9) << control_period;
    EXPECT_NEAR(replayed.heading_deg, report.final_pose.heading_deg, 1e-9) << control_period;
  }
}

TEST(EpisodeLoop, TimeoutRowCountMatchesDuration) {
  // No dandelions: the machine acquires forever and the loop runs out the
  // clock, one log row per tick.
  scenario::Scenario s;
  episode::EpisodeOptions options;
  options.timeout_s = 3.0;
  options.sim_dt_s = 0.05;
  sim::TrajectoryLog log;
  const auto report = episode::run_episode(s, options, &log);
  EXPECT_FALSE(report.picked);
  EXPECT_EQ(log.rows().size(), static_cast<std::size_t>(std::ceil(3.0 / 0.05)));
}
