#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hexpick/controller.hpp"
#include "hexpick/geometry.hpp"
#include "hexpick/scenario.hpp"
#include "hexpick/trajectory_log.hpp"

namespace hexpick::episode {

struct EpisodeOptions {
  std::optional<std::uint64_t> seed;  // overrides the scenario seed
  std::optional<bool> noise;          // overrides the scenario noise flag
  control::SteeringPolicy policy = control::SteeringPolicy::Calibrated;
  geometry::GammaFormula gamma = geometry::GammaFormula::Paper;
  double sim_dt_s = 0.05;
  double control_period_s = 0.25;
  double timeout_s = 600.0;
};

struct EpisodeReport {
  bool picked = false;
  std::optional<geometry::CutMode> cut_mode;
  double time_to_pick_s = 0.0;  // sim time at Done; total sim time when failed
  double path_length_m = 0.0;
  int overshoot_count = 0;
  int backoff_count = 0;  // entries into the back-off reapproach
  int attempts = 0;
  sim::ChassisState final_pose;
  std::optional<geometry::SphericalTarget> first_detection;
  std::optional<geometry::CylindricalTarget> first_detection_cylindrical;
  std::uint64_t seed = 0;
};

/// Runs one episode to Done/Failed (or the timeout) and fills the trajectory
/// log with one row per simulation tick. Deterministic for a given scenario,
/// seed and options.
EpisodeReport run_episode(const scenario::Scenario& s, const EpisodeOptions& options,
                          sim::TrajectoryLog* log);

/// Re-executes the commands recorded in a log against a fresh world built
/// from the same scenario, returning the final pose. Used to check logs
/// are lossless.
sim::ChassisState replay_log(const scenario::Scenario& s, const EpisodeOptions& options,
                             const sim::TrajectoryLog& log);

struct BatchEpisode {
  std::string scenario_name;
  std::uint64_t seed = 0;
  std::optional<EpisodeReport> report;  // empty when the episode errored
  std::string error;
};

struct BatchReport {
  std::vector<BatchEpisode> episodes;
  double pick_rate = 0.0;
  double mean_time_to_pick_s = 0.0;  // over picked episodes
  double mean_path_length_m = 0.0;   // over completed episodes
};

/// Aggregates (exact means and rates) over the per-episode reports;
/// per-episode errors are recorded without aborting the batch.
BatchReport aggregate(std::vector<BatchEpisode> episodes);

/// Reproduces the steering calibration experiment in simulation: for each
/// azimuth in the grid, a dandelion is placed on the arc at the given
/// distance and turn values are swept (step 0.005) until the robot's
/// constant-T walk first overshoots the target azimuth; the recorded value
/// adds overshoot_margin so steering slightly overshoots. Azimuths where no
/// sweeping T overshoots record a clamped 0.3. The grid must be nonnegative
/// and ascending; the resulting table is odd-extended by lookup.
gait::CalibrationTable calibrate_steering(double distance_m, const std::vector<double>& azimuths,
                                          const scenario::Scenario& base,
                                          double overshoot_margin = 0.03);

}  // namespace hexpick::episode
