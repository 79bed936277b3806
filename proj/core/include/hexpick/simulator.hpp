#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "hexpick/camera.hpp"
#include "hexpick/chassis.hpp"
#include "hexpick/gait.hpp"
#include "hexpick/gait_table.hpp"
#include "hexpick/geometry.hpp"
#include "hexpick/toe_trajectory.hpp"

namespace hexpick::sim {

enum class DandelionState { Standing, Picked, Missed };

struct DandelionSpec {
  double x_m = 0.0;
  double y_m = 0.0;
  double stem_radius_m = 0.003;
  double height_m = 0.10;  // ground to head center
  DandelionState state = DandelionState::Standing;
};

/// Net-motion model for the walking gait: the chassis advances
/// stride_per_cycle meters per gait cycle, arcs are capped at min_turn_radius
/// when |T| = 0.3, and per-cycle gait variability scales the stride by a
/// truncated normal multiplier.
struct MotionModel {
  double stride_per_cycle_m = 1.0 / 3.0;
  double min_turn_radius_m = 0.5;
  double stride_noise_sigma = 0.05;
  double noise_clamp_min = 0.8;
  double noise_clamp_max = 1.2;
};

/// Seconds of walking needed to cover d meters open loop:
/// d * cycles_per_meter / frequency (18.75 * d at the defaults).
double dead_reckon_duration(double distance_m, const MotionModel& motion,
                            const gait::GaitParams& params);

/// Arc radius for a turn value. nullopt means straight (|T| < 1e-6);
/// otherwise the magnitude is min_turn_radius * 0.3 / |T| and the sign is the
/// sign of T (positive = rightward arc). Throws std::domain_error when
/// |T| > 0.3.
std::optional<double> turn_radius(double turn_value, const MotionModel& motion);

/// Signed path curvature d(heading)/ds in rad/m for a turn value; positive T
/// turns the robot rightward (heading decreasing).
double turn_curvature(double turn_value, const MotionModel& motion);

struct Command {
  enum class Kind { Idle, Walk, TurnInPlace, PlayTable };
  Kind kind = Kind::Idle;
  int direction = 1;        // +1 forward, -1 backward (Walk only)
  double turn_value = 0.0;  // [-0.3, 0.3]
};

struct WorldState {
  ChassisState robot;
  std::vector<DandelionSpec> dandelions;
  double clock_s = 0.0;
  std::uint64_t rng_seed = 0;
};

struct SimConfig {
  MotionModel motion;
  gait::BuehlerClock clock;
  gait::ToeTrajectory toe;
  gait::GaitParams params;
  geometry::BladeGeometry blade;
  perception::CameraModel camera;
  double swoop_period_s = 5.0;
  double wedge_max_half_width_m = 0.10;  // blade half-opening projected on the ground
  double pick_search_radius_m = 1.0;
  bool noise_enabled = false;
};

enum class MissReason { OutOfWedge, NotInZoneAtStart };

struct PickOutcome {
  bool picked = false;
  geometry::CutMode mode = geometry::CutMode::Slice;
  MissReason reason = MissReason::OutOfWedge;
  std::size_t dandelion_index = 0;
};

/// Deterministic kinematic world. All mutation goes through step() and
/// attempt_pick() on one logical thread; independent worlds can run in
/// parallel.
class World {
 public:
  World(WorldState initial, SimConfig config);

  /// Advances the world by dt seconds under a command. Walking integrates the
  /// exact unicycle arc at speed stride_per_cycle * frequency (times the
  /// noise multiplier); PlayTable replays the swoop primitive, driving
  /// height/pitch/advance by planar support kinematics from the stance toes.
  void step(const Command& command, double dt);

  /// True while a swoop table is being replayed.
  bool swoop_active() const { return swoop_.active; }
  /// True exactly once, for the step on which playback completed.
  bool swoop_just_finished() const { return swoop_.just_finished; }

  /// Resolves a pick attempt at the recorded swoop nadir: the nearest
  /// standing dandelion must fall inside the V-opening's ground footprint at
  /// the nadir and must have been inside the pick zone at swoop start. On a
  /// pick the dandelion's state becomes Picked; a miss changes nothing.
  /// Throws Error when no standing dandelion is within pick_search_radius.
  PickOutcome attempt_pick(const geometry::PickZone& zone);

  const WorldState& state() const { return state_; }
  WorldState& mutable_state() { return state_; }
  const SimConfig& config() const { return config_; }
  const gait::GaitTable& swoop_table() const { return swoop_table_; }

  /// World position of the blade vertex for the current chassis pose.
  void vertex_position(double* x_m, double* y_m, double* z_m) const;

  /// Chassis height/pitch for a set of swoop shaft angles, resting the
  /// chassis on the two supporting toe pairs (0 = front, 1 = mid, 2 = hind).
  /// offset[] gives each support toe's forward offset from the chassis
  /// origin, used to anchor the body's advance while that toe is grounded.
  struct SupportPose {
    double height_m = 0.0;
    double pitch_deg = 0.0;
    int pair[2] = {0, 2};
    double offset[2] = {0.0, 0.0};
  };
  SupportPose support_pose(const gait::ShaftAngles& angles) const;

 private:
  void step_walk(const Command& command, double dt);
  void step_turn_in_place(const Command& command, double dt);
  void step_playback(double dt);
  void refresh_noise(double new_phase);
  double uniform_draw();
  double normal_draw();

  WorldState state_;
  SimConfig config_;
  gait::GaitTable swoop_table_;

  double gait_phase_ = 0.0;
  double noise_multiplier_ = 1.0;
  std::uint64_t rng_state_;

  struct SwoopPlayback {
    bool active = false;
    bool just_finished = false;
    double elapsed_s = 0.0;
    int anchor = -1;
    double anchor_offset_m = 0.0;
    ChassisState start_pose;
    double nadir_vertex_z = 0.0;
    double nadir_vertex_x = 0.0;
    double nadir_vertex_y = 0.0;
    double nadir_heading_deg = 0.0;
    bool has_nadir = false;
    bool completed_once = false;
  } swoop_;
};

}  // namespace hexpick::sim
