// hexpick CLI: scenario execution, batch runs, steering-curve calibration,
// and small format utilities (swoop table and frame dumps).
//
// Exit codes for `run`: 0 = picked, 2 = failed episode, 1 = error.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hexpick/episode.hpp"
#include "hexpick/errors.hpp"
#include "hexpick/gait_table.hpp"
#include "hexpick/perception.hpp"
#include "hexpick/scenario.hpp"
#include "hexpick/trajectory_log.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

hexpick::scenario::Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw hexpick::Error("cannot open scenario file: " + path);
  }
  return hexpick::scenario::parse_scenario(in);
}

json report_to_json(const hexpick::episode::EpisodeReport& r) {
  json j;
  j["outcome"] = r.picked ? "Picked" : "Failed";
  if (r.cut_mode) {
    j["cut_mode"] =
        *r.cut_mode == hexpick::geometry::CutMode::Slice ? "Slice" : "TensileFracture";
  }
  j["time_to_pick_s"] = r.time_to_pick_s;
  j["path_length_m"] = r.path_length_m;
  j["overshoot_count"] = r.overshoot_count;
  j["backoff_count"] = r.backoff_count;
  j["attempts"] = r.attempts;
  j["seed"] = r.seed;
  j["final_pose"] = {{"x", r.final_pose.x_m},
                     {"y", r.final_pose.y_m},
                     {"heading", r.final_pose.heading_deg},
                     {"height", r.final_pose.height_m},
                     {"pitch", r.final_pose.pitch_deg}};
  if (r.first_detection) {
    j["first_detection"] = {{"azimuth", r.first_detection->azimuth_deg},
                            {"elevation", r.first_detection->elevation_deg},
                            {"distance", r.first_detection->distance_m}};
  }
  if (r.first_detection_cylindrical) {
    j["first_detection_cylindrical"] = {{"r", r.first_detection_cylindrical->r_m},
                                        {"z", r.first_detection_cylindrical->z_m},
                                        {"theta", r.first_detection_cylindrical->theta_deg}};
  }
  return j;
}

void print_report(const hexpick::episode::EpisodeReport& r, std::ostream& out) {
  out << "outcome:         " << (r.picked ? "Picked" : "Failed") << "\n";
  if (r.cut_mode) {
    out << "cut mode:        "
        << (*r.cut_mode == hexpick::geometry::CutMode::Slice ? "Slice" : "TensileFracture")
        << "\n";
  }
  out << "time to pick:    " << r.time_to_pick_s << " s\n";
  out << "path length:     " << r.path_length_m << " m\n";
  out << "overshoots:      " << r.overshoot_count << "\n";
  out << "backoffs:        " << r.backoff_count << "\n";
  out << "attempts:        " << r.attempts << "\n";
  out << "final pose:      x=" << r.final_pose.x_m << " y=" << r.final_pose.y_m
      << " heading=" << r.final_pose.heading_deg << "\n";
}

struct CommonFlags {
  std::optional<std::uint64_t> seed;
  std::string noise;     // "", "on", "off"
  std::string steering = "calibrated";
  std::string gamma = "paper";
  double timeout_s = 600.0;

  hexpick::episode::EpisodeOptions to_options() const {
    hexpick::episode::EpisodeOptions options;
    options.seed = seed;
    options.timeout_s = timeout_s;
    if (noise == "on") options.noise = true;
    if (noise == "off") options.noise = false;
    options.policy = steering == "arc-solver"
                         ? hexpick::control::SteeringPolicy::ArcSolver
                         : hexpick::control::SteeringPolicy::Calibrated;
    options.gamma = gamma == "standard" ? hexpick::geometry::GammaFormula::Standard
                                        : hexpick::geometry::GammaFormula::Paper;
    return options;
  }
};

void add_common_flags(CLI::App* cmd, CommonFlags* flags) {
  cmd->add_option("--seed", flags->seed, "Override the scenario seed");
  cmd->add_option("--noise", flags->noise, "Override gait variability")
      ->check(CLI::IsMember({"on", "off"}));
  cmd->add_option("--steering", flags->steering, "Steering policy")
      ->check(CLI::IsMember({"calibrated", "arc-solver"}));
  cmd->add_option("--gamma", flags->gamma, "Spherical-to-cylindrical formula")
      ->check(CLI::IsMember({"paper", "standard"}));
  cmd->add_option("--timeout", flags->timeout_s, "Episode timeout in sim seconds")
      ->check(CLI::PositiveNumber);
}

// Minimal '*' glob over the filename part of the pattern.
std::vector<fs::path> expand_glob(const std::string& pattern) {
  const fs::path p(pattern);
  const fs::path dir = p.has_parent_path() ? p.parent_path() : fs::path(".");
  const std::string name = p.filename().string();
  if (name.find('*') == std::string::npos) {
    return fs::exists(p) ? std::vector<fs::path>{p} : std::vector<fs::path>{};
  }

  auto matches = [&name](const std::string& candidate) {
    // Greedy segment match: candidate must contain the '*'-separated pieces
    // in order, anchored at both ends.
    std::vector<std::string> parts;
    std::string::size_type pos = 0;
    while (true) {
      const auto star = name.find('*', pos);
      parts.push_back(name.substr(pos, star - pos));
      if (star == std::string::npos) break;
      pos = star + 1;
    }
    std::string::size_type at = 0;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      const auto& part = parts[i];
      if (part.empty()) continue;
      const auto found = candidate.find(part, at);
      if (found == std::string::npos) return false;
      if (i == 0 && found != 0) return false;
      at = found + part.size();
    }
    if (!parts.back().empty() && at != candidate.size()) return false;
    return true;
  };

  std::vector<fs::path> out;
  if (!fs::is_directory(dir)) return out;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.is_regular_file() && matches(entry.path().filename().string())) {
      out.push_back(entry.path());
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

int cmd_run(const std::string& scenario_path, const CommonFlags& flags,
            const std::string& log_path, const std::string& report_path) {
  const auto s = load_scenario(scenario_path);
  const auto options = flags.to_options();

  hexpick::sim::TrajectoryLog log;
  const auto report = hexpick::episode::run_episode(s, options, &log);

  const fs::path stem = fs::path(scenario_path).stem();
  const std::string log_out = log_path.empty() ? stem.string() + "_trajectory.csv" : log_path;
  const std::string report_out = report_path.empty() ? stem.string() + "_report.json" : report_path;

  {
    std::ofstream out(log_out);
    if (!out) throw hexpick::Error("cannot write log: " + log_out);
    log.write(out);
  }
  {
    std::ofstream out(report_out);
    if (!out) throw hexpick::Error("cannot write report: " + report_out);
    out << report_to_json(report).dump(2) << "\n";
  }

  print_report(report, std::cout);
  std::cout << "log:             " << log_out << "\n";
  std::cout << "report:          " << report_out << "\n";
  return report.picked ? 0 : 2;
}

int cmd_batch(const std::string& pattern, int n_seeds, const CommonFlags& flags,
              const std::string& report_path) {
  const auto paths = expand_glob(pattern);
  if (paths.empty()) {
    throw hexpick::Error("batch: no scenarios match '" + pattern + "'");
  }

  std::vector<hexpick::episode::BatchEpisode> episodes;
  for (const auto& path : paths) {
    hexpick::scenario::Scenario s;
    try {
      s = load_scenario(path.string());
    } catch (const std::exception& e) {
      hexpick::episode::BatchEpisode bad;
      bad.scenario_name = path.string();
      bad.error = e.what();
      episodes.push_back(std::move(bad));
      continue;
    }
    for (int i = 0; i < n_seeds; ++i) {
      hexpick::episode::BatchEpisode ep;
      ep.scenario_name = path.string();
      ep.seed = s.seed + static_cast<std::uint64_t>(i);
      auto options = flags.to_options();
      options.seed = ep.seed;
      try {
        ep.report = hexpick::episode::run_episode(s, options, nullptr);
      } catch (const std::exception& e) {
        ep.error = e.what();
      }
      episodes.push_back(std::move(ep));
    }
  }

  const auto batch = hexpick::episode::aggregate(std::move(episodes));
  std::cout << "episodes:        " << batch.episodes.size() << "\n";
  std::cout << "pick rate:       " << batch.pick_rate << "\n";
  std::cout << "mean time:       " << batch.mean_time_to_pick_s << " s\n";
  std::cout << "mean path:       " << batch.mean_path_length_m << " m\n";
  for (const auto& e : batch.episodes) {
    if (!e.error.empty()) {
      std::cout << "error:           " << e.scenario_name << " seed " << e.seed << ": " << e.error
                << "\n";
    }
  }

  if (!report_path.empty()) {
    json j;
    j["pick_rate"] = batch.pick_rate;
    j["mean_time_to_pick_s"] = batch.mean_time_to_pick_s;
    j["mean_path_length_m"] = batch.mean_path_length_m;
    j["episodes"] = json::array();
    for (const auto& e : batch.episodes) {
      json je;
      je["scenario"] = e.scenario_name;
      je["seed"] = e.seed;
      if (e.report) je["report"] = report_to_json(*e.report);
      if (!e.error.empty()) je["error"] = e.error;
      j["episodes"].push_back(je);
    }
    std::ofstream out(report_path);
    if (!out) throw hexpick::Error("cannot write report: " + report_path);
    out << j.dump(2) << "\n";
  }
  return 0;
}

int cmd_calibrate(double distance, const std::string& grid_spec,
                  const std::string& scenario_path, const std::string& out_path) {
  std::vector<double> azimuths;
  {
    // "start:step:stop" or a comma-separated list
    const auto colon = grid_spec.find(':');
    if (colon != std::string::npos) {
      double start, step, stop;
      char c1, c2;
      std::istringstream in(grid_spec);
      if (!(in >> start >> c1 >> step >> c2 >> stop) || c1 != ':' || c2 != ':' || step <= 0.0) {
        throw hexpick::Error("calibrate: bad grid spec '" + grid_spec + "'");
      }
      for (double a = start; a <= stop + 1e-9; a += step) azimuths.push_back(a);
    } else {
      std::istringstream in(grid_spec);
      std::string item;
      while (std::getline(in, item, ',')) azimuths.push_back(std::stod(item));
    }
  }

  hexpick::scenario::Scenario base;
  if (!scenario_path.empty()) base = load_scenario(scenario_path);

  const auto table = hexpick::episode::calibrate_steering(distance, azimuths, base);
  if (out_path.empty()) {
    hexpick::gait::write_calibration(table, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw hexpick::Error("cannot write calibration table: " + out_path);
    hexpick::gait::write_calibration(table, out);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_swoop_table(const std::string& out_path) {
  const hexpick::gait::BuehlerClock clock;
  const hexpick::gait::ToeTrajectory toe;
  const auto table = hexpick::gait::swoop_plan(clock, toe);
  if (out_path.empty()) {
    hexpick::gait::write_gait_table(table, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) throw hexpick::Error("cannot write gait table: " + out_path);
    hexpick::gait::write_gait_table(table, out);
    std::cout << "wrote " << out_path << "\n";
  }
  return 0;
}

int cmd_render(const std::string& scenario_path, const std::string& ppm_path,
               const std::string& depth_path) {
  const auto s = load_scenario(scenario_path);
  hexpick::sim::World world(hexpick::scenario::make_world(s),
                            hexpick::scenario::make_sim_config(s));
  const auto frame =
      hexpick::perception::render_frame(world.state(), s.camera, world.state().robot);
  if (!ppm_path.empty()) {
    std::ofstream out(ppm_path, std::ios::binary);
    if (!out) throw hexpick::Error("cannot write ppm: " + ppm_path);
    hexpick::perception::write_ppm(frame, out);
  }
  if (!depth_path.empty()) {
    std::ofstream out(depth_path, std::ios::binary);
    if (!out) throw hexpick::Error("cannot write depth: " + depth_path);
    hexpick::perception::write_depth_f32(frame, out);
  }
  const auto detection = hexpick::perception::detect_dandelion(frame, s.camera);
  if (detection) {
    std::cout << "detection: azimuth=" << detection->azimuth_deg
              << " elevation=" << detection->elevation_deg
              << " distance=" << detection->distance_m << "\n";
  } else {
    std::cout << "detection: none\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"hexpick: hexapod dandelion-picking simulator"};
  app.require_subcommand(1);

  std::string scenario_path, log_path, report_path, pattern, grid = "0:3:27";
  std::string ppm_path, depth_path, out_path;
  int n_seeds = 1;
  double distance = 1.5;
  CommonFlags flags;

  auto* run = app.add_subcommand("run", "Run one scenario episode");
  run->add_option("scenario", scenario_path, "Scenario file")->required();
  run->add_option("--log", log_path, "Trajectory log output path");
  run->add_option("--report", report_path, "Machine-readable report path");
  add_common_flags(run, &flags);

  auto* batch = app.add_subcommand("batch", "Run scenarios x seeds and aggregate");
  batch->add_option("glob", pattern, "Scenario glob (e.g. 'scenarios/arc_*.txt')")->required();
  batch->add_option("--seeds", n_seeds, "Seeds per scenario")->check(CLI::PositiveNumber);
  batch->add_option("--report", report_path, "Machine-readable report path");
  add_common_flags(batch, &flags);

  auto* calibrate = app.add_subcommand("calibrate", "Regenerate the steering calibration table");
  calibrate->add_option("--distance", distance, "Arc distance in meters");
  calibrate->add_option("--azimuths", grid, "Grid: start:step:stop or comma list");
  calibrate->add_option("--scenario", scenario_path, "Base scenario for rig parameters");
  calibrate->add_option("--out", out_path, "Output table path (stdout when omitted)");

  auto* swoop = app.add_subcommand("swoop-table", "Write the swoop gait table CSV");
  swoop->add_option("--out", out_path, "Output path (stdout when omitted)");

  auto* render = app.add_subcommand("render", "Render a scenario's first frame");
  render->add_option("scenario", scenario_path, "Scenario file")->required();
  render->add_option("--ppm", ppm_path, "Color dump (binary PPM)");
  render->add_option("--depth", depth_path, "Depth dump (raw float32)");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run->parsed()) return cmd_run(scenario_path, flags, log_path, report_path);
    if (batch->parsed()) return cmd_batch(pattern, n_seeds, flags, report_path);
    if (calibrate->parsed()) return cmd_calibrate(distance, grid, scenario_path, out_path);
    if (swoop->parsed()) return cmd_swoop_table(out_path);
    if (render->parsed()) return cmd_render(scenario_path, ppm_path, depth_path);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
