#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "hexpick/geometry.hpp"
#include "hexpick/simulator.hpp"

namespace hexpick::sim {

/// One record per simulation tick: pose, active controller mode, commanded
/// turn value, and the detection (if any) that drove the command.
struct LogRow {
  double t_s = 0.0;
  ChassisState pose;
  std::string state;  // controller mode name
  double turn_value = 0.0;
  std::optional<geometry::SphericalTarget> detection;
};

/// Append-only episode log, lossless for replay. CSV columns:
/// t,x,y,heading,height,pitch,state,T,detect_az,detect_el,detect_d
/// (missing detections serialize as nan).
class TrajectoryLog {
 public:
  void append(LogRow row) { rows_.push_back(std::move(row)); }
  const std::vector<LogRow>& rows() const { return rows_; }

  void write(std::ostream& out) const;
  static TrajectoryLog read(std::istream& in);

 private:
  std::vector<LogRow> rows_;
};

}  // namespace hexpick::sim
