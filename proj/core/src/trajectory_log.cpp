#include "hexpick/trajectory_log.hpp"

#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "hexpick/errors.hpp"
#include "number_format.hpp"

namespace hexpick::sim {

namespace {
constexpr const char* kHeader = "t,x,y,heading,height,pitch,state,T,detect_az,detect_el,detect_d";
}

void TrajectoryLog::write(std::ostream& out) const {
  out << kHeader << "\n";
  using detail::format_double;
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const auto& row : rows_) {
    const double az = row.detection ? row.detection->azimuth_deg : nan;
    const double el = row.detection ? row.detection->elevation_deg : nan;
    const double d = row.detection ? row.detection->distance_m : nan;
    out << format_double(row.t_s) << ',' << format_double(row.pose.x_m) << ','
        << format_double(row.pose.y_m) << ',' << format_double(row.pose.heading_deg) << ','
        << format_double(row.pose.height_m) << ',' << format_double(row.pose.pitch_deg) << ','
        << row.state << ',' << format_double(row.turn_value) << ',' << format_double(az) << ','
        << format_double(el) << ',' << format_double(d) << '\n';
  }
}

TrajectoryLog TrajectoryLog::read(std::istream& in) {
  TrajectoryLog log;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (!header_seen) {
      if (line != kHeader) {
        throw ParseError("trajectory log: unexpected header", lineno);
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 11) {
      throw ParseError("trajectory log: expected 11 columns", lineno);
    }
    LogRow r;
    try {
      r.t_s = std::stod(fields[0]);
      r.pose.x_m = std::stod(fields[1]);
      r.pose.y_m = std::stod(fields[2]);
      r.pose.heading_deg = std::stod(fields[3]);
      r.pose.height_m = std::stod(fields[4]);
      r.pose.pitch_deg = std::stod(fields[5]);
      r.state = fields[6];
      r.turn_value = std::stod(fields[7]);
      const double az = std::stod(fields[8]);
      const double el = std::stod(fields[9]);
      const double d = std::stod(fields[10]);
      if (!std::isnan(az) && !std::isnan(d)) {
        r.detection = geometry::SphericalTarget{az, el, d};
      }
    } catch (const std::exception&) {
      throw ParseError("trajectory log: bad number", lineno);
    }
    log.rows_.push_back(std::move(r));
  }
  if (!header_seen) {
    throw ParseError("trajectory log: missing header", lineno == 0 ? 1 : lineno);
  }
  return log;
}

}  // namespace hexpick::sim
