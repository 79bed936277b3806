#include "hexpick/gait.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "hexpick/angles.hpp"
#include "hexpick/errors.hpp"
#include "number_format.hpp"

namespace hexpick::gait {

namespace {
constexpr double kMaxTurnValue = 0.3;
}

double buehler_clock(double phase, const BuehlerClock& clock) {
  if (clock.duty_factor <= 0.0 || clock.duty_factor >= 1.0) {
    throw std::domain_error("buehler_clock: duty_factor must be in (0, 1)");
  }
  if (clock.stance_sweep_deg <= 0.0 || clock.stance_sweep_deg >= 360.0) {
    throw std::domain_error("buehler_clock: stance_sweep must be in (0, 360)");
  }

  const double winds = std::floor(phase);
  const double f = phase - winds;
  const double sweep = clock.stance_sweep_deg;
  const double start = clock.stance_center_deg - sweep / 2.0;

  double angle;
  if (f < clock.duty_factor) {
    angle = start + sweep * (f / clock.duty_factor);
  } else {
    angle = start + sweep +
            (360.0 - sweep) * ((f - clock.duty_factor) / (1.0 - clock.duty_factor));
  }
  return angle + 360.0 * winds;
}

ShaftAngles shaft_angles(double phase, const GaitParams& params, const BuehlerClock& clock) {
  const double perturbation = params.steer_param * params.k_s;
  if (std::abs(perturbation) >= 0.5) {
    throw std::domain_error("shaft_angles: |s * k_s| must be < 0.5");
  }

  const double wobble = perturbation * std::cos(2.0 * kPi * phase);
  ShaftAngles out;
  out.fl = buehler_clock(phase, clock);
  out.hl = out.fl;
  out.fr = buehler_clock(phase + 0.5, clock);
  out.hr = out.fr;
  out.ml = buehler_clock(0.5 + phase + wobble, clock);
  out.mr = buehler_clock(phase - wobble, clock);
  return out;
}

double CalibrationTable::lookup(double azimuth_deg) const {
  if (azimuth_deg == 0.0) return 0.0;
  const double a = std::abs(azimuth_deg);
  const double sign = azimuth_deg < 0.0 ? -1.0 : 1.0;
  if (points.empty()) return 0.0;

  double t;
  if (a <= points.front().first) {
    // Hold the first grid value all the way down: steering keeps a slight
    // bite near zero azimuth, which is what produces the deliberate small
    // overshoots instead of an asymptotic creep onto the bearing.
    t = points.front().second;
  } else if (a >= points.back().first) {
    t = points.back().second;
  } else {
    auto hi = std::upper_bound(points.begin(), points.end(), a,
                               [](double v, const auto& p) { return v < p.first; });
    auto lo = hi - 1;
    const double span = hi->first - lo->first;
    const double w = span > 0.0 ? (a - lo->first) / span : 0.0;
    t = lo->second + w * (hi->second - lo->second);
  }
  return sign * std::clamp(t, -kMaxTurnValue, kMaxTurnValue);
}

CalibrationTable default_calibration() {
  // Sweep output at distance 1.50 m, azimuth grid 3..27 deg step 3, turn-value
  // grid step 0.005 plus a 0.03 overshoot margin (regenerate with
  // `hexpick calibrate --distance 1.5 --azimuths 0:3:27`). The 0-azimuth row
  // is dropped so lookups floor at the 3-degree value.
  return CalibrationTable{{
      {3.0, 0.04},
      {6.0, 0.05},
      {9.0, 0.06},
      {12.0, 0.07},
      {15.0, 0.08},
      {18.0, 0.085},
      {21.0, 0.095},
      {24.0, 0.105},
      {27.0, 0.115},
  }};
}

CalibrationTable read_calibration(std::istream& in) {
  CalibrationTable table;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line[0] == '#') continue;
    if (!header_seen) {
      if (line != "azimuth,T") {
        throw ParseError("calibration table: expected header 'azimuth,T'", lineno);
      }
      header_seen = true;
      continue;
    }
    std::istringstream row(line);
    double a, t;
    char comma;
    if (!(row >> a >> comma >> t) || comma != ',') {
      throw ParseError("calibration table: malformed row", lineno);
    }
    if (a < 0.0) {
      throw ParseError("calibration table: azimuths must be nonnegative", lineno);
    }
    if (!table.points.empty() && a <= table.points.back().first) {
      throw ParseError("calibration table: azimuths must be strictly increasing", lineno);
    }
    table.points.emplace_back(a, t);
  }
  if (!header_seen) {
    throw ParseError("calibration table: missing header", lineno == 0 ? 1 : lineno);
  }
  return table;
}

void write_calibration(const CalibrationTable& table, std::ostream& out) {
  out << "azimuth,T\n";
  for (const auto& [a, t] : table.points) {
    out << detail::format_double(a) << ',' << detail::format_double(t) << '\n';
  }
}

double steer_turn_value_from_azimuth(double azimuth_deg, const CalibrationTable& table) {
  return table.lookup(azimuth_deg);
}

double required_arc_radius(double azimuth_deg, double range_m) {
  if (range_m <= 0.0) {
    throw std::domain_error("required_arc_radius: target coincides with the start point");
  }
  const double sin_a = std::abs(std::sin(deg_to_rad(azimuth_deg)));
  if (sin_a < 1e-12) return std::numeric_limits<double>::infinity();
  return range_m / (2.0 * sin_a);
}

SteerSolution turn_value_from_steer_param(double azimuth_deg, double range_m,
                                          const GaitParams& params,
                                          const std::function<double(double)>& radius_of_turn) {
  const double wanted = required_arc_radius(azimuth_deg, range_m);
  if (std::isinf(wanted)) return {0.0, 0.0};

  const double sign = azimuth_deg < 0.0 ? -1.0 : 1.0;
  const double s_max = kMaxTurnValue / params.k_s;
  if (radius_of_turn(kMaxTurnValue) > wanted) {
    throw std::domain_error("turn_value_from_steer_param: required radius below the minimum "
                            "radius at |T| = 0.3");
  }

  // radius_of_turn is monotone decreasing in |T| = s * k_s, so bisect on s.
  double lo = 0.0;          // radius(lo) = inf > wanted
  double hi = s_max;        // radius(hi) <= wanted
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double r = radius_of_turn(mid * params.k_s);
    if (r > wanted) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double s = 0.5 * (lo + hi);
  return {sign * s, sign * s * params.k_s};
}

}  // namespace hexpick::gait
