#pragma once

#include <functional>
#include <iosfwd>
#include <utility>
#include <vector>

namespace hexpick::gait {

/// Two-rate clock mapping gait phase to a motor shaft angle: a slow sweep of
/// stance_sweep degrees over duty_factor of the cycle (ground contact),
/// followed by a fast recovery sweep covering the remaining 360 - stance_sweep
/// degrees. The stance is centered on stance_center, so the clock starts each
/// cycle at stance_center - stance_sweep/2.
struct BuehlerClock {
  double duty_factor = 0.5;
  double stance_sweep_deg = 60.0;
  double stance_center_deg = 0.0;
};

/// Shaft angle for a given phase. Strictly increasing in unwrapped phase and
/// winds exactly once per cycle: b(phi + 1) = b(phi) + 360.
double buehler_clock(double phase, const BuehlerClock& clock);

/// Gait-level parameters: cycle frequency, the turn value T in [-0.3, 0.3]
/// commanded to the locomotion layer, the middle-leg steering parameter s,
/// and the steering gain k_s scaling how hard s perturbs the middle-leg
/// phase.
struct GaitParams {
  double frequency_hz = 0.16;
  double turn_value = 0.0;
  double steer_param = 0.0;
  double k_s = 0.2;
};

/// One shaft angle per leg, degrees. Legs are named Front/Middle/Hind and
/// Left/Right; shaft angles wind monotonically, so values are unbounded.
struct ShaftAngles {
  double fl = 0.0;
  double fr = 0.0;
  double ml = 0.0;
  double mr = 0.0;
  double hl = 0.0;
  double hr = 0.0;
};

/// Evaluates the alternating-tripod shaft angles with middle-leg steering:
///   psi_FL = psi_HL = b(phi)
///   psi_FR = psi_HR = b(phi + 1/2)
///   psi_ML = b(1/2 + phi + s k_s cos(2 pi phi))
///   psi_MR = b(phi - s k_s cos(2 pi phi))
/// Requires |s * k_s| < 0.5 so the phase perturbation cannot reorder the
/// cycle; throws std::domain_error otherwise.
ShaftAngles shaft_angles(double phase, const GaitParams& params, const BuehlerClock& clock);

/// Piecewise-linear azimuth -> turn value curve. Points cover azimuth >= 0 in
/// ascending order; lookups are odd-extended (T(-a) = -T(a)), interpolated,
/// and clamped to [-0.3, 0.3].
struct CalibrationTable {
  std::vector<std::pair<double, double>> points;  // (azimuth_deg, turn_value)

  double lookup(double azimuth_deg) const;
};

/// The shipped default curve, produced by the calibration sweep at 1.50 m
/// (see calibrate_steering) and frozen here. Regenerate with
/// `hexpick calibrate`.
CalibrationTable default_calibration();

/// Reads/writes the calibration table CSV (`azimuth,T` header, one point per
/// row, azimuths ascending and nonnegative). Throws ParseError on bad rows.
CalibrationTable read_calibration(std::istream& in);
void write_calibration(const CalibrationTable& table, std::ostream& out);

/// Turn value for steering toward a target at the given azimuth, via the
/// calibration curve. Odd in azimuth, monotone, clamped to [-0.3, 0.3].
double steer_turn_value_from_azimuth(double azimuth_deg, const CalibrationTable& table);

struct SteerSolution {
  double steer_param = 0.0;
  double turn_value = 0.0;
};

/// Radius of the circular arc that starts at the robot tangent to its heading
/// and passes through a target at (azimuth, horizontal range): R = r/(2 sin a).
/// Returns +infinity for azimuth 0 (straight line).
double required_arc_radius(double azimuth_deg, double range_m);

/// Solves for the steering parameter s whose arc passes through the target,
/// by bisection of |s| against the locomotion layer's arc-radius map
/// (radius_of_turn maps a turn value T to an unsigned arc radius; it must be
/// monotone decreasing in |T|). The turn value associated with s is
/// T = s * k_s. Throws std::domain_error when the required radius is below
/// the radius at |T| = 0.3 (unreachable) or when the target coincides with
/// the start point.
SteerSolution turn_value_from_steer_param(double azimuth_deg, double range_m,
                                          const GaitParams& params,
                                          const std::function<double(double)>& radius_of_turn);

}  // namespace hexpick::gait
