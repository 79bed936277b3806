#pragma once

#include <iosfwd>
#include <vector>

#include "hexpick/gait.hpp"
#include "hexpick/toe_trajectory.hpp"

namespace hexpick::gait {

/// Whether a table's stamp column is gait phase in [0, 1] (synthesized
/// tables) or seconds (recorded ones). Serialized as a `# stamps=...` header
/// field; files without one are read as seconds.
enum class StampKind { Phase, Seconds };

struct GaitTableRow {
  double stamp = 0.0;
  ShaftAngles angles;
};

/// A replayable motion primitive: keyframed motor positions with strictly
/// increasing stamps.
struct GaitTable {
  StampKind stamp_kind = StampKind::Seconds;
  std::vector<GaitTableRow> rows;

  /// Linear interpolation between keyframes; clamps outside the stamp range.
  ShaftAngles sample(double stamp) const;

  double duration() const { return rows.empty() ? 0.0 : rows.back().stamp; }
};

/// CSV round trip. Format: optional `# stamps=phase|seconds` line, header
/// `stamp,FL,FR,ML,MR,HL,HR`, then one row per keyframe, angles in degrees.
/// read_gait_table throws ParseError naming the offending row on arity
/// errors, bad numbers, or non-monotone stamps.
GaitTable read_gait_table(std::istream& in);
void write_gait_table(const GaitTable& table, std::ostream& out);

/// Keyframed swoop primitive (stamps are phase in [0, 1]). The five stages:
/// (a) all legs near the recovery apex, chassis low and level ("slack");
/// (b) the hind pair reaches the lowest toe point, pitching the chassis
///     nose-down;
/// (c, d) front and hind pairs move in opposite directions while the hind
///     pair pushes through stance, sweeping the cutting appendage through
///     the bottom of its arc;
/// (e) the mid legs are swiftly lowered while the hind legs push slightly
///     forward, raising the appendage again.
/// Left/right contralateral pairs are commanded identically in every row.
GaitTable swoop_plan(const BuehlerClock& clock, const ToeTrajectory& traj);

}  // namespace hexpick::gait
