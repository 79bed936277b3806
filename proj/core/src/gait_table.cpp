#include "hexpick/gait_table.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include "hexpick/errors.hpp"
#include "number_format.hpp"

namespace hexpick::gait {

ShaftAngles GaitTable::sample(double stamp) const {
  if (rows.empty()) return {};
  if (stamp <= rows.front().stamp) return rows.front().angles;
  if (stamp >= rows.back().stamp) return rows.back().angles;

  auto hi = std::upper_bound(rows.begin(), rows.end(), stamp,
                             [](double v, const GaitTableRow& r) { return v < r.stamp; });
  auto lo = hi - 1;
  const double w = (stamp - lo->stamp) / (hi->stamp - lo->stamp);
  auto lerp = [w](double a, double b) { return a + w * (b - a); };
  ShaftAngles out;
  out.fl = lerp(lo->angles.fl, hi->angles.fl);
  out.fr = lerp(lo->angles.fr, hi->angles.fr);
  out.ml = lerp(lo->angles.ml, hi->angles.ml);
  out.mr = lerp(lo->angles.mr, hi->angles.mr);
  out.hl = lerp(lo->angles.hl, hi->angles.hl);
  out.hr = lerp(lo->angles.hr, hi->angles.hr);
  return out;
}

GaitTable read_gait_table(std::istream& in) {
  GaitTable table;
  std::string line;
  std::size_t lineno = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (line.find("stamps=phase") != std::string::npos) {
        table.stamp_kind = StampKind::Phase;
      } else if (line.find("stamps=seconds") != std::string::npos) {
        table.stamp_kind = StampKind::Seconds;
      }
      continue;
    }
    if (!header_seen) {
      if (line != "stamp,FL,FR,ML,MR,HL,HR") {
        throw ParseError("gait table: expected header 'stamp,FL,FR,ML,MR,HL,HR'", lineno);
      }
      header_seen = true;
      continue;
    }

    std::istringstream row(line);
    double v[7];
    std::string field;
    int n = 0;
    while (std::getline(row, field, ',')) {
      if (n >= 7) {
        throw ParseError("gait table: row has more than 7 columns", lineno);
      }
      std::size_t used = 0;
      try {
        v[n] = std::stod(field, &used);
      } catch (const std::exception&) {
        throw ParseError("gait table: bad number '" + field + "'", lineno);
      }
      if (used != field.size()) {
        throw ParseError("gait table: bad number '" + field + "'", lineno);
      }
      ++n;
    }
    if (n != 7) {
      throw ParseError("gait table: expected 7 columns, got " + std::to_string(n), lineno);
    }
    if (!table.rows.empty() && v[0] <= table.rows.back().stamp) {
      throw ParseError("gait table: stamps must be strictly increasing", lineno);
    }
    table.rows.push_back({v[0], {v[1], v[2], v[3], v[4], v[5], v[6]}});
  }
  if (!header_seen) {
    throw ParseError("gait table: missing header", lineno == 0 ? 1 : lineno);
  }
  return table;
}

void write_gait_table(const GaitTable& table, std::ostream& out) {
  out << "# stamps=" << (table.stamp_kind == StampKind::Phase ? "phase" : "seconds") << "\n";
  out << "stamp,FL,FR,ML,MR,HL,HR\n";
  using detail::format_double;
  for (const auto& row : table.rows) {
    out << format_double(row.stamp) << ',' << format_double(row.angles.fl) << ','
        << format_double(row.angles.fr) << ',' << format_double(row.angles.ml) << ','
        << format_double(row.angles.mr) << ',' << format_double(row.angles.hl) << ','
        << format_double(row.angles.hr) << '\n';
  }
}

GaitTable swoop_plan(const BuehlerClock& clock, const ToeTrajectory&) {
  const double sweep = clock.stance_sweep_deg;
  const double center = clock.stance_center_deg;
  const double apex = center + 180.0;            // mid-recovery, toe at its highest
  const double stance_start = center - sweep / 2.0;
  const double stance_end = center + sweep / 2.0;
  const double dip = 30.0;  // front-pair sweep around the apex that rounds the nadir

  // The hind pair winds forward from the apex through the next stance, so its
  // targets carry the +360 wind. The front pair rocks backward through the
  // apex while the hind pushes forward ("opposite directions").
  auto row = [](double stamp, double f, double m, double h) {
    return GaitTableRow{stamp, {f, f, m, m, h, h}};
  };

  GaitTable table;
  table.stamp_kind = StampKind::Phase;
  const double hind_land = stance_start + 360.0;
  const double hind_done = stance_end + 360.0;
  // The front pair crosses its apex just after the hind pair lands, so the
  // appendage bottoms out while the body still sits at its rearmost point of
  // the maneuver; the hind stance push then sweeps the vertex forward through
  // the bottom of the arc.
  // The mid pair lands 10 degrees short of mid-stance so its contact stays
  // ahead of the chassis origin; a contact exactly under the origin leaves
  // the rest pitch indeterminate.
  const double mid_land = center + 350.0;
  table.rows = {
      row(0.00, apex + dip, apex, apex),                                   // (a) slack
      row(0.20, apex + dip, apex, hind_land),                              // (b) nose-down
      row(0.24, apex, apex, hind_land + (0.04 / 0.35) * sweep),            // (c) nadir
      row(0.55, apex - dip, apex, hind_done),                              // (d) push through
      row(0.80, apex - dip, mid_land, hind_done + 15.0),                   // (e) mids down
      row(1.00, apex - dip, mid_land, hind_done + 25.0),                   // (e) settle
  };
  return table;
}

}  // namespace hexpick::gait
