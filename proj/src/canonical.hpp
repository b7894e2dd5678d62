#pragma once
// Internal: the "finder frame" every policy evaluator works in.
//
// The robot that reaches an exit first is relabelled so that it walks
// counterclockwise from B = ζ/2 and its partner walks clockwise from
// C = -ζ/2. When the original finder is R2 the whole picture is mirrored
// across the x-axis.

#include <algorithm>
#include <array>
#include <cmath>

#include "evac/geometry.hpp"
#include "evac/scenario.hpp"

namespace evac::detail {

/// Perimeter walk from `from` to `to` in `dir`; a target within the angular
/// tolerance of the start counts as reached immediately.
[[nodiscard]] inline double walk_to(ArcPos from, ArcPos to, Direction dir) noexcept {
  return same_point(from, to) ? 0.0 : arc_between(from, to, dir);
}

struct FinderFrame {
  double d = 0.0;
  double zeta = 0.0;
  ArcPos b;       ///< finder start
  ArcPos c;       ///< partner start
  ArcPos found;   ///< X
  ArcPos other;   ///< the exit the finder did not reach
  double x = 0.0;
  bool swapped = false;       ///< finder is R2 of the original scenario
  bool simultaneous = false;  ///< both robots reach an exit at the same instant
  double partner_x = 0.0;     ///< partner's first exit walk

  [[nodiscard]] ArcPos to_world(ArcPos p) const noexcept { return swapped ? p.reflected() : p; }
  [[nodiscard]] Point2 to_world(Point2 p) const noexcept { return swapped ? reflected(p) : p; }

  /// Partner position after walking `p` clockwise from C.
  [[nodiscard]] ArcPos partner_at(double p) const noexcept { return c.advanced(p, Direction::CW); }
  /// Finder position after walking `s` counterclockwise from B.
  [[nodiscard]] ArcPos finder_at(double s) const noexcept { return b.advanced(s, Direction::CCW); }
  /// How far the partner walks before standing on `p`.
  [[nodiscard]] double partner_walk(ArcPos p) const noexcept { return walk_to(c, p, Direction::CW); }
  [[nodiscard]] double finder_walk(ArcPos p) const noexcept { return walk_to(b, p, Direction::CCW); }
};

inline constexpr double kSimultaneityTol = 1e-9;

[[nodiscard]] inline FinderFrame make_finder_frame(const Scenario& s) {
  const ArcPos b = s.start_r1();
  const ArcPos c = s.start_r2();
  const std::array<ArcPos, 2> exits{s.e1, s.e2()};

  const double r1_e1 = walk_to(b, exits[0], Direction::CCW);
  const double r1_e2 = walk_to(b, exits[1], Direction::CCW);
  const double r2_e1 = walk_to(c, exits[0], Direction::CW);
  const double r2_e2 = walk_to(c, exits[1], Direction::CW);
  const double t1 = std::min(r1_e1, r1_e2);
  const double t2 = std::min(r2_e1, r2_e2);

  FinderFrame f;
  f.d = s.d;
  f.zeta = s.zeta;
  f.simultaneous = std::abs(t1 - t2) <= kSimultaneityTol;
  f.swapped = !f.simultaneous && t2 < t1;
  f.b = ArcPos{s.zeta / 2.0};
  f.c = ArcPos{-s.zeta / 2.0};
  int found_index = 0;
  if (!f.swapped) {
    f.x = t1;
    f.partner_x = t2;
    found_index = r1_e1 <= r1_e2 ? 0 : 1;
    f.found = exits[found_index];
    f.other = exits[1 - found_index];
  } else {
    f.x = t2;
    f.partner_x = t1;
    found_index = r2_e1 <= r2_e2 ? 0 : 1;
    f.found = exits[found_index].reflected();
    f.other = exits[1 - found_index].reflected();
  }
  return f;
}

/// Fills the per-robot fields of a result from finder/partner exit times.
inline void assign_exit_times(const FinderFrame& f, double finder_time, double partner_time, EvacResult& r) {
  r.r1_exit_time = f.swapped ? partner_time : finder_time;
  r.r2_exit_time = f.swapped ? finder_time : partner_time;
  r.time_from_perimeter = std::max(finder_time, partner_time);
  r.discovery_arc_x = f.x;
  r.simultaneous = f.simultaneous;
}

}  // namespace evac::detail
