#include "evac/geometry.hpp"

#include <algorithm>
#include <string>

namespace evac {

double normalize_angle(double theta) noexcept {
  if (theta >= 0.0 && theta < kTwoPi) return theta;
  double r = std::fmod(theta, kTwoPi);
  if (r < 0.0) r += kTwoPi;
  // fmod of a tiny negative value can round back up to exactly 2π
  return r >= kTwoPi ? 0.0 : r;
}

double chord_length(double arc) {
  if (!(arc >= 0.0 && arc <= kTwoPi)) {
    throw DomainError("chord_length: arc " + std::to_string(arc) + " outside [0, 2pi]");
  }
  return 2.0 * std::sin(arc / 2.0);
}

double arc_between(ArcPos a, ArcPos b, Direction dir) noexcept {
  const double delta = dir == Direction::CCW ? b.theta() - a.theta() : a.theta() - b.theta();
  return normalize_angle(delta);
}

double circular_distance(ArcPos a, ArcPos b) noexcept {
  const double ccw = arc_between(a, b, Direction::CCW);
  return std::min(ccw, kTwoPi - ccw);
}

Point2 cartesian(ArcPos p) noexcept { return {std::cos(p.theta()), std::sin(p.theta())}; }

double chord_between(ArcPos a, ArcPos b) noexcept { return 2.0 * std::sin(circular_distance(a, b) / 2.0); }

bool on_arc(ArcPos p, ArcPos from, double length, Direction dir, double tol) noexcept {
  if (length >= kTwoPi - tol) return true;
  const double along = arc_between(from, p, dir);
  return along <= length + tol || along >= kTwoPi - tol;
}

CandidateExits candidate_exits(ArcPos found, double d) {
  if (!(d >= 0.0 && d <= kPi)) {
    throw DomainError("candidate_exits: d " + std::to_string(d) + " outside [0, pi]");
  }
  CandidateExits c;
  c.e1_prime = found.advanced(d, Direction::CW);
  c.e2_prime = found.advanced(d, Direction::CCW);
  c.coincident = same_point(c.e1_prime, c.e2_prime);
  return c;
}

}  // namespace evac

namespace evac {

std::optional<double> first_contact(const LinearMotion& a, const LinearMotion& b, double tol) noexcept {
  const double lo = std::max(a.t0, b.t0);
  const double hi = std::min(a.t1, b.t1);
  if (lo > hi) return std::nullopt;
  const auto velocity = [](const LinearMotion& m) {
    return m.t1 > m.t0 ? (m.to - m.from) * (1.0 / (m.t1 - m.t0)) : Point2{};
  };
  // Relative position r(t) = r0 + w (t - lo) on [lo, hi].
  const Point2 r0 = a.at(lo) - b.at(lo);
  const Point2 w = velocity(a) - velocity(b);
  const double ww = w.x * w.x + w.y * w.y;
  const double rw = r0.x * w.x + r0.y * w.y;
  const double rr = r0.x * r0.x + r0.y * r0.y;
  if (rr <= tol * tol) return lo;
  if (ww <= 0.0) return std::nullopt;
  const double s = std::clamp(-rw / ww, 0.0, hi - lo);
  if (norm(r0 + w * s) > tol) return std::nullopt;
  return lo + s;
}

}  // namespace evac
