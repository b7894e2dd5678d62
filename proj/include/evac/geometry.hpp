#pragma once
/**
 * @file geometry.hpp
 * @brief Arc/chord arithmetic on the unit disk.
 *
 * Perimeter points are angles measured counterclockwise from A, the point
 * on the positive x-axis (disk center at the origin). Arc lengths and angles
 * coincide because the radius is 1.
 */

#include <cmath>
#include <numbers>
#include <optional>
#include <stdexcept>

namespace evac {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// Two perimeter points closer than this (radians) are the same point.
inline constexpr double kAngularTol = 1e-9;

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

enum class Direction { CW, CCW };

[[nodiscard]] constexpr double sign_of(Direction dir) noexcept { return dir == Direction::CCW ? 1.0 : -1.0; }
[[nodiscard]] constexpr Direction opposite(Direction dir) noexcept {
  return dir == Direction::CCW ? Direction::CW : Direction::CCW;
}

/// Wraps an angle into [0, 2π).
[[nodiscard]] double normalize_angle(double theta) noexcept;

/// A point on the perimeter.
class ArcPos {
 public:
  constexpr ArcPos() noexcept = default;
  explicit ArcPos(double theta) noexcept : theta_(normalize_angle(theta)) {}

  [[nodiscard]] constexpr double theta() const noexcept { return theta_; }

  /// The point reached after travelling `arc` along the perimeter in `dir`.
  [[nodiscard]] ArcPos advanced(double arc, Direction dir) const noexcept {
    return ArcPos{theta_ + sign_of(dir) * arc};
  }

  /// Mirror image across the x-axis.
  [[nodiscard]] ArcPos reflected() const noexcept { return ArcPos{-theta_}; }

 private:
  double theta_ = 0.0;
};

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  constexpr Point2 operator+(const Point2& r) const noexcept { return {x + r.x, y + r.y}; }
  constexpr Point2 operator-(const Point2& r) const noexcept { return {x - r.x, y - r.y}; }
  constexpr Point2 operator*(double s) const noexcept { return {x * s, y * s}; }
};

[[nodiscard]] inline double norm(const Point2& p) noexcept { return std::hypot(p.x, p.y); }
[[nodiscard]] inline double distance(const Point2& a, const Point2& b) noexcept { return norm(a - b); }
[[nodiscard]] inline Point2 lerp(const Point2& a, const Point2& b, double t) noexcept { return a + (b - a) * t; }
[[nodiscard]] inline Point2 reflected(const Point2& p) noexcept { return {p.x, -p.y}; }

/// Uniform straight-line motion from `from` at time t0 to `to` at time t1.
struct LinearMotion {
  Point2 from;
  Point2 to;
  double t0 = 0.0;
  double t1 = 0.0;

  [[nodiscard]] Point2 at(double t) const noexcept {
    if (t1 <= t0) return to;
    const double u = (t - t0) / (t1 - t0);
    return lerp(from, to, u < 0.0 ? 0.0 : (u > 1.0 ? 1.0 : u));
  }
};

/// Time of closest approach of two moving points within their common time
/// window, if they come within `tol` of each other (the window start if they
/// are already that close).
[[nodiscard]] std::optional<double> first_contact(const LinearMotion& a, const LinearMotion& b, double tol) noexcept;

/// Length of the chord subtending a perimeter arc: 2·sin(arc/2).
/// Throws DomainError unless 0 ≤ arc ≤ 2π.
[[nodiscard]] double chord_length(double arc);

/// Travel length from `a` to `b` along the perimeter in `dir`, in [0, 2π).
[[nodiscard]] double arc_between(ArcPos a, ArcPos b, Direction dir) noexcept;

/// Length of the shorter of the two arcs joining `a` and `b`, in [0, π].
[[nodiscard]] double circular_distance(ArcPos a, ArcPos b) noexcept;

[[nodiscard]] Point2 cartesian(ArcPos p) noexcept;

/// Straight-line distance between two perimeter points.
[[nodiscard]] double chord_between(ArcPos a, ArcPos b) noexcept;

[[nodiscard]] inline bool same_point(ArcPos a, ArcPos b, double tol = kAngularTol) noexcept {
  return circular_distance(a, b) <= tol;
}

/// True when `p` lies on the closed arc that starts at `from` and runs
/// `length` radians in `dir`.
[[nodiscard]] bool on_arc(ArcPos p, ArcPos from, double length, Direction dir, double tol = kAngularTol) noexcept;

/// The two positions the second exit may occupy once one exit is known.
struct CandidateExits {
  ArcPos e1_prime;  ///< d clockwise of the found exit
  ArcPos e2_prime;  ///< d counterclockwise of the found exit
  bool coincident = false;
};

/// Requires 0 ≤ d ≤ π; throws DomainError otherwise.
[[nodiscard]] CandidateExits candidate_exits(ArcPos found, double d);

}  // namespace evac
