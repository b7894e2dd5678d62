#pragma once
/**
 * @file face_to_face.hpp
 * @brief Face-to-face model: robots exchange information only when they meet.
 *
 * Every decision function works in the deciding robot's own frame: it walks
 * counterclockwise from ζ/2 and its partner walks clockwise from −ζ/2. The
 * evaluators and the replay engine map between this frame and the world.
 */

#include <optional>
#include <vector>

#include "evac/geometry.hpp"
#include "evac/meeting.hpp"
#include "evac/scenario.hpp"

namespace evac {

enum class F2FVariant {
  SameStart,  ///< unlabeled, ζ = 0
  DiffStart,  ///< unlabeled, ζ = d
  Labeled,    ///< labeled exits, any ζ ≤ d
};

namespace f2f {

/// Two robots closer than this are at the same point.
inline constexpr double kMeetTol = 1e-6;

enum class Action {
  Exit,       ///< leave through the exit just found
  Chase,      ///< cut across a chord to catch the partner on the perimeter
  Intercept,  ///< cut across a chord to meet the partner on its own chord
};

/// A perimeter arc known to contain no exit besides the known ones.
struct ArcSpan {
  ArcPos from;
  double length = 0.0;
  Direction dir = Direction::CCW;
};

/// What one robot (or a pair that has met) knows about the exits.
struct Knowledge {
  std::vector<ArcPos> exits;  ///< known or deduced exits, first found first
  std::vector<ArcSpan> searched;
  std::vector<ArcPos> ruled_out;

  void merge(const Knowledge& other);
  [[nodiscard]] Knowledge reflected() const;
  [[nodiscard]] bool knows_exit(ArcPos p) const noexcept;
};

/// Positions where the exit that is not yet known may still be.
[[nodiscard]] std::vector<ArcPos> open_candidates(const Knowledge& k, double d);

/// Stops visited after a meeting (or after a robot has given up waiting for
/// one); the robots leave through the first real exit on the list.
/// With `allow_tour` a pair that knows one exit and two open candidates may
/// visit both candidates instead of returning to the known exit.
[[nodiscard]] std::vector<ArcPos> exit_route(Point2 at, const Knowledge& k, double d, bool allow_tour);

/// Length of a route from `at` up to the first stop that is one of `exits`.
/// Throws std::logic_error if no stop is an exit.
[[nodiscard]] double route_length(Point2 at, const std::vector<ArcPos>& stops, ArcPos exit_a, ArcPos exit_b);

struct Decision {
  Action action = Action::Exit;
  CaseTag tag = CaseTag::F0_S;
  double x = 0.0;
  ArcPos found;
  /// Meeting target: the catch point for Chase, N for Intercept.
  Point2 meet_point;
  double meet_time = 0.0;
  ArcPos catch_pos;  ///< Chase only; the partner reaches it after walking meet_time
  /// Intercept only: the exit the partner must have found, and the chord it
  /// is assumed to follow from there.
  ArcPos hypothesis;
  double hypothesis_walk = 0.0;
  Point2 hypothesis_target;
  Knowledge knowledge;  ///< what the robot knows right after deciding
};

/// Exact-time solver settings used by the decision functions.
struct SolveOptions {
  double meet_tol = kDefaultMeetTol;  ///< residual tolerance of the catch-up equation
  double chord_tol = 1e-12;           ///< tolerance for interception and recatch points
};

[[nodiscard]] Decision decide_same(double d, double x, const SolveOptions& opt = {});
[[nodiscard]] Decision decide_diff(double d, double x, const SolveOptions& opt = {});
/// `other` is the exit that was not found, in the deciding robot's frame.
[[nodiscard]] Decision decide_labeled(double d, double zeta, double x, ArcPos other, const SolveOptions& opt = {});
[[nodiscard]] Decision decide(F2FVariant v, double d, double zeta, double x, ArcPos other,
                              const SolveOptions& opt = {});

/// Point on the chord from `h` towards `target` where a robot leaving `from`
/// at time `t_from` meets a robot that left `h` at time `t_h`.
[[nodiscard]] Point2 chord_meeting_point(Point2 from, double t_from, Point2 h, double t_h, Point2 target, double tol);

/// Earliest q ≥ now with now + |at − P(q)| = q, where P(q) is the point a
/// robot walking from `start` in `dir` reaches after q.
[[nodiscard]] double recatch_time(Point2 at, double now, ArcPos start, Direction dir, double tol);

/// What a robot does after an expected meeting did not happen.
struct Recovery {
  bool chase = false;  ///< chase the partner to catch_pos, else follow route
  ArcPos catch_pos;
  double catch_time = 0.0;
  std::vector<ArcPos> route;
  Knowledge knowledge;
};

/// Own-frame recovery after missing the meeting planned in `dec`. Throws
/// std::logic_error when the miss has no consistent explanation.
[[nodiscard]] Recovery recover_after_miss(const Decision& dec, double d, double zeta, bool allow_tour,
                                          const SolveOptions& opt = {});

/// Mirror images across the x-axis; maps between the two robots' frames.
[[nodiscard]] Decision reflected(Decision dec);
[[nodiscard]] Recovery reflected(Recovery rec);

/// True when the variant lets a pair that met visit two open candidates.
[[nodiscard]] constexpr bool allows_tour(F2FVariant v) noexcept { return v == F2FVariant::SameStart; }

}  // namespace f2f

/// Throws WrongEvaluatorError unless the scenario is unlabeled with ζ = 0.
[[nodiscard]] EvacResult eval_f2f_same(const Scenario& s, double tol = kDefaultMeetTol);
/// Throws WrongEvaluatorError unless the scenario is unlabeled with ζ = d.
[[nodiscard]] EvacResult eval_f2f_diff(const Scenario& s, double tol = kDefaultMeetTol);
[[nodiscard]] EvacResult eval_f2f_labeled(const Scenario& s, double tol = kDefaultMeetTol);

[[nodiscard]] F2FVariant variant_of(const Scenario& s);

/// Worst case over exit placements; ζ comes from `zeta` for the labeled
/// variant and is fixed to 0 or d otherwise.
[[nodiscard]] WorstCase worst_f2f(double d, F2FVariant v, ZetaPolicy zeta, double exit_step,
                                  double tol = kDefaultMeetTol);

}  // namespace evac
