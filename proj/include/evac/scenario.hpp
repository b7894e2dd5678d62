#pragma once
/**
 * @file scenario.hpp
 * @brief Problem instances and evaluation results shared by all policies.
 */

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

#include "evac/geometry.hpp"

namespace evac {

enum class Model { Wireless, FaceToFace };

[[nodiscard]] std::string_view to_string(Model m) noexcept;

/// One evacuation instance.
///
/// R1 starts at B = ζ/2 and walks counterclockwise, R2 starts at C = −ζ/2
/// and walks clockwise. Exit E2 sits d counterclockwise of E1.
struct Scenario {
  Model model = Model::Wireless;
  bool labeled = false;
  double d = 0.0;
  double zeta = 0.0;
  ArcPos e1;

  [[nodiscard]] ArcPos e2() const noexcept { return e1.advanced(d, Direction::CCW); }
  [[nodiscard]] ArcPos start_r1() const noexcept { return ArcPos{zeta / 2.0}; }
  [[nodiscard]] ArcPos start_r2() const noexcept { return ArcPos{-zeta / 2.0}; }

  /// Throws DomainError unless 0 ≤ d ≤ π and 0 ≤ ζ ≤ d.
  void validate() const;
};

/// Dispatch branch that produced an evaluation.
enum class CaseTag {
  // wireless, unlabeled
  W1a, W1b, W1c, W2, W3a, W3b,
  WS,  ///< both robots reach exits at the same instant
  // wireless, labeled
  WL_L1, WL_L2, WL_S,
  // face-to-face, both robots start at the same point
  F0_1, F0_2a, F0_2b, F0_3a, F0_3b, F0_4a, F0_4b, F0_4c, F0_S,
  // face-to-face, robots start d apart
  Fd_1a, Fd_1b, Fd_1c, Fd_2a, Fd_2b, Fd_2c, Fd_S,
  // face-to-face, labeled exits
  FL_1, FL_2, FL_3, FL_4, FL_S,
};

[[nodiscard]] std::string_view to_string(CaseTag tag) noexcept;

struct EvacResult {
  double time_from_perimeter = 0.0;  ///< max of the two exit times
  double r1_exit_time = 0.0;
  double r2_exit_time = 0.0;
  double discovery_arc_x = 0.0;      ///< arc walked by the first finder
  /// Branch that governs the outcome: the branch of the robot whose plan
  /// produced the meeting, or of the last robot to exit when they never meet.
  CaseTag case_tag = CaseTag::WS;
  CaseTag finder_tag = CaseTag::WS;  ///< branch of the first robot to reach an exit
  /// Branch of the second robot when it reaches an exit before meeting the
  /// first one and decides on its own (face-to-face only).
  std::optional<CaseTag> responder_tag;
  bool simultaneous = false;
  /// Set when the min-form closed form of face-to-face ζ = d branch 2b,
  /// kept in printed_formula_value, differs from the realized makespan.
  bool printed_formula_differs = false;
  double printed_formula_value = 0.0;
};

/// Time with the unit center-to-perimeter leg added.
[[nodiscard]] inline double total_time(const EvacResult& r) noexcept { return r.time_from_perimeter + 1.0; }

/// Raised when a scenario is handed to an evaluator built for another
/// model, labeling or start separation.
class WrongEvaluatorError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Evaluates a scenario with the evaluator matching its model and labeling.
[[nodiscard]] EvacResult evaluate(const Scenario& s, double tol = 1e-6);

/// How the initial separation ζ is chosen for a given d.
struct ZetaPolicy {
  enum class Kind { Zero, Half, Full, Fraction, Explicit };
  Kind kind = Kind::Zero;
  double value = 0.0;  ///< fraction of d (Fraction) or radians (Explicit)

  [[nodiscard]] static ZetaPolicy zero() noexcept { return {Kind::Zero, 0.0}; }
  [[nodiscard]] static ZetaPolicy half() noexcept { return {Kind::Half, 0.5}; }
  [[nodiscard]] static ZetaPolicy full() noexcept { return {Kind::Full, 1.0}; }
  [[nodiscard]] static ZetaPolicy fraction(double f) noexcept { return {Kind::Fraction, f}; }
  [[nodiscard]] static ZetaPolicy fixed(double zeta) noexcept { return {Kind::Explicit, zeta}; }

  /// Accepts "0", "d", "d/2", "<k>d" (e.g. "0.3d") or a value in radians.
  [[nodiscard]] static ZetaPolicy parse(std::string_view text);

  [[nodiscard]] double resolve(double d) const noexcept;
  [[nodiscard]] std::string label() const;
};

/// Worst case of one evaluator over a grid of exit placements.
struct WorstCase {
  double time = 0.0;
  ArcPos argmax_e1;
  CaseTag case_tag = CaseTag::WS;
  std::size_t evaluations = 0;
};

using Evaluator = std::function<EvacResult(const Scenario&)>;

/// Maximum of `eval` over e1 ∈ {0, step, 2·step, …} ∩ [0, 2π); ties keep
/// the smallest e1. Throws DomainError unless step > 0.
[[nodiscard]] WorstCase worst_over_exits(Scenario base, double exit_step, const Evaluator& eval);

}  // namespace evac
