#pragma once
/**
 * @file wireless.hpp
 * @brief Wireless model: the finder broadcasts, the receiver reroutes.
 */

#include <optional>
#include <vector>

#include "evac/geometry.hpp"
#include "evac/scenario.hpp"

namespace evac {

/// Where a candidate exit lies relative to what has been searched when the
/// message arrives.
enum class CandidateClass {
  ExploredFinder,    ///< on the arc the finder walked
  ExploredReceiver,  ///< on the arc the receiver walked
  Skipped,           ///< inside the gap between the two start points
  Open,              ///< on the arc neither robot has reached yet
};

/// Route of the robot that receives the found-exit message. Stops are
/// visited in order; the robot leaves through the first real exit.
/// Positions are in the finder frame (finder walks counterclockwise from
/// ζ/2, receiver clockwise from −ζ/2).
struct ReceiverRoute {
  CaseTag tag = CaseTag::W1a;
  std::vector<ArcPos> stops;
};

[[nodiscard]] CandidateClass classify_candidate(ArcPos p, double zeta, double x);

/// Unlabeled exits: the receiver only knows d and the finder's position.
[[nodiscard]] ReceiverRoute receiver_route_unlabeled(double d, double zeta, double x);

/// Labeled exits: the receiver also knows where the other exit is.
[[nodiscard]] ReceiverRoute receiver_route_labeled(double zeta, double x, ArcPos other);

/// Throws WrongEvaluatorError unless the scenario is wireless and unlabeled.
[[nodiscard]] EvacResult eval_wireless_unlabeled(const Scenario& s);
[[nodiscard]] EvacResult eval_wireless_labeled(const Scenario& s);

[[nodiscard]] WorstCase worst_wireless(double d, ZetaPolicy zeta, bool labeled, double exit_step);

}  // namespace evac
