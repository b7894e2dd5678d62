#pragma once
/**
 * @file replay.hpp
 * @brief Kinematic replay of both robots as timestamped motion.
 *
 * The replay runs the per-robot decision rules concurrently in world
 * coordinates. Meetings are found from the trajectories themselves and
 * every time comes from summing segment lengths, so the result is an
 * independent check on the closed-form evaluators.
 */

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "evac/geometry.hpp"
#include "evac/scenario.hpp"

namespace evac {

/// A robot's plan expects a meeting that never happens and has no fallback,
/// or a robot runs out of places to go.
class TraceInvalid : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class SegmentKind { Arc, Chord, Hold };

struct Segment {
  SegmentKind kind = SegmentKind::Chord;
  double t0 = 0.0;
  double t1 = 0.0;
  Point2 from;
  Point2 to;
  // Arc segments only.
  ArcPos arc_from;
  double arc_length = 0.0;
  Direction dir = Direction::CCW;
};

enum class EventKind { FoundExit, SentMessage, ReceivedMessage, Meet, MissedMeeting, Exited };

[[nodiscard]] std::string_view to_string(EventKind k) noexcept;

struct TraceEvent {
  EventKind kind = EventKind::Exited;
  double t = 0.0;
  Point2 at;
};

struct Trajectory {
  std::vector<Segment> segments;
  std::vector<TraceEvent> events;
  std::optional<CaseTag> decision;  ///< branch chosen on the robot's first decision
};

struct ReplayOptions {
  double meet_tol = 1e-6;    ///< co-location distance
  double solve_tol = 1e-10;  ///< residual tolerance for the robots' own solves
  int max_events = 64;
};

struct ReplayResult {
  std::array<Trajectory, 2> robots;  ///< R1 (counterclockwise), R2 (clockwise)
  double makespan = 0.0;
};

[[nodiscard]] ReplayResult replay(const Scenario& s, const ReplayOptions& opt = {});

struct AgreementReport {
  std::vector<std::string> failures;
  [[nodiscard]] bool ok() const noexcept { return failures.empty(); }
};

/// Checks that both robots exited through real exits at unit speed without
/// holding, that meetings and messages are seen by both sides, and that a
/// pair that met leaves together.
[[nodiscard]] AgreementReport verify_agreement(const Scenario& s, const ReplayResult& r);

/// One line per segment: `robot,kind,t0,t1,x0,y0,x1,y1`.
void write_trace(std::ostream& out, const ReplayResult& r);

/// Closed-form evaluator exercised by a batch of random scenarios.
enum class OracleTarget { WirelessUnlabeled, WirelessLabeled, F2FSame, F2FDiff, F2FLabeled };

inline constexpr std::array<OracleTarget, 5> kOracleTargets{
    OracleTarget::WirelessUnlabeled, OracleTarget::WirelessLabeled, OracleTarget::F2FSame, OracleTarget::F2FDiff,
    OracleTarget::F2FLabeled};

[[nodiscard]] std::string_view to_string(OracleTarget t) noexcept;

/// Uniform d in [0, π], exit in [0, 2π) and, where the evaluator allows it,
/// ζ in [0, d]. The sequence is fixed by the seed.
class ScenarioSampler {
 public:
  ScenarioSampler(OracleTarget target, std::uint64_t seed);
  [[nodiscard]] Scenario next();

 private:
  OracleTarget target_;
  std::mt19937_64 rng_;
};

struct OracleSummary {
  OracleTarget target = OracleTarget::WirelessUnlabeled;
  std::size_t samples = 0;
  std::size_t mismatches = 0;          ///< replay and closed form differ by more than the limit
  std::size_t invalid = 0;             ///< replay or evaluator threw
  std::size_t agreement_failures = 0;
  std::size_t printed_formula_differs = 0;
  double max_deviation = 0.0;
  std::vector<std::string> notes;  ///< first few failures, for diagnostics

  [[nodiscard]] bool ok() const noexcept { return mismatches == 0 && invalid == 0 && agreement_failures == 0; }
};

/// Replays `samples` random scenarios for one evaluator and compares.
[[nodiscard]] OracleSummary check_oracle(OracleTarget target, std::size_t samples, std::uint64_t seed,
                                         double max_deviation = 1e-4);

}  // namespace evac
