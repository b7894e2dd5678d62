#pragma once
/**
 * @file sweep.hpp
 * @brief Worst case over exit placements, swept over d.
 */

#include <iosfwd>
#include <string>
#include <vector>

#include "evac/meeting.hpp"
#include "evac/scenario.hpp"

namespace evac {

/// One curve: a model, a labeling and a rule for ζ.
struct Series {
  Model model = Model::Wireless;
  bool labeled = false;
  ZetaPolicy zeta;

  [[nodiscard]] std::string label() const;
};

struct SweepConfig {
  double d_step = 0.01;
  double exit_step = 0.001;
  double d_min = 0.0;
  double d_max = kPi;
  bool include_center_leg = false;
  int workers = 1;
  double tol = kDefaultMeetTol;

  /// Throws std::invalid_argument on non-positive steps, an empty range or
  /// a range outside [0, π].
  void validate() const;
};

struct SweepRecord {
  double d = 0.0;
  std::string zeta_policy;
  Model model = Model::Wireless;
  bool labeled = false;
  double worst_time = 0.0;
  ArcPos argmax_e1;
  CaseTag case_tag = CaseTag::WS;
};

/// d_min, d_min + step, … below d_max, then d_max itself.
[[nodiscard]] std::vector<double> d_grid(const SweepConfig& cfg);

/// Worst case of one series at one d.
[[nodiscard]] WorstCase worst_case(const Series& series, double d, double exit_step, double tol = kDefaultMeetTol);

/// One record per grid point, ordered by d. The result does not depend on
/// the number of workers.
[[nodiscard]] std::vector<SweepRecord> run_sweep(const SweepConfig& cfg, const Series& series);

struct CurvePoint {
  double d = 0.0;
  double time = 0.0;
};

/// Grid minimum of worst_time; the smallest d wins ties. Throws
/// std::invalid_argument on empty input.
[[nodiscard]] CurvePoint min_over_d(const std::vector<SweepRecord>& records);

struct DInterval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Maximal runs of grid points where `a` is worse than `b` by more than
/// `margin`. Throws std::invalid_argument when the grids differ.
[[nodiscard]] std::vector<DInterval> crossing_intervals(const std::vector<SweepRecord>& a,
                                                        const std::vector<SweepRecord>& b, double margin = 1e-9);

/// Grid points whose worst-case branch differs from the previous point's.
[[nodiscard]] std::vector<double> transition_points(const std::vector<SweepRecord>& records);

/// Interior grid points that are strict local minima of worst_time, where
/// plateaus count as a single point (reported at their first grid point).
[[nodiscard]] std::vector<double> local_minima(const std::vector<SweepRecord>& records, double margin = 1e-9);

inline constexpr const char* kCsvHeader = "d,zeta_policy,model,labeled,worst_time,argmax_e1,case";

/// Header plus one row per record, six decimals, LF line endings.
void write_csv(std::ostream& out, const std::vector<SweepRecord>& records);

}  // namespace evac
