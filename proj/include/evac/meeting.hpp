#pragma once
/**
 * @file meeting.hpp
 * @brief Catch-up equations solved by bisection.
 *
 * A robot that found an exit after travelling `x` along the perimeter leaves
 * the perimeter and cuts across a chord to intercept its partner, who keeps
 * walking the other way. The interception arc `y` (measured along the
 * partner's walk) satisfies
 *
 *     y = x + 2·sin((x + y + offset) / 2)
 *
 * where `offset` is the initial separation of the two start points.
 */

#include <cmath>
#include <functional>
#include <optional>
#include <stdexcept>

namespace evac {

class RegimeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr double kDefaultMeetTol = 1e-6;
inline constexpr int kMaxBisectionIterations = 200;

struct MeetQuery {
  double x = 0.0;       ///< arc walked by the finder before the discovery
  double offset = 0.0;  ///< initial separation of the two start points
  double tol = kDefaultMeetTol;
};

/// f(y) = x + 2·sin((x + y + offset)/2) − y; nonincreasing in y.
[[nodiscard]] double meeting_residual(const MeetQuery& q, double y) noexcept;

/// Root of the catch-up equation on the bracket [x, x + 2].
/// Throws RegimeError when the bracket does not straddle a root
/// (2x + offset > 2π) and NumericError when bisection does not converge.
[[nodiscard]] double solve_meeting(const MeetQuery& q);

/// solve_meeting, or nullopt outside the validity regime.
[[nodiscard]] std::optional<double> try_solve_meeting(const MeetQuery& q);

/// Bisection for a monotone function with f(lo) and f(hi) of opposite sign
/// (zero allowed). Stops once |f(mid)| < tol and the bracket is narrower
/// than tol.
[[nodiscard]] double bisect(const std::function<double(double)>& f, double lo, double hi, double tol,
                            int max_iter = kMaxBisectionIterations);

/// Observer invoked with the residual of every solve_meeting call. Used by
/// the acceptance suite to audit solver quality across a full sweep.
using ResidualObserver = void (*)(double residual, bool bracket_ok);
void set_residual_observer(ResidualObserver obs) noexcept;

}  // namespace evac
