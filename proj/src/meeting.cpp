#include "evac/meeting.hpp"

#include <atomic>
#include <string>

#include "evac/geometry.hpp"

namespace evac {
namespace {

std::atomic<ResidualObserver> g_observer{nullptr};

void notify(double residual, bool bracket_ok) {
  if (auto obs = g_observer.load(std::memory_order_relaxed)) obs(residual, bracket_ok);
}

}  // namespace

void set_residual_observer(ResidualObserver obs) noexcept { g_observer.store(obs, std::memory_order_relaxed); }

double meeting_residual(const MeetQuery& q, double y) noexcept {
  return q.x + 2.0 * std::sin((q.x + y + q.offset) / 2.0) - y;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol, int max_iter) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0)) {
    // Root just outside the bracket.
    if (std::abs(flo) < tol) return lo;
    if (std::abs(fhi) < tol) return hi;
    throw RegimeError("bisect: bracket [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      "] does not straddle a root");
  }
  for (int i = 0; i < max_iter; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    // Flat residuals leave the root poorly determined, so the bracket must
    // also be narrower than tol.
    if (fm == 0.0 || (std::abs(fm) < tol && hi - lo <= tol)) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  throw NumericError("bisect: no convergence after " + std::to_string(max_iter) + " iterations");
}

double solve_meeting(const MeetQuery& q) {
  if (!(q.tol > 0.0)) throw DomainError("solve_meeting: tol must be positive");
  if (!(q.x >= 0.0) || !(q.offset >= 0.0 && q.offset <= kPi)) {
    throw DomainError("solve_meeting: query outside x >= 0, 0 <= offset <= pi");
  }
  const double lo = q.x;
  const double hi = q.x + 2.0;
  const double flo = meeting_residual(q, lo);
  if (flo < -q.tol) {
    notify(flo, false);
    throw RegimeError("solve_meeting: 2x + offset exceeds 2pi (x=" + std::to_string(q.x) +
                      ", offset=" + std::to_string(q.offset) + ")");
  }
  const double y = bisect([&](double v) { return meeting_residual(q, v); }, lo, hi, q.tol);
  notify(meeting_residual(q, y), true);
  return y;
}

std::optional<double> try_solve_meeting(const MeetQuery& q) {
  if (2.0 * q.x + q.offset > kTwoPi) return std::nullopt;
  try {
    return solve_meeting(q);
  } catch (const RegimeError&) {
    return std::nullopt;
  }
}

}  // namespace evac
