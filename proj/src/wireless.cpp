#include "evac/wireless.hpp"

#include <stdexcept>

#include "canonical.hpp"

namespace evac {
namespace {

struct Option {
  std::vector<ArcPos> stops;
  double worst = 0.0;
};

// Length of the route when the exit turns out to be at its last stop.
double worst_length(ArcPos from, const std::vector<ArcPos>& stops) {
  double len = 0.0;
  ArcPos at = from;
  for (const ArcPos& s : stops) {
    len += chord_between(at, s);
    at = s;
  }
  return len;
}

// Distance travelled along the route until the first real exit.
double realized_length(ArcPos from, const std::vector<ArcPos>& stops, ArcPos exit_a, ArcPos exit_b) {
  double len = 0.0;
  ArcPos at = from;
  for (const ArcPos& s : stops) {
    len += chord_between(at, s);
    at = s;
    if (same_point(s, exit_a) || same_point(s, exit_b)) return len;
  }
  throw std::logic_error("wireless: receiver route misses both exits");
}

std::vector<ArcPos> nearer_of(ArcPos from, ArcPos x, ArcPos c) {
  return chord_between(from, c) < chord_between(from, x) ? std::vector<ArcPos>{c} : std::vector<ArcPos>{x};
}

void require_wireless(const Scenario& s, bool labeled) {
  if (s.model != Model::Wireless || s.labeled != labeled) {
    throw WrongEvaluatorError(labeled ? "eval_wireless_labeled: scenario is not wireless/labeled"
                                      : "eval_wireless_unlabeled: scenario is not wireless/unlabeled");
  }
  s.validate();
}

EvacResult finish(const detail::FinderFrame& f, const ReceiverRoute& route) {
  EvacResult r;
  r.case_tag = r.finder_tag = route.tag;
  const ArcPos d_pos = f.partner_at(f.x);
  const double receiver = f.x + realized_length(d_pos, route.stops, f.found, f.other);
  detail::assign_exit_times(f, f.x, receiver, r);
  return r;
}

}  // namespace

CandidateClass classify_candidate(ArcPos p, double zeta, double x) {
  const ArcPos b{zeta / 2.0};
  const ArcPos c{-zeta / 2.0};
  if (on_arc(p, b, x, Direction::CCW)) return CandidateClass::ExploredFinder;
  if (on_arc(p, c, x, Direction::CW)) return CandidateClass::ExploredReceiver;
  if (zeta > kAngularTol && on_arc(p, c, zeta, Direction::CCW)) return CandidateClass::Skipped;
  return CandidateClass::Open;
}

ReceiverRoute receiver_route_unlabeled(double d, double zeta, double x) {
  const ArcPos xpos = ArcPos{zeta / 2.0}.advanced(x, Direction::CCW);
  const ArcPos dpos = ArcPos{-zeta / 2.0}.advanced(x, Direction::CW);
  const CandidateExits cand = candidate_exits(xpos, d);

  if (d <= kAngularTol) return {CaseTag::W3b, {xpos}};

  const CandidateClass c1 = classify_candidate(cand.e1_prime, zeta, x);
  const CandidateClass c2 = classify_candidate(cand.e2_prime, zeta, x);
  const auto explored = [](CandidateClass c) {
    return c == CandidateClass::ExploredFinder || c == CandidateClass::ExploredReceiver;
  };

  if (cand.coincident) {
    if (explored(c1)) throw std::logic_error("wireless: the only candidate exit was already searched");
    return {c1 == CandidateClass::Skipped ? CaseTag::W1c : CaseTag::W1a, nearer_of(dpos, xpos, cand.e1_prime)};
  }
  if (explored(c1) && explored(c2)) throw std::logic_error("wireless: both candidate exits were already searched");

  if (explored(c2)) return {CaseTag::W2, nearer_of(dpos, xpos, cand.e1_prime)};
  if (explored(c1)) {
    const CaseTag tag = c1 == CandidateClass::ExploredReceiver ? CaseTag::W3a : CaseTag::W3b;
    return {tag, nearer_of(dpos, xpos, cand.e2_prime)};
  }

  CaseTag tag = CaseTag::W1b;
  if (c1 == CandidateClass::Open && c2 == CandidateClass::Open) tag = CaseTag::W1a;
  if (c1 == CandidateClass::Skipped && c2 == CandidateClass::Skipped) tag = CaseTag::W1c;

  const Option options[] = {
      {{xpos}, 0.0},
      {{cand.e1_prime, cand.e2_prime}, 0.0},
      {{cand.e2_prime, cand.e1_prime}, 0.0},
  };
  const Option* best = nullptr;
  double best_len = 0.0;
  for (const Option& o : options) {
    const double len = worst_length(dpos, o.stops);
    if (best == nullptr || len < best_len) {
      best = &o;
      best_len = len;
    }
  }
  return {tag, best->stops};
}

ReceiverRoute receiver_route_labeled(double zeta, double x, ArcPos other) {
  const ArcPos xpos = ArcPos{zeta / 2.0}.advanced(x, Direction::CCW);
  const ArcPos dpos = ArcPos{-zeta / 2.0}.advanced(x, Direction::CW);
  const CandidateClass c = classify_candidate(other, zeta, x);
  return {c == CandidateClass::Skipped ? CaseTag::WL_L2 : CaseTag::WL_L1, nearer_of(dpos, xpos, other)};
}

EvacResult eval_wireless_unlabeled(const Scenario& s) {
  require_wireless(s, false);
  const detail::FinderFrame f = detail::make_finder_frame(s);
  if (f.simultaneous) {
    EvacResult r;
    r.case_tag = r.finder_tag = CaseTag::WS;
    detail::assign_exit_times(f, f.x, f.x, r);
    return r;
  }
  return finish(f, receiver_route_unlabeled(s.d, s.zeta, f.x));
}

EvacResult eval_wireless_labeled(const Scenario& s) {
  require_wireless(s, true);
  const detail::FinderFrame f = detail::make_finder_frame(s);
  if (f.simultaneous) {
    EvacResult r;
    r.case_tag = r.finder_tag = CaseTag::WL_S;
    detail::assign_exit_times(f, f.x, f.x, r);
    return r;
  }
  return finish(f, receiver_route_labeled(s.zeta, f.x, f.other));
}

WorstCase worst_wireless(double d, ZetaPolicy zeta, bool labeled, double exit_step) {
  Scenario s;
  s.model = Model::Wireless;
  s.labeled = labeled;
  s.d = d;
  s.zeta = zeta.resolve(d);
  return worst_over_exits(s, exit_step, labeled ? eval_wireless_labeled : eval_wireless_unlabeled);
}

}  // namespace evac
