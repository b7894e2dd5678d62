#include "evac/face_to_face.hpp"

#include <algorithm>
#include <stdexcept>
#include <string>

#include "canonical.hpp"

namespace evac {
namespace f2f {
namespace {

using detail::walk_to;

struct OwnFrame {
  ArcPos b;
  ArcPos c;
  ArcPos found;
  double x = 0.0;

  OwnFrame(double zeta, double x_) : b(zeta / 2.0), c(-zeta / 2.0), found(b.advanced(x_, Direction::CCW)), x(x_) {}

  [[nodiscard]] double partner_walk(ArcPos p) const noexcept { return walk_to(c, p, Direction::CW); }
  [[nodiscard]] double own_walk(ArcPos p) const noexcept { return walk_to(b, p, Direction::CCW); }
};

Decision start_decision(const OwnFrame& fr) {
  Decision dec;
  dec.x = fr.x;
  dec.found = fr.found;
  dec.meet_point = cartesian(fr.found);
  dec.meet_time = fr.x;
  dec.knowledge.exits.push_back(fr.found);
  dec.knowledge.searched.push_back({fr.b, fr.x, Direction::CCW});
  return dec;
}

Decision exit_here(Decision dec, CaseTag tag) {
  dec.action = Action::Exit;
  dec.tag = tag;
  return dec;
}

Decision chase(Decision dec, const OwnFrame& fr, double y, CaseTag tag) {
  dec.action = Action::Chase;
  dec.tag = tag;
  dec.catch_pos = fr.c.advanced(y, Direction::CW);
  dec.meet_point = cartesian(dec.catch_pos);
  dec.meet_time = y;
  return dec;
}

Decision intercept(Decision dec, const OwnFrame& fr, ArcPos h, double h_walk, Point2 target, CaseTag tag,
                   const SolveOptions& opt) {
  dec.action = Action::Intercept;
  dec.tag = tag;
  dec.hypothesis = h;
  dec.hypothesis_walk = h_walk;
  dec.hypothesis_target = target;
  const Point2 from = cartesian(fr.found);
  dec.meet_point = chord_meeting_point(from, fr.x, cartesian(h), h_walk, target, opt.chord_tol);
  dec.meet_time = fr.x + distance(from, dec.meet_point);
  return dec;
}

std::optional<double> catch_arc(double x, double offset, const SolveOptions& opt) {
  return try_solve_meeting({x, offset, opt.meet_tol});
}

ArcPos nearer(Point2 at, ArcPos a, ArcPos b) {
  return distance(at, cartesian(b)) < distance(at, cartesian(a)) ? b : a;
}

}  // namespace

void Knowledge::merge(const Knowledge& other) {
  for (const ArcPos& e : other.exits) {
    if (!knows_exit(e)) exits.push_back(e);
  }
  searched.insert(searched.end(), other.searched.begin(), other.searched.end());
  ruled_out.insert(ruled_out.end(), other.ruled_out.begin(), other.ruled_out.end());
}

Knowledge Knowledge::reflected() const {
  Knowledge k;
  for (const ArcPos& e : exits) k.exits.push_back(e.reflected());
  for (const ArcSpan& s : searched) k.searched.push_back({s.from.reflected(), s.length, opposite(s.dir)});
  for (const ArcPos& p : ruled_out) k.ruled_out.push_back(p.reflected());
  return k;
}

bool Knowledge::knows_exit(ArcPos p) const noexcept {
  return std::any_of(exits.begin(), exits.end(), [&](ArcPos e) { return same_point(e, p); });
}

std::vector<ArcPos> open_candidates(const Knowledge& k, double d) {
  std::vector<ArcPos> out;
  if (k.exits.size() != 1 || d <= kAngularTol) return out;
  const CandidateExits cand = candidate_exits(k.exits.front(), d);
  std::vector<ArcPos> pts{cand.e1_prime};
  if (!cand.coincident) pts.push_back(cand.e2_prime);
  for (const ArcPos& p : pts) {
    const bool searched = std::any_of(k.searched.begin(), k.searched.end(),
                                      [&](const ArcSpan& s) { return on_arc(p, s.from, s.length, s.dir); });
    const bool ruled = std::any_of(k.ruled_out.begin(), k.ruled_out.end(), [&](ArcPos r) { return same_point(r, p); });
    if (!searched && !ruled) out.push_back(p);
  }
  return out;
}

std::vector<ArcPos> exit_route(Point2 at, const Knowledge& k, double d, bool allow_tour) {
  if (k.exits.empty()) throw std::logic_error("exit_route: no exit is known");
  const ArcPos x = k.exits[0];
  if (k.exits.size() >= 2) return {nearer(at, x, k.exits[1])};
  if (d <= kAngularTol) return {x};
  const std::vector<ArcPos> open = open_candidates(k, d);
  if (open.empty()) throw std::logic_error("exit_route: every candidate for the second exit is ruled out");
  if (open.size() == 1) return {nearer(at, x, open[0])};
  if (!allow_tour) return {x};
  const double span = chord_between(open[0], open[1]);
  const double via0 = distance(at, cartesian(open[0])) + span;
  const double via1 = distance(at, cartesian(open[1])) + span;
  const double direct = distance(at, cartesian(x));
  if (std::min(via0, via1) < direct) {
    return via1 < via0 ? std::vector<ArcPos>{open[1], open[0]} : std::vector<ArcPos>{open[0], open[1]};
  }
  return {x};
}

double route_length(Point2 at, const std::vector<ArcPos>& stops, ArcPos exit_a, ArcPos exit_b) {
  double len = 0.0;
  Point2 pos = at;
  for (const ArcPos& s : stops) {
    const Point2 next = cartesian(s);
    len += distance(pos, next);
    pos = next;
    if (same_point(s, exit_a) || same_point(s, exit_b)) return len;
  }
  throw std::logic_error("route_length: route ends without reaching an exit");
}

Point2 chord_meeting_point(Point2 from, double t_from, Point2 h, double t_h, Point2 target, double tol) {
  const double len = distance(h, target);
  if (len <= 1e-15) return h;
  const Point2 u = (target - h) * (1.0 / len);
  const auto gap = [&](double s) { return t_from + distance(from, h + u * s) - t_h - s; };
  if (gap(0.0) <= 0.0) return h;
  if (gap(len) >= 0.0) return target;
  return h + u * bisect(gap, 0.0, len, tol);
}

double recatch_time(Point2 at, double now, ArcPos start, Direction dir, double tol) {
  const auto gap = [&](double q) { return now + distance(at, cartesian(start.advanced(q, dir))) - q; };
  return bisect(gap, now, now + 2.0, tol);
}

Decision decide_same(double d, double x, const SolveOptions& opt) {
  const OwnFrame fr(0.0, x);
  Decision dec = start_decision(fr);
  if (x <= kAngularTol) return exit_here(dec, CaseTag::F0_S);

  const CandidateExits cand = candidate_exits(fr.found, d);
  const double p_e2 = fr.partner_walk(cand.e2_prime);
  const std::optional<double> y = catch_arc(x, 0.0, opt);

  if (x >= d - kAngularTol) {
    if (2.0 * x + d >= kTwoPi - kAngularTol) return exit_here(dec, CaseTag::F0_4c);
    if (y && *y < p_e2) return chase(dec, fr, *y, CaseTag::F0_4a);
    return exit_here(dec, CaseTag::F0_4b);
  }
  if (y && x + *y <= d + kAngularTol) return chase(dec, fr, *y, CaseTag::F0_1);
  if (2.0 * x <= d + kAngularTol) {
    if (y && *y < p_e2) return chase(dec, fr, *y, CaseTag::F0_2a);
    return exit_here(dec, CaseTag::F0_2b);
  }

  // d/2 < x < d: the partner may have reached E1' first and be chasing.
  const double x2 = d - x;
  const double y2 = solve_meeting({x2, 0.0, opt.meet_tol});
  if (x2 + y2 <= d + kAngularTol) {
    // It would have caught this robot before X, so E1' holds no exit.
    dec.knowledge.ruled_out.push_back(cand.e1_prime);
    if (y && *y < p_e2) return chase(dec, fr, *y, CaseTag::F0_3a);
    return exit_here(dec, CaseTag::F0_3b);
  }
  const ArcPos e3 = cand.e1_prime.advanced(d, Direction::CW);
  if (y2 < fr.own_walk(e3)) {
    const Point2 m_prime = cartesian(fr.b.advanced(y2, Direction::CCW));
    return intercept(dec, fr, cand.e1_prime, x2, m_prime, CaseTag::F0_3a, opt);
  }
  return exit_here(dec, CaseTag::F0_3b);
}

Decision decide_diff(double d, double x, const SolveOptions& opt) {
  const OwnFrame fr(d, x);
  Decision dec = start_decision(fr);
  const CandidateExits cand = candidate_exits(fr.found, d);
  const double p_e2 = fr.partner_walk(cand.e2_prime);
  const double p_x = fr.partner_walk(fr.found);
  const std::optional<double> y = catch_arc(x, d, opt);
  const Point2 xp = cartesian(fr.found);

  if (x < d - kAngularTol) {
    if (y && *y < p_e2) return chase(dec, fr, *y, CaseTag::Fd_1a);
    if (!y) return exit_here(dec, CaseTag::Fd_1b);
    return intercept(dec, fr, cand.e2_prime, p_e2, xp, CaseTag::Fd_1b, opt);
  }
  if (y && *y < std::min(p_e2, p_x)) return chase(dec, fr, *y, CaseTag::Fd_2c);
  if (p_e2 < d - kAngularTol) return intercept(dec, fr, cand.e2_prime, p_e2, xp, CaseTag::Fd_2a, opt);
  return exit_here(dec, CaseTag::Fd_2b);
}

Decision decide_labeled(double d, double zeta, double x, ArcPos other, const SolveOptions& opt) {
  const OwnFrame fr(zeta, x);
  Decision dec = start_decision(fr);
  if (!dec.knowledge.knows_exit(other)) dec.knowledge.exits.push_back(other);
  const bool other_behind = same_point(other, fr.found.advanced(d, Direction::CW));
  const std::optional<double> y = catch_arc(x, zeta, opt);
  const double limit = std::min(fr.partner_walk(other), fr.partner_walk(fr.found));
  if (y && *y < limit) return chase(dec, fr, *y, other_behind ? CaseTag::FL_1 : CaseTag::FL_3);
  return exit_here(dec, other_behind ? CaseTag::FL_2 : CaseTag::FL_4);
}

Decision decide(F2FVariant v, double d, double zeta, double x, ArcPos other, const SolveOptions& opt) {
  switch (v) {
    case F2FVariant::SameStart: return decide_same(d, x, opt);
    case F2FVariant::DiffStart: return decide_diff(d, x, opt);
    case F2FVariant::Labeled: return decide_labeled(d, zeta, x, other, opt);
  }
  throw std::logic_error("decide: unknown variant");
}

Recovery recover_after_miss(const Decision& dec, double d, double zeta, bool allow_tour, const SolveOptions& opt) {
  Recovery rec;
  rec.knowledge = dec.knowledge;
  const ArcPos c{-zeta / 2.0};
  if (dec.action == Action::Chase) {
    // The partner left the perimeter before the catch point, so it found
    // one of the candidates on the stretch it walked.
    std::vector<ArcPos> hit;
    for (const ArcPos& p : open_candidates(rec.knowledge, d)) {
      if (on_arc(p, c, dec.meet_time, Direction::CW)) hit.push_back(p);
    }
    if (hit.size() != 1) throw std::logic_error("recover_after_miss: missed catch cannot be explained");
    rec.knowledge.exits.push_back(hit[0]);
    rec.route = exit_route(dec.meet_point, rec.knowledge, d, allow_tour);
    return rec;
  }
  if (dec.action != Action::Intercept) throw std::logic_error("recover_after_miss: no meeting was planned");

  rec.knowledge.ruled_out.push_back(dec.hypothesis);
  const std::vector<ArcPos> open = open_candidates(rec.knowledge, d);
  if (open.size() != 1) throw std::logic_error("recover_after_miss: second exit not determined after a miss");
  const ArcPos certain = open[0];
  rec.knowledge.exits.push_back(certain);

  const double limit = std::min(walk_to(c, dec.found, Direction::CW), walk_to(c, certain, Direction::CW));
  const double q = recatch_time(dec.meet_point, dec.meet_time, c, Direction::CW, opt.chord_tol);
  if (q < limit) {
    rec.chase = true;
    rec.catch_pos = c.advanced(q, Direction::CW);
    rec.catch_time = q;
    return rec;
  }
  rec.route = exit_route(dec.meet_point, rec.knowledge, d, allow_tour);
  return rec;
}

Decision reflected(Decision dec) {
  dec.found = dec.found.reflected();
  dec.meet_point = evac::reflected(dec.meet_point);
  dec.catch_pos = dec.catch_pos.reflected();
  dec.hypothesis = dec.hypothesis.reflected();
  dec.hypothesis_target = evac::reflected(dec.hypothesis_target);
  dec.knowledge = dec.knowledge.reflected();
  return dec;
}

Recovery reflected(Recovery rec) {
  rec.catch_pos = rec.catch_pos.reflected();
  for (ArcPos& p : rec.route) p = p.reflected();
  rec.knowledge = rec.knowledge.reflected();
  return rec;
}

}  // namespace f2f

namespace {

using f2f::Action;
using f2f::Decision;
using f2f::reflected;

[[noreturn]] void unhandled(const char* what, const detail::FinderFrame& f) {
  throw std::logic_error(std::string("face-to-face evaluator: ") + what + " (x=" + std::to_string(f.x) +
                         ", partner x=" + std::to_string(f.partner_x) + ", d=" + std::to_string(f.d) + ")");
}

// Closed-form evaluation in the finder frame: the first finder acts on its
// decision and the partner reacts with its own rule when it reaches an exit.
class Evaluation {
 public:
  Evaluation(const Scenario& s, F2FVariant v, double tol)
      : v_(v), f_(detail::make_finder_frame(s)), opt_{tol, 1e-12}, tour_(f2f::allows_tour(v)) {}

  EvacResult run() {
    r_.discovery_arc_x = f_.x;
    if (f_.simultaneous) {
      r_.case_tag = r_.finder_tag = simultaneous_tag();
      detail::assign_exit_times(f_, f_.x, f_.x, r_);
      return r_;
    }
    const Decision d1 = f2f::decide(v_, f_.d, f_.zeta, f_.x, f_.other, opt_);
    r_.case_tag = r_.finder_tag = d1.tag;
    double t1 = 0.0;
    double t2 = 0.0;
    switch (d1.action) {
      case Action::Exit:
        t1 = f_.x;
        t2 = partner_alone();
        break;
      case Action::Chase:
        chase(d1, t1, t2);
        break;
      case Action::Intercept:
        intercept(d1, t1, t2);
        break;
    }
    detail::assign_exit_times(f_, t1, t2, r_);
    if (d1.tag == CaseTag::Fd_2b) {
      r_.printed_formula_differs = true;
      r_.printed_formula_value = std::min(f_.x, kTwoPi - f_.x - 2.0 * f_.d);
    }
    return r_;
  }

 private:
  CaseTag simultaneous_tag() const noexcept {
    switch (v_) {
      case F2FVariant::SameStart: return CaseTag::F0_S;
      case F2FVariant::DiffStart: return CaseTag::Fd_S;
      case F2FVariant::Labeled: return CaseTag::FL_S;
    }
    return CaseTag::F0_S;
  }

  ArcPos partner_exit() const { return f_.partner_at(f_.partner_x); }

  // Partner's decision on reaching its first exit, mapped to the finder frame.
  Decision partner_decision() {
    const ArcPos xp = partner_exit();
    const ArcPos other = same_point(xp, f_.found) ? f_.other : f_.found;
    Decision d2 = reflected(f2f::decide(v_, f_.d, f_.zeta, f_.partner_x, other.reflected(), opt_));
    r_.responder_tag = d2.tag;
    return d2;
  }

  f2f::Recovery partner_recovery(const Decision& d2) const {
    return reflected(f2f::recover_after_miss(reflected(d2), f_.d, f_.zeta, tour_, opt_));
  }

  f2f::Recovery finder_recovery(const Decision& d1) const {
    return f2f::recover_after_miss(d1, f_.d, f_.zeta, tour_, opt_);
  }

  LinearMotion finder_leg(const Decision& d1) const {
    return {cartesian(f_.found), d1.meet_point, f_.x, d1.meet_time};
  }

  LinearMotion partner_leg(const Decision& d2) const {
    return {cartesian(partner_exit()), d2.meet_point, f_.partner_x, d2.meet_time};
  }

  double route_time(Point2 at, const std::vector<ArcPos>& route) const {
    return f2f::route_length(at, route, f_.found, f_.other);
  }

  f2f::Knowledge partner_searched(double walk) const {
    f2f::Knowledge k;
    k.searched.push_back({f_.c, walk, Direction::CW});
    return k;
  }

  double both_known_route(Point2 at) const {
    f2f::Knowledge k;
    k.exits = {f_.found, partner_exit()};
    return route_time(at, f2f::exit_route(at, k, f_.d, tour_));
  }

  // Partner's exit time once the finder is off the perimeter for good.
  double partner_alone() {
    const Decision d2 = partner_decision();
    if (d2.action == Action::Exit) return f_.partner_x;
    r_.case_tag = d2.tag;
    return after_partner_miss(d2);
  }

  double after_partner_miss(const Decision& d2) const {
    const f2f::Recovery rec = partner_recovery(d2);
    if (rec.chase) unhandled("partner recatch of a finder that left the perimeter", f_);
    return d2.meet_time + route_time(d2.meet_point, rec.route);
  }

  void chase(const Decision& d1, double& t1, double& t2) {
    const double y = d1.meet_time;
    if (f_.partner_x > y + f2f::kMeetTol) {
      f2f::Knowledge k = d1.knowledge;
      k.merge(partner_searched(y));
      t1 = t2 = y + route_time(d1.meet_point, f2f::exit_route(d1.meet_point, k, f_.d, tour_));
      return;
    }
    if (f_.partner_x >= y - f2f::kMeetTol) {
      t1 = t2 = y;
      return;
    }
    const Decision d2 = partner_decision();
    if (d2.action != Action::Exit) {
      if (const auto tm = first_contact(finder_leg(d1), partner_leg(d2), f2f::kMeetTol)) {
        r_.case_tag = d2.tag;
        t1 = t2 = *tm + both_known_route(finder_leg(d1).at(*tm));
        return;
      }
      t2 = after_partner_miss(d2);
    } else {
      t2 = f_.partner_x;
    }
    const f2f::Recovery rec = finder_recovery(d1);
    t1 = y + route_time(d1.meet_point, rec.route);
  }

  void intercept(const Decision& d1, double& t1, double& t2) {
    const double tn = d1.meet_time;
    const bool partner_left = f_.partner_x < tn - f2f::kMeetTol;
    bool partner_pursuing = false;
    Decision d2;
    if (partner_left) {
      d2 = partner_decision();
      partner_pursuing = d2.action != Action::Exit;
      if (partner_pursuing) {
        if (const auto tm = first_contact(finder_leg(d1), partner_leg(d2), f2f::kMeetTol)) {
          t1 = t2 = *tm + both_known_route(finder_leg(d1).at(*tm));
          return;
        }
      }
    }
    const f2f::Recovery rec = finder_recovery(d1);
    if (rec.chase) {
      if (partner_left) unhandled("recatch of a partner that already left the perimeter", f_);
      const double q = rec.catch_time;
      if (f_.partner_x > q + f2f::kMeetTol) {
        f2f::Knowledge k = rec.knowledge;
        k.merge(partner_searched(q));
        const Point2 p = cartesian(rec.catch_pos);
        t1 = t2 = q + route_time(p, f2f::exit_route(p, k, f_.d, tour_));
        return;
      }
      if (f_.partner_x >= q - f2f::kMeetTol) {
        t1 = t2 = q;
        return;
      }
      unhandled("partner reaches an exit during a recatch", f_);
    }
    t1 = tn + route_time(d1.meet_point, rec.route);
    if (!partner_left) {
      t2 = partner_alone();
    } else if (partner_pursuing) {
      t2 = after_partner_miss(d2);
    } else {
      t2 = f_.partner_x;
    }
  }

  F2FVariant v_;
  detail::FinderFrame f_;
  f2f::SolveOptions opt_;
  bool tour_;
  EvacResult r_;
};

void require(const Scenario& s, F2FVariant v, const char* who) {
  if (s.model != Model::FaceToFace || s.labeled != (v == F2FVariant::Labeled)) {
    throw WrongEvaluatorError(std::string(who) + ": scenario has the wrong model or labeling");
  }
  s.validate();
  if (v == F2FVariant::SameStart && s.zeta > kAngularTol) {
    throw WrongEvaluatorError(std::string(who) + ": needs zeta = 0");
  }
  if (v == F2FVariant::DiffStart && std::abs(s.zeta - s.d) > kAngularTol) {
    throw WrongEvaluatorError(std::string(who) + ": needs zeta = d");
  }
}

}  // namespace

EvacResult eval_f2f_same(const Scenario& s, double tol) {
  require(s, F2FVariant::SameStart, "eval_f2f_same");
  return Evaluation(s, F2FVariant::SameStart, tol).run();
}

EvacResult eval_f2f_diff(const Scenario& s, double tol) {
  require(s, F2FVariant::DiffStart, "eval_f2f_diff");
  return Evaluation(s, F2FVariant::DiffStart, tol).run();
}

EvacResult eval_f2f_labeled(const Scenario& s, double tol) {
  require(s, F2FVariant::Labeled, "eval_f2f_labeled");
  return Evaluation(s, F2FVariant::Labeled, tol).run();
}

F2FVariant variant_of(const Scenario& s) {
  if (s.model != Model::FaceToFace) throw WrongEvaluatorError("variant_of: not a face-to-face scenario");
  if (s.labeled) return F2FVariant::Labeled;
  if (s.zeta <= kAngularTol) return F2FVariant::SameStart;
  if (std::abs(s.zeta - s.d) <= kAngularTol) return F2FVariant::DiffStart;
  throw WrongEvaluatorError("variant_of: unlabeled face-to-face needs zeta = 0 or zeta = d");
}

WorstCase worst_f2f(double d, F2FVariant v, ZetaPolicy zeta, double exit_step, double tol) {
  Scenario s;
  s.model = Model::FaceToFace;
  s.labeled = v == F2FVariant::Labeled;
  s.d = d;
  s.zeta = v == F2FVariant::SameStart ? 0.0 : v == F2FVariant::DiffStart ? d : zeta.resolve(d);
  return worst_over_exits(s, exit_step, [v, tol](const Scenario& sc) {
    switch (v) {
      case F2FVariant::SameStart: return eval_f2f_same(sc, tol);
      case F2FVariant::DiffStart: return eval_f2f_diff(sc, tol);
      case F2FVariant::Labeled: break;
    }
    return eval_f2f_labeled(sc, tol);
  });
}

}  // namespace evac
