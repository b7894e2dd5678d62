#include "evac/replay.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <ostream>

#include "canonical.hpp"
#include "evac/face_to_face.hpp"
#include "evac/wireless.hpp"

namespace evac {

std::string_view to_string(EventKind k) noexcept {
  switch (k) {
    case EventKind::FoundExit: return "found_exit";
    case EventKind::SentMessage: return "sent_message";
    case EventKind::ReceivedMessage: return "received_message";
    case EventKind::Meet: return "meet";
    case EventKind::MissedMeeting: return "missed_meeting";
    case EventKind::Exited: return "exited";
  }
  return "?";
}

namespace {

using detail::walk_to;

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSameTime = 1e-12;

enum class Mode { Walking, Pursuing, Routing, Exited };

struct Robot {
  ArcPos start;
  Direction dir = Direction::CCW;
  bool mirrored = false;  ///< own frame is the mirror image of the world
  Mode mode = Mode::Walking;
  Trajectory trace;
  f2f::Knowledge knowledge;  ///< world frame
  LinearMotion seg;
  std::vector<ArcPos> stops;
  f2f::Decision plan;  ///< own frame
  bool recatch = false;
  double exit_time = 0.0;

  [[nodiscard]] ArcPos walked_to(double t) const noexcept { return start.advanced(t, dir); }

  // Own frame to world and back; reflection is its own inverse.
  [[nodiscard]] ArcPos world(ArcPos p) const noexcept { return mirrored ? p.reflected() : p; }
  [[nodiscard]] Point2 world(Point2 p) const noexcept { return mirrored ? evac::reflected(p) : p; }
  [[nodiscard]] f2f::Knowledge world(const f2f::Knowledge& k) const { return mirrored ? k.reflected() : k; }
  [[nodiscard]] f2f::Decision world(const f2f::Decision& d) const { return mirrored ? f2f::reflected(d) : d; }
  [[nodiscard]] f2f::Recovery world(const f2f::Recovery& r) const { return mirrored ? f2f::reflected(r) : r; }
  [[nodiscard]] ArcPos own(ArcPos p) const noexcept { return world(p); }
};

std::vector<ArcPos> world_stops(const Robot& r, std::vector<ArcPos> stops) {
  for (ArcPos& p : stops) p = r.world(p);
  return stops;
}

class Engine {
 public:
  Engine(const Scenario& s, const ReplayOptions& opt) : s_(s), opt_(opt) {
    s_.validate();
    exits_ = {s.e1, s.e2()};
    bots_[0].start = s.start_r1();
    bots_[0].dir = Direction::CCW;
    bots_[1].start = s.start_r2();
    bots_[1].dir = Direction::CW;
    bots_[1].mirrored = true;
    if (s.model == Model::FaceToFace) {
      variant_ = f2f_variant(s);
      tour_ = f2f::allows_tour(variant_);
    }
  }

  ReplayResult run() {
    for (int n = 0; n < opt_.max_events; ++n) {
      if (bots_[0].mode == Mode::Exited && bots_[1].mode == Mode::Exited) return finish();
      step();
    }
    throw TraceInvalid("replay: event limit reached");
  }

 private:
  static F2FVariant f2f_variant(const Scenario& s) {
    if (s.labeled) return F2FVariant::Labeled;
    if (s.zeta <= kAngularTol) return F2FVariant::SameStart;
    if (std::abs(s.zeta - s.d) <= kAngularTol) return F2FVariant::DiffStart;
    throw WrongEvaluatorError("replay: unlabeled face-to-face needs zeta = 0 or zeta = d");
  }

  ReplayResult finish() {
    ReplayResult r;
    r.robots = {bots_[0].trace, bots_[1].trace};
    r.makespan = std::max(bots_[0].exit_time, bots_[1].exit_time);
    return r;
  }

  [[nodiscard]] bool is_exit(ArcPos p) const noexcept {
    return same_point(p, exits_[0]) || same_point(p, exits_[1]);
  }

  [[nodiscard]] double find_time(const Robot& r) const noexcept {
    return std::min(walk_to(r.start, exits_[0], r.dir), walk_to(r.start, exits_[1], r.dir));
  }

  [[nodiscard]] double own_event_time(const Robot& r) const noexcept {
    switch (r.mode) {
      case Mode::Walking: return find_time(r);
      case Mode::Pursuing:
      case Mode::Routing: return r.seg.t1;
      case Mode::Exited: return kInf;
    }
    return kInf;
  }

  [[nodiscard]] Point2 position(const Robot& r, double t) const noexcept {
    if (r.mode == Mode::Walking) return cartesian(r.walked_to(t));
    return r.seg.at(t);
  }

  // Earliest co-location while at least one robot is pursuing the other.
  [[nodiscard]] std::optional<double> contact_time(double horizon) const {
    const Robot& a = bots_[0];
    const Robot& b = bots_[1];
    if (a.mode == Mode::Exited || b.mode == Mode::Exited) return std::nullopt;
    if (a.mode != Mode::Pursuing && b.mode != Mode::Pursuing) return std::nullopt;
    if (a.mode == Mode::Walking || b.mode == Mode::Walking) {
      // A chord only touches the perimeter at its ends.
      const Robot& walker = a.mode == Mode::Walking ? a : b;
      const Robot& mover = a.mode == Mode::Walking ? b : a;
      const double t = mover.seg.t1;
      if (t > horizon + kSameTime) return std::nullopt;
      if (distance(position(walker, t), mover.seg.to) <= opt_.meet_tol) return t;
      return std::nullopt;
    }
    const auto from_now = [&](const LinearMotion& m) { return LinearMotion{m.at(now_), m.to, now_, m.t1}; };
    const auto t = first_contact(from_now(a.seg), from_now(b.seg), opt_.meet_tol);
    if (t && *t <= horizon + kSameTime) return t;
    return std::nullopt;
  }

  void step() {
    const double t0 = own_event_time(bots_[0]);
    const double t1 = own_event_time(bots_[1]);
    const double next = std::min(t0, t1);
    if (const auto tc = contact_time(next)) {
      now_ = std::max(now_, *tc);
      meet(now_);
      return;
    }
    if (next == kInf) throw TraceInvalid("replay: no robot can move");
    now_ = next;
    // Finding an exit comes before arrivals at the same instant.
    int who = t0 <= t1 ? 0 : 1;
    if (std::abs(t0 - t1) <= kSameTime && bots_[1].mode == Mode::Walking && bots_[0].mode != Mode::Walking) who = 1;
    Robot& r = bots_[who];
    if (r.mode == Mode::Walking) {
      found_exit(who, next);
    } else {
      arrived(r, next);
    }
  }

  void stop_walking(Robot& r, double t) {
    if (t > 0.0) {
      Segment seg;
      seg.kind = SegmentKind::Arc;
      seg.t0 = 0.0;
      seg.t1 = t;
      seg.arc_from = r.start;
      seg.arc_length = t;
      seg.dir = r.dir;
      seg.from = cartesian(r.start);
      seg.to = cartesian(r.walked_to(t));
      r.trace.segments.push_back(seg);
    }
    r.knowledge.searched.push_back({r.start, t, r.dir});
    for (const ArcPos& e : exits_) {
      if (on_arc(e, r.start, t, r.dir) && !r.knowledge.knows_exit(e)) r.knowledge.exits.push_back(e);
    }
  }

  void end_chord(Robot& r, double t) {
    if (t > r.seg.t0) {
      Segment seg;
      seg.kind = SegmentKind::Chord;
      seg.t0 = r.seg.t0;
      seg.t1 = t;
      seg.from = r.seg.from;
      seg.to = r.seg.at(t);
      r.trace.segments.push_back(seg);
    }
  }

  void start_chord(Robot& r, Point2 to, double t) {
    const Point2 from = r.mode == Mode::Walking ? position(r, t) : r.seg.at(t);
    r.seg = LinearMotion{from, to, t, t + distance(from, to)};
  }

  void leave(Robot& r, ArcPos at, double t) {
    r.mode = Mode::Exited;
    r.exit_time = t;
    r.trace.events.push_back({EventKind::Exited, t, cartesian(at)});
  }

  void follow(Robot& r, std::vector<ArcPos> stops, double t) {
    if (stops.empty()) throw TraceInvalid("replay: empty route");
    r.stops = std::move(stops);
    start_chord(r, cartesian(r.stops.front()), t);
    r.mode = Mode::Routing;
  }

  void found_exit(int who, double t) {
    Robot& r = bots_[who];
    Robot& partner = bots_[1 - who];
    const ArcPos at = r.walked_to(t);
    stop_walking(r, t);
    r.trace.events.push_back({EventKind::FoundExit, t, cartesian(at)});
    if (partner.mode == Mode::Walking && find_time(partner) <= t + detail::kSimultaneityTol) {
      // Both stand on exits at the same moment and leave at once.
      const double tp = find_time(partner);
      const ArcPos pat = partner.walked_to(tp);
      stop_walking(partner, tp);
      partner.trace.events.push_back({EventKind::FoundExit, tp, cartesian(pat)});
      const CaseTag tag = simultaneous_tag();
      r.trace.decision = partner.trace.decision = tag;
      leave(r, at, t);
      leave(partner, pat, tp);
      return;
    }
    if (s_.model == Model::Wireless) {
      broadcast(who, at, t);
    } else {
      decide(r, at, t);
    }
  }

  [[nodiscard]] CaseTag simultaneous_tag() const noexcept {
    if (s_.model == Model::Wireless) return s_.labeled ? CaseTag::WL_S : CaseTag::WS;
    switch (variant_) {
      case F2FVariant::SameStart: return CaseTag::F0_S;
      case F2FVariant::DiffStart: return CaseTag::Fd_S;
      case F2FVariant::Labeled: return CaseTag::FL_S;
    }
    return CaseTag::F0_S;
  }

  [[nodiscard]] ArcPos other_exit(ArcPos found) const noexcept {
    return same_point(found, exits_[0]) ? exits_[1] : exits_[0];
  }

  void broadcast(int who, ArcPos at, double t) {
    Robot& finder = bots_[who];
    Robot& receiver = bots_[1 - who];
    finder.trace.events.push_back({EventKind::SentMessage, t, cartesian(at)});
    leave(finder, at, t);
    if (receiver.mode != Mode::Walking) throw TraceInvalid("replay: message reached a robot that already left the perimeter");
    const Point2 here = position(receiver, t);
    receiver.trace.events.push_back({EventKind::ReceivedMessage, t, here});
    // The route is planned in the finder's frame.
    const ReceiverRoute route = s_.labeled ? receiver_route_labeled(s_.zeta, t, finder.own(other_exit(at)))
                                           : receiver_route_unlabeled(s_.d, s_.zeta, t);
    finder.trace.decision = receiver.trace.decision = route.tag;
    stop_walking(receiver, t);
    follow(receiver, world_stops(finder, route.stops), t);
  }

  [[nodiscard]] f2f::SolveOptions solve_options() const noexcept { return {opt_.solve_tol, 1e-12}; }

  void decide(Robot& r, ArcPos at, double t) {
    const f2f::Decision dec = f2f::decide(variant_, s_.d, s_.zeta, t, r.own(other_exit(at)), solve_options());
    if (!r.trace.decision) r.trace.decision = dec.tag;
    r.plan = dec;
    r.knowledge.merge(r.world(dec.knowledge));
    if (dec.action == f2f::Action::Exit) {
      leave(r, at, t);
      return;
    }
    start_chord(r, r.world(dec.meet_point), t);
    r.mode = Mode::Pursuing;
  }

  void arrived(Robot& r, double t) {
    end_chord(r, t);
    const Point2 here = r.seg.to;
    if (r.mode == Mode::Routing) {
      const ArcPos stop = r.stops.front();
      r.stops.erase(r.stops.begin());
      if (is_exit(stop)) {
        leave(r, stop, t);
        return;
      }
      if (r.stops.empty()) throw TraceInvalid("replay: route ends without an exit");
      r.seg = LinearMotion{here, cartesian(r.stops.front()), t, t + distance(here, cartesian(r.stops.front()))};
      return;
    }
    // A pursuit ended without meeting the partner.
    r.trace.events.push_back({EventKind::MissedMeeting, t, here});
    if (r.recatch) throw TraceInvalid("replay: recatch missed the partner");
    f2f::Decision planned = r.plan;
    planned.meet_time = t;
    const f2f::Recovery rec = r.world(f2f::recover_after_miss(planned, s_.d, s_.zeta, tour_, solve_options()));
    r.knowledge.merge(rec.knowledge);
    if (rec.chase) {
      r.recatch = true;
      r.seg = LinearMotion{here, cartesian(rec.catch_pos), t, t + distance(here, cartesian(rec.catch_pos))};
      return;
    }
    r.seg = LinearMotion{here, here, t, t};
    follow(r, rec.route, t);
  }

  void meet(double t) {
    std::array<Point2, 2> at{};
    for (int i = 0; i < 2; ++i) {
      Robot& r = bots_[i];
      at[i] = position(r, t);
      if (r.mode == Mode::Walking) {
        stop_walking(r, t);
      } else {
        end_chord(r, t);
      }
    }
    const f2f::Knowledge k0 = bots_[0].knowledge;
    const f2f::Knowledge k1 = bots_[1].knowledge;
    bots_[0].knowledge.merge(k1);
    bots_[1].knowledge.merge(k0);
    for (int i = 0; i < 2; ++i) {
      Robot& r = bots_[i];
      r.trace.events.push_back({EventKind::Meet, t, at[i]});
      r.recatch = false;
      r.seg = LinearMotion{at[i], at[i], t, t};
      r.mode = Mode::Routing;
      follow(r, f2f::exit_route(at[i], r.knowledge, s_.d, tour_), t);
    }
  }

  Scenario s_;
  ReplayOptions opt_;
  std::array<ArcPos, 2> exits_{};
  std::array<Robot, 2> bots_{};
  F2FVariant variant_ = F2FVariant::SameStart;
  bool tour_ = false;
  double now_ = 0.0;
};

void fail(AgreementReport& rep, int robot, const std::string& what) {
  rep.failures.push_back("R" + std::to_string(robot + 1) + ": " + what);
}

}  // namespace

ReplayResult replay(const Scenario& s, const ReplayOptions& opt) {
  return Engine(s, opt).run();
}

AgreementReport verify_agreement(const Scenario& s, const ReplayResult& r) {
  constexpr double kLenTol = 1e-9;
  constexpr double kPosTol = 1e-6;
  AgreementReport rep;
  const std::array<Point2, 2> exits{cartesian(s.e1), cartesian(s.e2())};
  std::array<std::optional<TraceEvent>, 2> exited;

  for (int i = 0; i < 2; ++i) {
    const Trajectory& tr = r.robots[i];
    double t_prev = 0.0;
    std::optional<Point2> p_prev;
    for (const Segment& seg : tr.segments) {
      const double dur = seg.t1 - seg.t0;
      if (seg.kind == SegmentKind::Hold) {
        fail(rep, i, "holds in place");
        continue;
      }
      const double len = seg.kind == SegmentKind::Arc ? seg.arc_length : distance(seg.from, seg.to);
      if (len > dur * (1.0 + 1e-12) + kLenTol) fail(rep, i, "moves faster than unit speed");
      if (std::abs(len - dur) > kLenTol) fail(rep, i, "segment length differs from its duration");
      if (seg.kind == SegmentKind::Arc &&
          distance(seg.to, cartesian(seg.arc_from.advanced(seg.arc_length, seg.dir))) > kLenTol) {
        fail(rep, i, "arc segment ends off its arc");
      }
      if (std::abs(seg.t0 - t_prev) > kLenTol) fail(rep, i, "gap in time between segments");
      if (p_prev && distance(*p_prev, seg.from) > kPosTol) fail(rep, i, "jump between segments");
      t_prev = seg.t1;
      p_prev = seg.to;
    }
    for (const TraceEvent& e : tr.events) {
      if (e.kind != EventKind::Exited) continue;
      if (exited[i]) fail(rep, i, "exits twice");
      exited[i] = e;
      if (distance(e.at, exits[0]) > kPosTol && distance(e.at, exits[1]) > kPosTol) {
        fail(rep, i, "exits where there is no exit");
      }
      if (std::abs(e.t - t_prev) > kLenTol) fail(rep, i, "exit time differs from the end of its path");
    }
    if (!exited[i]) fail(rep, i, "never exits");
  }

  const auto count_of = [](const Trajectory& tr, EventKind k) {
    return std::count_if(tr.events.begin(), tr.events.end(), [k](const TraceEvent& e) { return e.kind == k; });
  };
  for (int i = 0; i < 2; ++i) {
    const Trajectory& mine = r.robots[i];
    const Trajectory& theirs = r.robots[1 - i];
    for (const TraceEvent& e : mine.events) {
      if (e.kind == EventKind::Meet) {
        const bool seen = std::any_of(theirs.events.begin(), theirs.events.end(), [&](const TraceEvent& o) {
          return o.kind == EventKind::Meet && std::abs(o.t - e.t) <= kLenTol && distance(o.at, e.at) <= kPosTol;
        });
        if (!seen) fail(rep, i, "meeting not seen by the partner");
      }
      if (e.kind == EventKind::ReceivedMessage) {
        const bool sent = std::any_of(theirs.events.begin(), theirs.events.end(), [&](const TraceEvent& o) {
          return o.kind == EventKind::SentMessage && std::abs(o.t - e.t) <= kLenTol;
        });
        if (!sent) fail(rep, i, "message received without a matching send");
      }
    }
  }
  if (count_of(r.robots[0], EventKind::Meet) > 0 && exited[0] && exited[1]) {
    if (std::abs(exited[0]->t - exited[1]->t) > kLenTol || distance(exited[0]->at, exited[1]->at) > kPosTol) {
      rep.failures.push_back("robots that met leave through different exits or at different times");
    }
  }
  if (exited[0] && exited[1] && std::abs(std::max(exited[0]->t, exited[1]->t) - r.makespan) > kLenTol) {
    rep.failures.push_back("makespan differs from the last exit");
  }
  return rep;
}

void write_trace(std::ostream& out, const ReplayResult& r) {
  for (int i = 0; i < 2; ++i) {
    for (const Segment& s : r.robots[i].segments) {
      const char* kind = s.kind == SegmentKind::Arc ? "arc" : s.kind == SegmentKind::Chord ? "chord" : "hold";
      out << (i == 0 ? "R1" : "R2") << ',' << kind << ',' << s.t0 << ',' << s.t1 << ',' << s.from.x << ','
          << s.from.y << ',' << s.to.x << ',' << s.to.y << '\n';
    }
  }
}

std::string_view to_string(OracleTarget t) noexcept {
  switch (t) {
    case OracleTarget::WirelessUnlabeled: return "wireless/unlabeled";
    case OracleTarget::WirelessLabeled: return "wireless/labeled";
    case OracleTarget::F2FSame: return "f2f/unlabeled/zeta=0";
    case OracleTarget::F2FDiff: return "f2f/unlabeled/zeta=d";
    case OracleTarget::F2FLabeled: return "f2f/labeled";
  }
  return "?";
}

ScenarioSampler::ScenarioSampler(OracleTarget target, std::uint64_t seed)
    : target_(target), rng_(seed * 8 + static_cast<std::uint64_t>(target)) {}

Scenario ScenarioSampler::next() {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Scenario s;
  s.model = target_ == OracleTarget::WirelessUnlabeled || target_ == OracleTarget::WirelessLabeled ? Model::Wireless
                                                                                                   : Model::FaceToFace;
  s.labeled = target_ == OracleTarget::WirelessLabeled || target_ == OracleTarget::F2FLabeled;
  s.d = unit(rng_) * kPi;
  const double z = unit(rng_);
  s.zeta = target_ == OracleTarget::F2FSame ? 0.0 : target_ == OracleTarget::F2FDiff ? s.d : z * s.d;
  s.e1 = ArcPos{unit(rng_) * kTwoPi};
  return s;
}

OracleSummary check_oracle(OracleTarget target, std::size_t samples, std::uint64_t seed, double max_deviation) {
  constexpr std::size_t kMaxNotes = 5;
  OracleSummary sum;
  sum.target = target;
  ScenarioSampler sampler(target, seed);
  const auto note = [&](const Scenario& s, const std::string& what) {
    if (sum.notes.size() >= kMaxNotes) return;
    char buf[160];
    std::snprintf(buf, sizeof buf, "d=%.9f zeta=%.9f e1=%.9f: ", s.d, s.zeta, s.e1.theta());
    sum.notes.push_back(buf + what);
  };
  for (std::size_t i = 0; i < samples; ++i) {
    const Scenario s = sampler.next();
    ++sum.samples;
    try {
      const EvacResult closed = evaluate(s);
      const ReplayResult rep = replay(s);
      if (closed.printed_formula_differs) ++sum.printed_formula_differs;
      const double dev = std::abs(closed.time_from_perimeter - rep.makespan);
      sum.max_deviation = std::max(sum.max_deviation, dev);
      if (!(dev <= max_deviation)) {
        ++sum.mismatches;
        note(s, "closed form " + std::to_string(closed.time_from_perimeter) + " vs replay " +
                    std::to_string(rep.makespan));
      }
      const AgreementReport agree = verify_agreement(s, rep);
      if (!agree.ok()) {
        ++sum.agreement_failures;
        note(s, agree.failures.front());
      }
    } catch (const std::exception& e) {
      ++sum.invalid;
      note(s, e.what());
    }
  }
  return sum;
}

}  // namespace evac
