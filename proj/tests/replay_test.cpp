#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <sstream>

#include "evac/replay.hpp"

using namespace evac;

namespace {

Scenario make(Model m, bool labeled, double d, double zeta, double e1) {
  Scenario s;
  s.model = m;
  s.labeled = labeled;
  s.d = d;
  s.zeta = zeta;
  s.e1 = ArcPos{e1};
  return s;
}

std::size_t count(const Trajectory& t, EventKind k) {
  std::size_t n = 0;
  for (const TraceEvent& e : t.events) n += e.kind == k ? 1 : 0;
  return n;
}

}  // namespace

TEST_CASE("wireless half-turn scenario") {
  const Scenario s = make(Model::Wireless, false, kPi, 0.0, kPi / 4);
  const ReplayResult r = replay(s);
  CHECK(r.makespan == doctest::Approx(kPi / 4 + std::sqrt(2.0)));
  CHECK(r.makespan == doctest::Approx(2.1996).epsilon(1e-4));
  CHECK(verify_agreement(s, r).ok());
  CHECK(count(r.robots[0], EventKind::SentMessage) == 1);
  CHECK(count(r.robots[1], EventKind::ReceivedMessage) == 1);
}

TEST_CASE("exit at a start point") {
  const Scenario s = make(Model::FaceToFace, false, 1.0, 0.0, 0.0);
  const ReplayResult r = replay(s);
  CHECK(r.makespan == doctest::Approx(0.0));
  CHECK(r.robots[0].segments.empty());
  CHECK(r.robots[1].segments.empty());
  const AgreementReport rep = verify_agreement(s, r);
  CHECK(rep.ok());
  for (const Trajectory& t : r.robots) {
    for (const TraceEvent& e : t.events) {
      CHECK((e.kind == EventKind::Exited || e.kind == EventKind::FoundExit));
    }
  }
}

TEST_CASE("one robot starts on an exit, the other keeps going") {
  const Scenario s = make(Model::Wireless, false, 1.0, 1.0, 0.5);
  const ReplayResult r = replay(s);
  CHECK(r.robots[0].segments.empty());
  CHECK(r.makespan == doctest::Approx(evaluate(s).time_from_perimeter));
}

TEST_CASE("a meeting is seen by both robots") {
  const Scenario s = make(Model::FaceToFace, false, 2.5, 0.0, 0.2);
  const ReplayResult r = replay(s);
  CHECK(count(r.robots[0], EventKind::Meet) == 1);
  CHECK(count(r.robots[1], EventKind::Meet) == 1);
  CHECK(verify_agreement(s, r).ok());
  CHECK(r.makespan == doctest::Approx(evaluate(s).time_from_perimeter).epsilon(1e-5));
}

TEST_CASE("one-sided meeting is caught") {
  const Scenario s = make(Model::FaceToFace, false, 2.5, 0.0, 0.2);
  ReplayResult r = replay(s);
  auto& ev = r.robots[1].events;
  ev.erase(std::remove_if(ev.begin(), ev.end(), [](const TraceEvent& e) { return e.kind == EventKind::Meet; }),
           ev.end());
  CHECK_FALSE(verify_agreement(s, r).ok());
}

TEST_CASE("other mutations are caught") {
  const Scenario s = make(Model::Wireless, false, kPi, 0.0, kPi / 4);
  SUBCASE("too fast") {
    ReplayResult r = replay(s);
    r.robots[1].segments.back().t1 -= 0.1;
    CHECK_FALSE(verify_agreement(s, r).ok());
  }
  SUBCASE("exit where there is none") {
    ReplayResult r = replay(s);
    r.robots[1].events.back().at = Point2{0.0, 1.0};
    CHECK_FALSE(verify_agreement(s, r).ok());
  }
  SUBCASE("hold") {
    ReplayResult r = replay(s);
    Segment hold;
    hold.kind = SegmentKind::Hold;
    hold.t0 = hold.t1 = r.robots[0].segments.back().t1;
    r.robots[0].segments.push_back(hold);
    CHECK_FALSE(verify_agreement(s, r).ok());
  }
  SUBCASE("message without a sender") {
    ReplayResult r = replay(s);
    auto& ev = r.robots[0].events;
    ev.erase(std::remove_if(ev.begin(), ev.end(),
                            [](const TraceEvent& e) { return e.kind == EventKind::SentMessage; }),
             ev.end());
    CHECK_FALSE(verify_agreement(s, r).ok());
  }
}

TEST_CASE("missed meeting followed by a recovery") {
  // Fallback after an interception that finds no partner.
  bool seen = false;
  for (int j = 0; j < 2000 && !seen; ++j) {
    const Scenario s = make(Model::FaceToFace, false, 1.5, 1.5, kTwoPi * j / 2000.0);
    const ReplayResult r = replay(s);
    for (const Trajectory& t : r.robots) seen = seen || count(t, EventKind::MissedMeeting) > 0;
    CHECK(verify_agreement(s, r).ok());
    CHECK(r.makespan == doctest::Approx(evaluate(s).time_from_perimeter).epsilon(1e-4));
  }
  CHECK(seen);
}

TEST_CASE("trace dump format") {
  const Scenario s = make(Model::Wireless, false, kPi, 0.0, kPi / 4);
  std::ostringstream out;
  write_trace(out, replay(s));
  const std::string text = out.str();
  CHECK(text.rfind("R1,arc,0,", 0) == 0);
  CHECK(text.find("R2,chord,") != std::string::npos);
  CHECK(std::count(text.begin(), text.end(), '\n') == 3);
}

TEST_CASE("oracle batches") {
  for (OracleTarget t : kOracleTargets) {
    const OracleSummary s = check_oracle(t, 200, 3);
    INFO(to_string(t));
    CHECK(s.samples == 200);
    CHECK(s.ok());
    CHECK(s.max_deviation < 1e-4);
  }
}

TEST_CASE("sampler is reproducible") {
  ScenarioSampler a(OracleTarget::F2FLabeled, 9);
  ScenarioSampler b(OracleTarget::F2FLabeled, 9);
  for (int i = 0; i < 10; ++i) {
    const Scenario x = a.next();
    const Scenario y = b.next();
    CHECK(x.d == y.d);
    CHECK(x.zeta == y.zeta);
    CHECK(x.e1.theta() == y.e1.theta());
    CHECK(x.zeta <= x.d);
  }
}
