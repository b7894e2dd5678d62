#include <doctest.h>

#include <cmath>

#include "evac/wireless.hpp"

using namespace evac;

namespace {

Scenario wireless(double d, double zeta, double e1, bool labeled = false) {
  Scenario s;
  s.model = Model::Wireless;
  s.labeled = labeled;
  s.d = d;
  s.zeta = zeta;
  s.e1 = ArcPos{e1};
  return s;
}

}  // namespace

TEST_CASE("unlabeled: exits a half turn apart") {
  const EvacResult r = eval_wireless_unlabeled(wireless(kPi, 0.0, kPi / 4));
  CHECK(r.time_from_perimeter == doctest::Approx(kPi / 4 + std::sqrt(2.0)));
  CHECK(r.time_from_perimeter == doctest::Approx(2.1996).epsilon(1e-4));
  CHECK(r.case_tag == CaseTag::W1a);
  CHECK(r.discovery_arc_x == doctest::Approx(kPi / 4));
  CHECK(total_time(r) == doctest::Approx(1.0 + kPi / 4 + std::sqrt(2.0)));
}

TEST_CASE("unlabeled: both robots start on an exit") {
  const EvacResult r = eval_wireless_unlabeled(wireless(kPi / 2, 0.0, 0.0));
  CHECK(r.time_from_perimeter == doctest::Approx(0.0));
  CHECK(r.simultaneous);
}

TEST_CASE("unlabeled: coincident exits reduce to a single exit") {
  const EvacResult r = eval_wireless_unlabeled(wireless(0.0, 0.0, 2 * kPi / 3));
  CHECK(r.time_from_perimeter == doctest::Approx(2 * kPi / 3 + std::sqrt(3.0)));
  CHECK(r.time_from_perimeter == doctest::Approx(3.8264).epsilon(1e-4));
}

TEST_CASE("labeled examples") {
  SUBCASE("half turn") {
    const EvacResult r = eval_wireless_labeled(wireless(kPi, 0.0, kPi / 4, true));
    CHECK(r.time_from_perimeter == doctest::Approx(kPi / 4 + std::sqrt(2.0)));
  }
  SUBCASE("exit at the common start") {
    for (double d : {0.0, 0.7, 2.0, kPi}) {
      CHECK(eval_wireless_labeled(wireless(d, 0.0, 0.0, true)).time_from_perimeter == doctest::Approx(0.0));
    }
  }
  SUBCASE("receiver heads for the other exit") {
    const EvacResult r = eval_wireless_labeled(wireless(2.0, 1.0, 1.3, true));
    CHECK(r.discovery_arc_x == doctest::Approx(0.8));
    CHECK(r.time_from_perimeter == doctest::Approx(0.8 + 2 * std::sin(2.3)));
    CHECK(r.time_from_perimeter == doctest::Approx(2.2914).epsilon(1e-4));
    CHECK((r.case_tag == CaseTag::WL_L1 || r.case_tag == CaseTag::WL_L2));
  }
}

TEST_CASE("start gap wider than d is refused") {
  CHECK_THROWS_AS((void)eval_wireless_unlabeled(wireless(1.0, 1.5, 0.0)), DomainError);
  CHECK_THROWS_AS((void)eval_wireless_labeled(wireless(1.0, 1.5, 0.0, true)), DomainError);
}

TEST_CASE("wrong evaluator") {
  Scenario s = wireless(1.0, 0.0, 0.3);
  s.model = Model::FaceToFace;
  CHECK_THROWS_AS((void)eval_wireless_unlabeled(s), WrongEvaluatorError);
  CHECK_THROWS_AS((void)eval_wireless_labeled(wireless(1.0, 0.0, 0.3)), WrongEvaluatorError);
}

TEST_CASE("worst case at d = pi") {
  SUBCASE("zeta = 0") {
    const WorstCase w = worst_wireless(kPi, ZetaPolicy::zero(), false, 0.001);
    CHECK(w.time == doctest::Approx(2.1996).epsilon(0.01 / 2.1996));
    Scenario s = wireless(kPi, 0.0, w.argmax_e1.theta());
    CHECK(eval_wireless_unlabeled(s).discovery_arc_x == doctest::Approx(kPi / 4).epsilon(0.002));
  }
  SUBCASE("zeta = d") {
    const WorstCase w = worst_wireless(kPi, ZetaPolicy::full(), false, 0.001);
    CHECK(w.time == doctest::Approx(kPi / 4 + std::sqrt(2.0)).epsilon(0.01 / 2.1996));
  }
  SUBCASE("zeta = d/2") {
    const WorstCase w = worst_wireless(kPi, ZetaPolicy::half(), false, 0.001);
    CHECK(w.time == doctest::Approx(kPi / 2 + std::sqrt(2.0)).epsilon(0.01 / 2.985));
  }
}

TEST_CASE("grid properties") {
  for (int i = 0; i <= 40; ++i) {
    const double d = kPi * i / 40.0;
    for (double frac : {0.0, 0.3, 0.5, 1.0}) {
      const double zeta = frac * d;
      for (int j = 0; j < 180; ++j) {
        const double e1 = kTwoPi * j / 180.0 + 0.0013;
        const EvacResult u = eval_wireless_unlabeled(wireless(d, zeta, e1));
        const EvacResult l = eval_wireless_labeled(wireless(d, zeta, e1, true));
        CHECK(u.time_from_perimeter == doctest::Approx(std::max(u.r1_exit_time, u.r2_exit_time)));
        CHECK(l.time_from_perimeter <= u.time_from_perimeter + 1e-12);
        // Mirror image: the exit pair reflected across the x-axis.
        const Scenario m = wireless(d, zeta, -(e1 + d));
        CHECK(eval_wireless_unlabeled(m).time_from_perimeter == doctest::Approx(u.time_from_perimeter));
      }
    }
  }
}

TEST_CASE("receiver routes") {
  SUBCASE("coincident exits: go back to the finder") {
    const ReceiverRoute r = receiver_route_unlabeled(0.0, 0.0, 1.0);
    REQUIRE(r.stops.size() == 1);
    CHECK(r.stops[0].theta() == doctest::Approx(1.0));
  }
  SUBCASE("candidate already walked by the finder") {
    CHECK(classify_candidate(ArcPos{0.2}, 0.0, 1.0) == CandidateClass::ExploredFinder);
    CHECK(classify_candidate(ArcPos{-0.2}, 0.0, 1.0) == CandidateClass::ExploredReceiver);
    CHECK(classify_candidate(ArcPos{0.0}, 0.4, 1.0) == CandidateClass::Skipped);
    CHECK(classify_candidate(ArcPos{kPi}, 0.0, 1.0) == CandidateClass::Open);
  }
}
