#include "evac/scenario.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "evac/face_to_face.hpp"
#include "evac/wireless.hpp"

namespace evac {

std::string_view to_string(Model m) noexcept { return m == Model::Wireless ? "wireless" : "f2f"; }

std::string_view to_string(CaseTag tag) noexcept {
  switch (tag) {
    case CaseTag::W1a: return "W1a";
    case CaseTag::W1b: return "W1b";
    case CaseTag::W1c: return "W1c";
    case CaseTag::W2: return "W2";
    case CaseTag::W3a: return "W3a";
    case CaseTag::W3b: return "W3b";
    case CaseTag::WS: return "WS";
    case CaseTag::WL_L1: return "WL-L1";
    case CaseTag::WL_L2: return "WL-L2";
    case CaseTag::WL_S: return "WL-S";
    case CaseTag::F0_1: return "F0-1";
    case CaseTag::F0_2a: return "F0-2a";
    case CaseTag::F0_2b: return "F0-2b";
    case CaseTag::F0_3a: return "F0-3a";
    case CaseTag::F0_3b: return "F0-3b";
    case CaseTag::F0_4a: return "F0-4a";
    case CaseTag::F0_4b: return "F0-4b";
    case CaseTag::F0_4c: return "F0-4c";
    case CaseTag::F0_S: return "F0-S";
    case CaseTag::Fd_1a: return "Fd-1a";
    case CaseTag::Fd_1b: return "Fd-1b";
    case CaseTag::Fd_1c: return "Fd-1c";
    case CaseTag::Fd_2a: return "Fd-2a";
    case CaseTag::Fd_2b: return "Fd-2b";
    case CaseTag::Fd_2c: return "Fd-2c";
    case CaseTag::Fd_S: return "Fd-S";
    case CaseTag::FL_1: return "FL-1";
    case CaseTag::FL_2: return "FL-2";
    case CaseTag::FL_3: return "FL-3";
    case CaseTag::FL_4: return "FL-4";
    case CaseTag::FL_S: return "FL-S";
  }
  return "?";
}

void Scenario::validate() const {
  if (!(d >= 0.0 && d <= kPi + kAngularTol)) {
    throw DomainError("scenario: d = " + std::to_string(d) + " outside [0, pi]");
  }
  if (!(zeta >= 0.0)) throw DomainError("scenario: zeta = " + std::to_string(zeta) + " is negative");
  if (zeta > d + kAngularTol) {
    throw DomainError("scenario: zeta = " + std::to_string(zeta) + " exceeds d; only wireless_gap_bound covers this regime");
  }
}

EvacResult evaluate(const Scenario& s, double tol) {
  if (s.model == Model::Wireless) {
    return s.labeled ? eval_wireless_labeled(s) : eval_wireless_unlabeled(s);
  }
  if (s.labeled) return eval_f2f_labeled(s, tol);
  if (s.zeta <= kAngularTol) return eval_f2f_same(s, tol);
  if (std::abs(s.zeta - s.d) <= kAngularTol) return eval_f2f_diff(s, tol);
  throw WrongEvaluatorError("evaluate: unlabeled face-to-face needs zeta = 0 or zeta = d");
}

ZetaPolicy ZetaPolicy::parse(std::string_view text) {
  if (text == "0") return zero();
  if (text == "d") return full();
  if (text == "d/2") return half();
  const bool scaled = !text.empty() && text.back() == 'd';
  if (scaled) text.remove_suffix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), v);
  if (ec != std::errc{} || ptr != text.data() + text.size() || text.empty() || !(v >= 0.0)) {
    throw DomainError("zeta policy: cannot parse '" + std::string(text) + (scaled ? "d'" : "'"));
  }
  return scaled ? fraction(v) : fixed(v);
}

double ZetaPolicy::resolve(double d) const noexcept {
  switch (kind) {
    case Kind::Zero: return 0.0;
    case Kind::Half: return d / 2.0;
    case Kind::Full: return d;
    case Kind::Fraction: return value * d;
    case Kind::Explicit: return value;
  }
  return 0.0;
}

std::string ZetaPolicy::label() const {
  switch (kind) {
    case Kind::Zero: return "0";
    case Kind::Half: return "d/2";
    case Kind::Full: return "d";
    case Kind::Fraction:
    case Kind::Explicit: {
      char buf[32];
      std::snprintf(buf, sizeof buf, kind == Kind::Fraction ? "%gd" : "%g", value);
      return buf;
    }
  }
  return "?";
}

WorstCase worst_over_exits(Scenario base, double exit_step, const Evaluator& eval) {
  if (!(exit_step > 0.0)) throw DomainError("worst_over_exits: exit step must be positive");
  WorstCase w;
  bool first = true;
  for (std::size_t k = 0;; ++k) {
    const double e1 = static_cast<double>(k) * exit_step;
    if (e1 >= kTwoPi) break;
    base.e1 = ArcPos{e1};
    const EvacResult r = eval(base);
    ++w.evaluations;
    if (first || r.time_from_perimeter > w.time) {
      w.time = r.time_from_perimeter;
      w.argmax_e1 = base.e1;
      w.case_tag = r.case_tag;
      first = false;
    }
  }
  return w;
}

}  // namespace evac
