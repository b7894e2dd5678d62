#include "evac/bounds.hpp"

#include <cmath>

#include "evac/geometry.hpp"

namespace evac {

std::string_view to_string(BoundRegime r) noexcept {
  switch (r) {
    case BoundRegime::TrianglePolygon: return "triangle";
    case BoundRegime::Polygon: return "polygon";
    case BoundRegime::SinRegime: return "sin";
    case BoundRegime::WirelessGap: return "wireless-gap";
  }
  return "?";
}

BoundResult f2f_lower_bound(double d) {
  if (!(d > 0.0 && d <= kPi)) throw DomainError("f2f_lower_bound: d " + std::to_string(d) + " outside (0, pi]");
  if (d > 2.0 * kPi / 3.0) return {1.0 + std::sin(d), BoundRegime::SinRegime, "1 + sin(d)"};
  if (d > kPi / 2.0) return {1.0 + std::sqrt(3.0), BoundRegime::TrianglePolygon, "1 + sqrt(3)"};
  return {3.0, BoundRegime::Polygon, "3"};
}

BoundResult wireless_gap_bound(double zeta) {
  if (!(zeta > 0.0 && zeta <= kPi)) {
    throw DomainError("wireless_gap_bound: zeta " + std::to_string(zeta) + " outside (0, pi]");
  }
  const double arc = kPi - zeta / 2.0;
  return {arc + 2.0 * std::sin(arc), BoundRegime::WirelessGap, "pi - zeta/2 + 2 sin(pi - zeta/2)"};
}

}  // namespace evac
