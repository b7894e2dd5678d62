#pragma once
/**
 * @file bounds.hpp
 * @brief Lower bounds for face-to-face evacuation and the wireless bound
 *        for robots that start further apart than the exits.
 */

#include <string>
#include <string_view>

namespace evac {

enum class BoundRegime { TrianglePolygon, Polygon, SinRegime, WirelessGap };

struct BoundResult {
  double value = 0.0;
  BoundRegime regime = BoundRegime::TrianglePolygon;
  std::string formula_text;
};

[[nodiscard]] std::string_view to_string(BoundRegime r) noexcept;

/// Piecewise lower bound on the total evacuation time (center leg
/// included): 3 on (0, π/2], 1 + √3 on (π/2, 2π/3], 1 + sin d on (2π/3, π].
/// Throws DomainError outside (0, π].
[[nodiscard]] BoundResult f2f_lower_bound(double d);

/// π − ζ/2 + 2·sin(π − ζ/2), for ζ ∈ (0, π]. Throws DomainError otherwise.
[[nodiscard]] BoundResult wireless_gap_bound(double zeta);

}  // namespace evac
