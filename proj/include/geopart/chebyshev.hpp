#pragma once

#include "geopart/geometry.hpp"

#include <span>

namespace geopart {

// z = a*x + b*y + c with maximum vertical deviation t over the fitted points.
struct PlaneFit {
  Rational a;
  Rational b;
  Rational c;
  Rational t;

  Rational at(const Point2& p) const { return a * p.x + b * p.y + c; }
  friend bool operator==(const PlaneFit&, const PlaneFit&) = default;
};

// Exact minimax plane. Throws std::invalid_argument for an empty input.
PlaneFit chebyshev_plane_fit(std::span<const Point3> pts);

// max_i |a x_i + b y_i + c - z_i|, zero for an empty input.
Rational max_vertical_error(const PlaneFit& plane, std::span<const Point3> pts);

}  // namespace geopart
