#pragma once

#include "geopart/separator.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geopart {

// Lower bound on the number of convex pieces from the reflex vertices alone.
int piece_lower_bound(const PolygonWithHoles& poly);

// Minimum-piece diagonal-based convex decomposition if it has at most k_max
// pieces, nullopt otherwise.
std::optional<ConvexDecomposition> exact_decompose(const PolygonWithHoles& poly, int k_max);

ConvexDecomposition hertel_mehlhorn(const PolygonWithHoles& poly);

// Shear (x, y) -> (x + s*y, y) with s > 0 small enough that the sheared x
// order of the vertices is their lexicographic order. Zero when all vertex x
// are already distinct.
Rational general_position_shear(const PolygonWithHoles& poly);
PolygonWithHoles apply_shear(const PolygonWithHoles& poly, const Rational& s);

struct DecomposeConfig {
  Rational epsilon{1};
  SeparatorBudget budget;
  int alpha_cap = -1;        // -1: ceil(log_{4/3}(3n - 6))
  bool derive_delta = true;  // delta = epsilon / (2 alpha), clamped below 1/12
  bool verbose = false;
};

struct DecomposeOutcome {
  std::optional<ConvexDecomposition> result;  // nullopt is FAIL
  CandidateStats stats;
  int alpha_cap = 0;
  Rational delta;
  Rational epsilon;        // effective, after any adjustment
  int max_level = 0;       // deepest successful separator level
  std::vector<std::string> log;  // rejection diagnostics in verbose mode

  bool failed() const { return !result.has_value(); }
};

int default_alpha_cap(int vertex_count);

DecomposeOutcome decompose(const PolygonWithHoles& poly, const DecomposeConfig& cfg);

}  // namespace geopart
