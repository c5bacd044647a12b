#pragma once

#include "geopart/polygon.hpp"
#include "geopart/separator.hpp"
#include "geopart/surface_basis.hpp"

#include <optional>
#include <string>
#include <vector>

namespace geopart {

struct CoverInstance {
  PointMask points = 0;
  std::vector<int> triangles;  // sorted basis ids

  static CoverInstance full(const SampleSet& samples, const Basis& basis);
  friend bool operator==(const CoverInstance&, const CoverInstance&) = default;
};

// Every basis triangle contained in an active triangle is active too.
bool has_closure(const CoverInstance& inst, const Basis& basis);

struct DisjointCover {
  std::vector<int> triangle_ids;  // sorted

  int size() const { return static_cast<int>(triangle_ids.size()); }
};

// Pairwise interior-disjoint basis triangles whose closed union contains every
// point of `points`.
ValidationReport check_disjoint_cover(const DisjointCover& cover, const Basis& basis,
                                      const SampleSet& samples, PointMask points);

// Minimum-cardinality cover drawn from the active triangles if one of size at
// most k_max exists.
std::optional<DisjointCover> exact_disjoint_cover(const CoverInstance& inst, const Basis& basis, int k_max);

// Side of a closed simple curve a basis triangle falls on. Crossed triangles
// meet the open interior and the open exterior; OnCurve is a point or segment
// lying on the curve, which belongs to both sides.
enum class CurveSide { Inside, Outside, Crossed, OnCurve };
CurveSide classify_against_curve(const Triangle2& tri, const std::vector<Point2>& curve);

struct CurveSplit {
  CoverInstance inside;
  CoverInstance outside;
  int crossed = 0;
};

// Points inside or on the curve go inside.
CurveSplit split_by_curve(const CoverInstance& inst, const Basis& basis, const SampleSet& samples,
                          const std::vector<Point2>& curve);

struct CompcoverConfig {
  SeparatorBudget budget;
  int depth_cap = -1;        // -1: ceil(log_{4/3} n)
  bool derive_delta = true;  // delta = 1 / depth cap
};

struct CompcoverOutcome {
  std::optional<DisjointCover> result;  // nullopt is FAIL
  CandidateStats stats;
  int depth_cap = 0;
  Rational delta;
  int max_level = 0;

  bool failed() const { return !result.has_value(); }
};

int default_depth_cap(int sample_count);

CompcoverOutcome compcover(const CoverInstance& inst, const SampleSet& samples, const Basis& basis,
                           const CompcoverConfig& cfg);

struct LiftedPatch {
  Triangle2 base;
  PlaneFit plane;
};

std::vector<LiftedPatch> lift_cover(const DisjointCover& cover, const Basis& basis);

// Largest vertical distance from a patch to the samples its base covers.
Rational patch_error(const LiftedPatch& patch, const SampleSet& samples);

}  // namespace geopart
