#pragma once

#include "geopart/chebyshev.hpp"
#include "geopart/geometry.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

namespace geopart {

// Subset of sample indices; bit i is sample i.
using PointMask = std::uint64_t;

inline constexpr int kMaxSamples = 64;

inline bool mask_has(PointMask m, int i) { return (m >> i) & 1U; }
int mask_size(PointMask m);
PointMask full_mask(int n);

class SampleSet {
 public:
  // Throws std::invalid_argument on an empty input, more than kMaxSamples
  // points, repeated (x, y) projections, or mu < 0.
  SampleSet(std::vector<Point3> points, Rational mu);

  int size() const { return static_cast<int>(points3_.size()); }
  const std::vector<Point3>& points3() const { return points3_; }
  const std::vector<Point2>& points2() const { return points2_; }
  const Rational& mu() const { return mu_; }

  std::vector<Point2> projections(PointMask m) const;
  std::vector<Point3> lifted(PointMask m) const;

 private:
  std::vector<Point3> points3_;
  std::vector<Point2> points2_;
  Rational mu_;
};

// Closed-triangle membership.
PointMask covered_mask(const Triangle2& tri, const SampleSet& samples);

// Memoized minimax plane per subset.
class PlaneCache {
 public:
  explicit PlaneCache(const SampleSet& samples) : samples_(samples) {}
  const PlaneFit& fit(PointMask m);
  bool valid(PointMask m) { return m == 0 || fit(m).t <= samples_.mu(); }

 private:
  const SampleSet& samples_;
  std::map<PointMask, PlaneFit> fits_;
};

// Fits the plane over the triangle's covered samples; valid iff the error is
// at most mu. A triangle covering nothing is valid.
bool is_valid_triangle(const Triangle2& tri, const SampleSet& samples);

struct SubsetRecord {
  PointMask mask = 0;
  Triangle2 witness;
};

// Every distinct nonempty S ∩ T over closed triangles T, each with a witness,
// sorted by mask.
std::vector<SubsetRecord> enumerate_F(const SampleSet& samples);

struct Hexagon {
  enum class Kind { Bounded, Unbounded, Degenerate };
  Kind kind = Kind::Unbounded;
  std::vector<Point2> vertices;  // counterclockwise when bounded

  // Fan from the bottom vertex (minimal y, then x).
  std::vector<Triangle2> triangulate() const;
};

// Intersection of the wedges of a strict convex hull (counterclockwise) at the
// chosen vertex indices. Throws std::invalid_argument for a bad index or a hull
// with fewer than 3 vertices.
Hexagon hexagon_for_vertices(const std::vector<Point2>& hull, const std::vector<int>& chosen);
// Same, for the hull of the masked samples and three of its vertices.
Hexagon hexagon_for_triple(const SampleSet& samples, PointMask r, const Point2& p, const Point2& q,
                           const Point2& s);

struct BasisTriangle {
  Triangle2 tri;
  PointMask covered = 0;
  PlaneFit plane;

  const Rational& cheb_error() const { return plane.t; }
};

// Full triangles first rotated to start at their lexicographically smallest
// vertex, so equal triangles compare equal field by field.
Triangle2 canonical_triangle(const Triangle2& t);
struct TriangleLess {
  bool operator()(const Triangle2& a, const Triangle2& b) const;
};

class Basis {
 public:
  Basis() = default;
  explicit Basis(std::vector<BasisTriangle> triangles);

  int size() const { return static_cast<int>(triangles_.size()); }
  const BasisTriangle& operator[](int i) const { return triangles_[i]; }
  const std::vector<BasisTriangle>& triangles() const { return triangles_; }
  // tri_inner ⊆ tri_outer (closed); reflexive.
  bool contained_in(int inner, int outer) const;
  const std::vector<int>& contained_ids(int outer) const { return inside_[outer]; }
  std::optional<int> find(const Triangle2& t) const;

 private:
  std::vector<BasisTriangle> triangles_;
  std::vector<std::vector<int>> inside_;
  std::map<Triangle2, int, TriangleLess> index_;
};

struct BasisStats {
  long subsets = 0;
  long low_dimensional = 0;
  long hexagons_bounded = 0;
  long hexagons_unbounded = 0;
  long candidates = 0;
  long invalid = 0;
};

Basis build_basis(const SampleSet& samples, BasisStats* stats = nullptr);
Basis build_basis(const SampleSet& samples, const std::vector<SubsetRecord>& family,
                  BasisStats* stats = nullptr);

struct BasisSelection {
  std::vector<Triangle2> triangles;
  std::vector<std::optional<int>> ids;  // basis index of each, if present
};

// Up to four basis triangles inside `tri` covering S ∩ tri. Throws
// std::invalid_argument when tri is not valid.
BasisSelection select_basis_cover(const Triangle2& tri, const SampleSet& samples, const Basis& basis);

}  // namespace geopart
