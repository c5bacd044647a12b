#pragma once

#include "geopart/rational.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace geopart {

struct Point2 {
  Rational x;
  Rational y;

  Point2() = default;
  Point2(Rational x_, Rational y_) : x(std::move(x_)), y(std::move(y_)) {}
  Point2(long x_, long y_) : x(x_), y(y_) {}

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
  friend bool operator!=(const Point2& a, const Point2& b) { return !(a == b); }
};

// Lexicographic (x, then y). This is also the symbolic-shear order used for
// "leftmost"/"left endpoint" decisions.
bool lex_less(const Point2& a, const Point2& b);
struct LexLess {
  bool operator()(const Point2& a, const Point2& b) const { return lex_less(a, b); }
};

struct Point3 {
  Rational x;
  Rational y;
  Rational z;

  Point2 projection() const { return Point2(x, y); }
  friend bool operator==(const Point3& a, const Point3& b) {
    return a.x == b.x && a.y == b.y && a.z == b.z;
  }
};

struct Segment {
  Point2 a;
  Point2 b;
  bool degenerate() const { return a == b; }
};

enum class Orientation { CW = -1, Collinear = 0, CCW = 1 };

// Twice the signed area of (p, q, r).
Rational cross(const Point2& p, const Point2& q, const Point2& r);
int orient(const Point2& p, const Point2& q, const Point2& r);
Orientation orientation(const Point2& p, const Point2& q, const Point2& r);

// Cross product of direction vectors.
Rational cross_dir(const Point2& u, const Point2& v);
Point2 sub(const Point2& a, const Point2& b);
Point2 add(const Point2& a, const Point2& b);
Point2 scale(const Point2& a, const Rational& s);
Rational dot(const Point2& a, const Point2& b);
Point2 midpoint(const Point2& a, const Point2& b);
Point2 lerp(const Point2& a, const Point2& b, const Rational& t);

// Closed segment membership (p collinear with and between a, b).
bool on_segment(const Point2& p, const Point2& a, const Point2& b);
// Open segment membership (excludes endpoints).
bool on_open_segment(const Point2& p, const Point2& a, const Point2& b);

enum class SegmentRelation { Disjoint, ProperCross, Touch };

struct SegmentIntersection {
  SegmentRelation relation = SegmentRelation::Disjoint;
  // Set when the segments are collinear and share more than one point.
  bool overlap = false;
};

// Throws std::invalid_argument for a degenerate segment.
SegmentIntersection segments_intersect(const Segment& s1, const Segment& s2);

// Intersection of the supporting lines of (a,b) and (c,d); nullopt if parallel.
std::optional<Point2> line_intersection(const Point2& a, const Point2& b, const Point2& c,
                                        const Point2& d);

// Strict convex hull, counterclockwise, starting at the lexicographically
// smallest point. Throws std::invalid_argument for empty input.
std::vector<Point2> convex_hull(std::vector<Point2> points);

// Twice the signed area of a closed ring.
Rational signed_area2(std::span<const Point2> ring);

// True iff non-adjacent edges are disjoint and adjacent edges share only their
// common vertex. Repeated vertices make a ring non-simple.
bool ring_is_simple(std::span<const Point2> ring);

// Every turn CCW or collinear. Requires a simple CCW ring with at least three
// vertices; throws std::invalid_argument otherwise.
bool is_convex(std::span<const Point2> ring);

enum class RingLocation { Outside, OnBoundary, Inside };
RingLocation locate_in_ring(const Point2& p, std::span<const Point2> ring);

enum class Degeneracy { Full, Segment, Point };

struct Triangle2 {
  Point2 v0;
  Point2 v1;
  Point2 v2;
  Degeneracy degeneracy = Degeneracy::Full;

  // Normalizes: full triangles CCW; segments keep (v0, v1) with v2 = v1 and
  // v0 lexicographically smaller; points have all three equal.
  static Triangle2 make(const Point2& a, const Point2& b, const Point2& c);
  static Triangle2 from_hull(std::span<const Point2> hull);

  bool contains(const Point2& p) const;           // closed
  bool contains_interior(const Point2& p) const;  // open; false for degenerate
  Rational area2() const;
  std::vector<Point2> vertices() const;  // distinct vertices, 1 to 3
  friend bool operator==(const Triangle2& a, const Triangle2& b);
};

// Degenerate triangles have empty interior and are interior-disjoint from
// everything.
bool interiors_disjoint(const Triangle2& a, const Triangle2& b);
// Closed containment of `inner` in `outer`.
bool triangle_contains(const Triangle2& outer, const Triangle2& inner);
// Does the closed segment (a, b) meet the open interior of the full triangle?
bool segment_meets_open_triangle(const Point2& a, const Point2& b, const Triangle2& t);

std::string to_string(const Point2& p);

}  // namespace geopart
