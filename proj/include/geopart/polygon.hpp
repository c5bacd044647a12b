#pragma once

#include "geopart/geometry.hpp"

#include <array>
#include <functional>
#include <string>
#include <vector>

namespace geopart {

struct Vertex {
  int id = -1;
  Point2 p;
  friend bool operator==(const Vertex& a, const Vertex& b) { return a.id == b.id && a.p == b.p; }
};

using Ring = std::vector<Vertex>;

std::vector<Point2> ring_points(const Ring& ring);
std::vector<int> ring_ids(const Ring& ring);

// Outer ring counterclockwise, holes clockwise. The polygon interior is on the
// left of every directed ring edge. Vertex ids are stable across faces cut
// from the same polygon.
struct PolygonWithHoles {
  Ring outer;
  std::vector<Ring> holes;

  int vertex_count() const;
  std::vector<Vertex> vertices() const;  // outer first, then holes in order
  Rational area2() const;
};

// Assigns ids 0..n-1 in input order and fixes ring orientation.
PolygonWithHoles make_polygon(const std::vector<Point2>& outer,
                              const std::vector<std::vector<Point2>>& holes = {});

struct ValidationReport {
  bool ok = true;
  std::string violation;
  std::vector<int> indices;

  static ValidationReport pass() { return {}; }
  static ValidationReport fail(std::string what, std::vector<int> where = {}) {
    return {false, std::move(what), std::move(where)};
  }
};

ValidationReport validate(const PolygonWithHoles& poly);

struct Diagonal {
  int u = -1;  // u < v
  int v = -1;
  Segment geometry;

  friend bool operator==(const Diagonal& a, const Diagonal& b) { return a.u == b.u && a.v == b.v; }
  friend bool operator<(const Diagonal& a, const Diagonal& b) {
    return a.u != b.u ? a.u < b.u : a.v < b.v;
  }
};

// Sorted by (u, v), no duplicates, no two members properly crossing.
using ConformingDiagonalSet = std::vector<Diagonal>;

void normalize_diagonal_set(ConformingDiagonalSet& set);
bool is_conforming(const ConformingDiagonalSet& set);

// Flattened, indexable view of a polygon for vertex-local queries.
class PolygonView {
 public:
  explicit PolygonView(const PolygonWithHoles& poly);

  int size() const { return static_cast<int>(pts_.size()); }
  const Point2& point(int i) const { return pts_[i]; }
  int id(int i) const { return ids_[i]; }
  int next(int i) const { return next_[i]; }
  int prev(int i) const { return prev_[i]; }
  int ring_of(int i) const { return ring_[i]; }
  int index_of(int id) const;  // -1 if absent
  bool has_id(int id) const { return index_of(id) >= 0; }

  bool adjacent(int i, int j) const { return next_[i] == j || prev_[i] == j; }
  // Interior angle > 180 degrees.
  bool is_reflex(int i) const;
  // Direction d (nonzero) points strictly into the interior wedge at vertex i.
  bool direction_in_wedge(int i, const Point2& d) const;
  // Open segment between vertices i and j lies in the polygon interior.
  bool is_diagonal(int i, int j) const;
  // Closed segment (a, b) avoids the boundary except where it touches at a or b.
  bool open_segment_clear(const Point2& a, const Point2& b) const;
  // Edge (i, next(i)) for all i.
  std::vector<std::array<int, 2>> edges() const;
  RingLocation locate(const Point2& p) const;

 private:
  std::vector<Point2> pts_;
  std::vector<int> ids_;
  std::vector<int> next_;
  std::vector<int> prev_;
  std::vector<int> ring_;
  std::vector<int> index_by_id_;
  std::vector<std::vector<Point2>> ring_pts_;
};

// Orders directions counterclockwise starting from `ref` (angle 0 first).
bool ccw_before(const Point2& ref, const Point2& d1, const Point2& d2);

Diagonal make_diagonal(const PolygonView& view, int i, int j);
std::vector<Diagonal> enumerate_diagonals(const PolygonWithHoles& poly);

struct Triangulation {
  std::vector<Triangle2> triangles;
  std::vector<std::array<int, 3>> corner_ids;  // CCW vertex ids per triangle
  ConformingDiagonalSet diagonals;
};

Triangulation triangulate(const PolygonWithHoles& poly);

// Faces of the subdivision of poly by D. Throws std::invalid_argument when D
// contains a non-diagonal or a crossing pair. Each face ring starts at its
// smallest id; faces are sorted by their outer id sequence.
std::vector<PolygonWithHoles> partition_by_diagonals(const PolygonWithHoles& poly,
                                                     const ConformingDiagonalSet& diagonals);
// Same, with a caller-supplied diagonal test over view indices.
std::vector<PolygonWithHoles> partition_by_diagonals(const PolygonView& view,
                                                     const ConformingDiagonalSet& diagonals,
                                                     const std::function<bool(int, int)>& is_diagonal);

// Cyclic id sequence of a ring, rotated to start at its minimal id.
std::vector<int> canonical_ring_ids(const Ring& ring);
std::string canonical_key(const PolygonWithHoles& poly);

struct ConvexDecomposition {
  std::vector<Ring> pieces;
  ConformingDiagonalSet added_diagonals;
};

// Pieces are the faces of the subdivision by the added diagonals, all convex
// and hole-free, vertices are polygon vertices, areas sum to the polygon area,
// interiors pairwise disjoint, and |D| <= 3|pieces| - 6 once |pieces| >= 3.
ValidationReport check_decomposition(const PolygonWithHoles& poly,
                                     const ConvexDecomposition& decomposition);

// Builds the decomposition induced by a diagonal set; the caller vouches that
// all faces are convex.
ConvexDecomposition decomposition_from_diagonals(const PolygonWithHoles& poly,
                                                 ConformingDiagonalSet diagonals);

}  // namespace geopart
