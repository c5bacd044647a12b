#pragma once

#include "geopart/geometry.hpp"

#include <vector>

namespace geopart {

struct Box {
  Rational xmin;
  Rational ymin;
  Rational xmax;
  Rational ymax;

  bool contains(const Point2& p) const {
    return p.x >= xmin && p.x <= xmax && p.y >= ymin && p.y <= ymax;
  }
};

// Bounding box of the points inflated by `margin` on every side.
Box inflated_bounding_box(const std::vector<Point2>& pts, const Rational& margin);

struct Trapezoid {
  Point2 left;   // event point bounding the face on the left (box corner for the first slab)
  Point2 right;  // event point bounding the face on the right
  int bottom = -1;  // carrier index: 0 box bottom, 1 box top, k+2 input segment k
  int top = -1;
};

// Vertical decomposition of non-crossing segments inside a box. Vertical
// order ties are broken lexicographically (symbolic shear), so a vertical
// input segment behaves like a steep one.
struct TrapezoidalDecomposition {
  std::vector<Point2> vertices;
  std::vector<Segment> vertical_edges;
  std::vector<Segment> carrier_edges;
  std::vector<Trapezoid> faces;  // bounded faces

  int vertex_count() const { return static_cast<int>(vertices.size()); }
  int edge_count() const {
    return static_cast<int>(vertical_edges.size() + carrier_edges.size());
  }
  int bounded_face_count() const { return static_cast<int>(faces.size()); }
  // Counting the unbounded face too, as Euler's formula does.
  int face_count_with_outer() const { return bounded_face_count() + 1; }
};

// Throws std::invalid_argument for crossing segments, degenerate segments or
// segments leaving the box.
TrapezoidalDecomposition trapezoidal_decomposition(const std::vector<Segment>& segments,
                                                   const Box& box);

}  // namespace geopart
