#pragma once

#include "geopart/homotopy.hpp"
#include "geopart/trapezoid.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace geopart {

struct SeparatorBudget {
  Rational delta{1, 13};
  int lambda = 6;
  int ell_max = 4;
  long max_candidates = 200;
  std::uint64_t seed = 0;

  // Throws std::invalid_argument unless delta > 0, lambda >= 1, ell_max is
  // even and >= 4, and max_candidates >= 0. The polygon recursion also needs
  // delta < 1/12.
  void validate(bool small_delta = true) const;
};

// Outcome counts for candidate separators at one solver run.
struct CandidateStats {
  long emitted = 0;
  long accepted = 0;
  long rejected = 0;
  long empty = 0;
  long duplicate = 0;
  long pruned = 0;

  CandidateStats& operator+=(const CandidateStats& o);
};

struct FeaturePoint {
  enum class Kind { Vertex, Projection, BoxCorner };
  Kind kind = Kind::Vertex;
  int vertex_id = -1;  // the vertex itself, or the source of a projection
  int carrier = -1;    // projections only
  bool up = false;     // projection lies above its source
  int corner = -1;     // 0..3 counterclockwise from the lower-left corner
  Point2 p;
};

// A carrier is a segment cycles may run along: the box bottom/top, a polygon
// edge, a diagonal, or a triangle's representative segment.
struct Carrier {
  enum class Kind { BoxBottom, BoxTop, Edge, Diagonal, Representative };
  Kind kind = Kind::Edge;
  Segment seg;  // lexicographically ordered endpoints
  int u = -1;   // feature ids of the endpoints, when they are features
  int v = -1;
};

// Where vertical cycle edges may sit: the x of a feature vertex or a box side.
struct Station {
  Point2 source;
  int source_id = -1;  // -1 left box side, -2 right box side
};

struct CycleSpace {
  Box box;
  std::vector<Carrier> carriers;  // box bottom and top first
  std::vector<Station> stations;  // strictly increasing x
};

struct SeparatorCycle {
  std::vector<FeaturePoint> vertices;  // counterclockwise
  std::vector<int> edge_carrier;       // edge i joins vertices i, i+1; -1 for vertical
  std::vector<int> key;                // feature tuple defining the stream order

  std::vector<Point2> ring() const;
};

// Polygon carriers: edges and diagonals. Requires distinct vertex x.
CycleSpace polygon_cycle_space(const PolygonWithHoles& poly);
// Triangle carriers: one representative segment per distinct non-vertical
// extreme-vertex chord.
CycleSpace triangle_cycle_space(const std::vector<Triangle2>& triangles);

// Streams simple alternating cycles: shortest first, then by the number of
// non-box carriers, then lexicographically by feature tuple. Stops after
// `max_candidates` cycles or when the callback returns false.
void for_each_cycle(const CycleSpace& space, int ell_max, long max_candidates,
                    const std::function<bool(const SeparatorCycle&)>& visit);

std::vector<SeparatorCycle> enumerate_polygon_cycles(const PolygonWithHoles& poly,
                                                     const SeparatorBudget& budget);
std::vector<SeparatorCycle> enumerate_curves(const std::vector<Triangle2>& basis,
                                             const SeparatorBudget& budget);

struct CycleConversion {
  bool accepted = false;
  std::string reason;  // set on rejection
  ConformingDiagonalSet diagonals;
  std::vector<PolygonWithHoles> faces;  // faces of the polygon cut by the diagonals
  std::vector<Chain> fragments;         // after endpoint extension
};

CycleConversion cycle_to_diagonals(const TriangleMesh& mesh, const SeparatorCycle& cycle);
CycleConversion cycle_to_diagonals(const PolygonWithHoles& poly, const Triangulation& tri,
                                   const SeparatorCycle& cycle);

// Closed-ring containment for separator cycles and curves.
RingLocation locate_in_cycle(const Point2& p, const std::vector<Point2>& ring);

}  // namespace geopart
