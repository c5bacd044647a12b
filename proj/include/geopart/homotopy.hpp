#pragma once

#include "geopart/polygon.hpp"

#include <array>
#include <stdexcept>
#include <vector>

namespace geopart {

// Polyline with at least two points. Endpoints of chains handed to the sleeve
// builder must be polygon vertices.
struct Chain {
  std::vector<Point2> points;
};

Rational chain_length_squared_sum(const Chain& chain);  // sum of squared segment lengths
double chain_length(const Chain& chain);

class ChainError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One crossing of an internal triangulation edge, from triangle `from` into
// triangle `to`. `left`/`right` are the edge endpoints as seen by a traveller
// moving from `from` into `to` (polygon-view vertex indices).
struct EdgeCrossing {
  int from = -1;
  int to = -1;
  int left = -1;
  int right = -1;
  friend bool operator==(const EdgeCrossing&, const EdgeCrossing&) = default;
};

struct Sleeve {
  std::vector<int> triangles;            // ids into the triangulation
  std::vector<std::array<int, 2>> edges;  // shared edge between consecutive triangles (vertex ids)
  std::vector<EdgeCrossing> crossings;
};

// Triangulation with adjacency, fans and point location helpers. Built once
// per polygon and shared read-only.
class TriangleMesh {
 public:
  TriangleMesh(const PolygonWithHoles& poly, const Triangulation& tri);

  const PolygonView& view() const { return view_; }
  const PolygonWithHoles& polygon() const { return poly_; }
  int triangle_count() const { return static_cast<int>(corners_.size()); }
  const std::array<int, 3>& corners(int t) const { return corners_[t]; }
  int neighbor(int t, int k) const { return neighbors_[t][k]; }
  // Crossing record for moving from t into its neighbour u.
  EdgeCrossing crossing(int t, int u) const;
  int vertex_index_at(const Point2& p) const;  // -1 if p is not a polygon vertex
  // Precomputed PolygonView::is_diagonal.
  bool is_diagonal(int i, int j) const { return diagonal_[static_cast<std::size_t>(i) * view_.size() + j] != 0; }

  // Raw crossing sequence of the chain (no reduction). Throws ChainError.
  std::vector<EdgeCrossing> trace(const Chain& chain) const;
  // Cancels immediate back-and-forth pairs and drops fan crossings around the
  // endpoints.
  std::vector<EdgeCrossing> reduce(std::vector<EdgeCrossing> raw, int start, int end) const;

  Sleeve build_sleeve(const Chain& chain) const;
  Chain shortest_homotopic_path(const Chain& chain) const;

 private:
  int fan_slot(int w, int t) const;
  // Fan triangle at vertex w whose closed corner cone contains direction d,
  // nearest to `current_slot` when two qualify. -1 if none.
  int fan_slot_for_direction(int w, const Point2& d, int current_slot) const;

  PolygonWithHoles poly_;
  PolygonView view_;
  std::vector<std::array<int, 3>> corners_;    // view indices, CCW
  std::vector<std::array<int, 3>> neighbors_;  // across edge (k, k+1)
  std::vector<std::vector<int>> fans_;         // per vertex, CCW from the ring edge to next
  std::vector<char> diagonal_;                 // row-major over view indices
};

Sleeve build_sleeve(const PolygonWithHoles& poly, const Triangulation& tri, const Chain& chain);
Chain shortest_homotopic_path(const PolygonWithHoles& poly, const Triangulation& tri,
                              const Chain& chain);
// Diagonals among the path's links; links through intermediate vertices are
// split there. Throws ChainError for a link that is neither edge nor diagonal.
ConformingDiagonalSet extract_diagonals(const PolygonWithHoles& poly, const Chain& path);
ConformingDiagonalSet extract_diagonals(const PolygonView& view, const Chain& path);
ConformingDiagonalSet extract_diagonals(const TriangleMesh& mesh, const Chain& path);

}  // namespace geopart
