#include "geopart/polygon.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace geopart {

std::vector<Point2> ring_points(const Ring& ring) {
  std::vector<Point2> out;
  out.reserve(ring.size());
  for (const auto& v : ring) out.push_back(v.p);
  return out;
}

std::vector<int> ring_ids(const Ring& ring) {
  std::vector<int> out;
  out.reserve(ring.size());
  for (const auto& v : ring) out.push_back(v.id);
  return out;
}

int PolygonWithHoles::vertex_count() const {
  int n = static_cast<int>(outer.size());
  for (const auto& h : holes) n += static_cast<int>(h.size());
  return n;
}

std::vector<Vertex> PolygonWithHoles::vertices() const {
  std::vector<Vertex> out(outer.begin(), outer.end());
  for (const auto& h : holes) out.insert(out.end(), h.begin(), h.end());
  return out;
}

Rational PolygonWithHoles::area2() const {
  Rational a = signed_area2(ring_points(outer));
  for (const auto& h : holes) a += signed_area2(ring_points(h));
  return a;
}

PolygonWithHoles make_polygon(const std::vector<Point2>& outer,
                              const std::vector<std::vector<Point2>>& holes) {
  PolygonWithHoles poly;
  int next_id = 0;
  auto build = [&](const std::vector<Point2>& pts, bool want_ccw) {
    Ring ring;
    for (const auto& p : pts) ring.push_back({next_id++, p});
    if (ring.size() >= 3) {
      Rational a = signed_area2(pts);
      if ((want_ccw && a < 0) || (!want_ccw && a > 0)) std::reverse(ring.begin(), ring.end());
    }
    return ring;
  };
  poly.outer = build(outer, true);
  for (const auto& h : holes) poly.holes.push_back(build(h, false));
  return poly;
}

ValidationReport validate(const PolygonWithHoles& poly) {
  if (poly.vertex_count() < 3 || poly.outer.size() < 3) {
    return ValidationReport::fail("fewer than three vertices");
  }
  std::vector<const Ring*> rings{&poly.outer};
  for (const auto& h : poly.holes) rings.push_back(&h);
  {
    std::vector<int> ids;
    for (const auto* r : rings) {
      for (const auto& v : *r) ids.push_back(v.id);
    }
    std::sort(ids.begin(), ids.end());
    for (std::size_t i = 1; i < ids.size(); ++i) {
      if (ids[i] == ids[i - 1]) return ValidationReport::fail("duplicate vertex id", {ids[i]});
    }
  }
  for (std::size_t r = 0; r < rings.size(); ++r) {
    const auto pts = ring_points(*rings[r]);
    if (pts.size() < 3 || !ring_is_simple(pts)) {
      return ValidationReport::fail(r == 0 ? "outer ring not simple" : "hole ring not simple",
                                    {static_cast<int>(r)});
    }
    Rational a = signed_area2(pts);
    if (r == 0 && a <= 0) return ValidationReport::fail("outer ring not counterclockwise", {0});
    if (r > 0 && a >= 0) {
      return ValidationReport::fail("hole ring not clockwise", {static_cast<int>(r)});
    }
  }
  for (std::size_t r = 0; r < rings.size(); ++r) {
    for (std::size_t s = r + 1; s < rings.size(); ++s) {
      const Ring& A = *rings[r];
      const Ring& B = *rings[s];
      for (std::size_t i = 0; i < A.size(); ++i) {
        Segment ea{A[i].p, A[(i + 1) % A.size()].p};
        for (std::size_t j = 0; j < B.size(); ++j) {
          Segment eb{B[j].p, B[(j + 1) % B.size()].p};
          auto hit = segments_intersect(ea, eb);
          if (hit.relation == SegmentRelation::ProperCross) {
            return ValidationReport::fail("rings cross", {static_cast<int>(r), static_cast<int>(s)});
          }
          if (hit.relation == SegmentRelation::Touch) {
            return ValidationReport::fail("rings share a point",
                                          {static_cast<int>(r), static_cast<int>(s)});
          }
        }
      }
    }
  }
  const auto outer_pts = ring_points(poly.outer);
  for (std::size_t h = 0; h < poly.holes.size(); ++h) {
    if (locate_in_ring(poly.holes[h][0].p, outer_pts) != RingLocation::Inside) {
      return ValidationReport::fail("hole outside outer ring", {static_cast<int>(h + 1)});
    }
    for (std::size_t g = 0; g < poly.holes.size(); ++g) {
      if (g == h) continue;
      if (locate_in_ring(poly.holes[h][0].p, ring_points(poly.holes[g])) == RingLocation::Inside) {
        return ValidationReport::fail("holes nested",
                                      {static_cast<int>(h + 1), static_cast<int>(g + 1)});
      }
    }
  }
  return ValidationReport::pass();
}

void normalize_diagonal_set(ConformingDiagonalSet& set) {
  for (auto& d : set) {
    if (d.u > d.v) {
      std::swap(d.u, d.v);
      std::swap(d.geometry.a, d.geometry.b);
    }
  }
  std::sort(set.begin(), set.end());
  set.erase(std::unique(set.begin(), set.end()), set.end());
}

bool is_conforming(const ConformingDiagonalSet& set) {
  for (std::size_t i = 0; i < set.size(); ++i) {
    for (std::size_t j = i + 1; j < set.size(); ++j) {
      if (set[i] == set[j]) return false;
      auto hit = segments_intersect(set[i].geometry, set[j].geometry);
      if (hit.relation == SegmentRelation::ProperCross || hit.overlap) return false;
    }
  }
  return true;
}

PolygonView::PolygonView(const PolygonWithHoles& poly) {
  std::vector<const Ring*> rings{&poly.outer};
  for (const auto& h : poly.holes) rings.push_back(&h);
  int max_id = -1;
  for (std::size_t r = 0; r < rings.size(); ++r) {
    const Ring& ring = *rings[r];
    const int base = static_cast<int>(pts_.size());
    const int n = static_cast<int>(ring.size());
    ring_pts_.push_back(ring_points(ring));
    for (int i = 0; i < n; ++i) {
      pts_.push_back(ring[i].p);
      ids_.push_back(ring[i].id);
      next_.push_back(base + (i + 1) % n);
      prev_.push_back(base + (i + n - 1) % n);
      ring_.push_back(static_cast<int>(r));
      max_id = std::max(max_id, ring[i].id);
    }
  }
  index_by_id_.assign(max_id + 1, -1);
  for (int i = 0; i < size(); ++i) {
    if (ids_[i] >= 0) index_by_id_[ids_[i]] = i;
  }
}

int PolygonView::index_of(int id) const {
  if (id < 0 || id >= static_cast<int>(index_by_id_.size())) return -1;
  return index_by_id_[id];
}

bool PolygonView::is_reflex(int i) const { return orient(pts_[prev_[i]], pts_[i], pts_[next_[i]]) < 0; }

bool PolygonView::direction_in_wedge(int i, const Point2& d) const {
  const Point2& p = pts_[i];
  Point2 v1 = sub(pts_[next_[i]], p);
  Point2 v2 = sub(pts_[prev_[i]], p);
  int turn = sgn(cross_dir(v1, v2));
  if (turn > 0) return cross_dir(v1, d) > 0 && cross_dir(d, v2) > 0;
  if (turn < 0) return !(cross_dir(v2, d) >= 0 && cross_dir(d, v1) >= 0);
  return cross_dir(v1, d) > 0;
}

bool PolygonView::open_segment_clear(const Point2& a, const Point2& b) const {
  const Segment s{a, b};
  for (int i = 0; i < size(); ++i) {
    const Point2& p = pts_[i];
    const Point2& q = pts_[next_[i]];
    auto hit = segments_intersect(s, Segment{p, q});
    if (hit.relation == SegmentRelation::Disjoint) continue;
    if (hit.relation == SegmentRelation::ProperCross || hit.overlap) return false;
    if (on_open_segment(p, a, b) || on_open_segment(q, a, b)) return false;
  }
  return true;
}

bool PolygonView::is_diagonal(int i, int j) const {
  if (i == j || adjacent(i, j) || pts_[i] == pts_[j]) return false;
  if (!direction_in_wedge(i, sub(pts_[j], pts_[i]))) return false;
  if (!direction_in_wedge(j, sub(pts_[i], pts_[j]))) return false;
  return open_segment_clear(pts_[i], pts_[j]);
}

std::vector<std::array<int, 2>> PolygonView::edges() const {
  std::vector<std::array<int, 2>> out;
  for (int i = 0; i < size(); ++i) out.push_back({i, next_[i]});
  return out;
}

RingLocation PolygonView::locate(const Point2& p) const {
  auto outer = locate_in_ring(p, ring_pts_[0]);
  if (outer != RingLocation::Inside) return outer;
  for (std::size_t h = 1; h < ring_pts_.size(); ++h) {
    auto loc = locate_in_ring(p, ring_pts_[h]);
    if (loc == RingLocation::OnBoundary) return loc;
    if (loc == RingLocation::Inside) return RingLocation::Outside;
  }
  return RingLocation::Inside;
}

bool ccw_before(const Point2& ref, const Point2& d1, const Point2& d2) {
  auto half = [&](const Point2& d) {
    int c = sgn(cross_dir(ref, d));
    return (c > 0 || (c == 0 && dot(ref, d) > 0)) ? 0 : 1;
  };
  int h1 = half(d1), h2 = half(d2);
  if (h1 != h2) return h1 < h2;
  return cross_dir(d1, d2) > 0;
}

Diagonal make_diagonal(const PolygonView& view, int i, int j) {
  Diagonal d;
  d.u = view.id(i);
  d.v = view.id(j);
  d.geometry = Segment{view.point(i), view.point(j)};
  if (d.u > d.v) {
    std::swap(d.u, d.v);
    std::swap(d.geometry.a, d.geometry.b);
  }
  return d;
}

std::vector<Diagonal> enumerate_diagonals(const PolygonWithHoles& poly) {
  PolygonView view(poly);
  std::vector<Diagonal> out;
  for (int i = 0; i < view.size(); ++i) {
    for (int j = i + 1; j < view.size(); ++j) {
      if (view.is_diagonal(i, j)) out.push_back(make_diagonal(view, i, j));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

std::vector<int> rotate_to_min(std::vector<int> ids) {
  if (ids.empty()) return ids;
  std::vector<int> best;
  const std::size_t n = ids.size();
  int m = *std::min_element(ids.begin(), ids.end());
  for (std::size_t s = 0; s < n; ++s) {
    if (ids[s] != m) continue;
    std::vector<int> cand;
    for (std::size_t k = 0; k < n; ++k) cand.push_back(ids[(s + k) % n]);
    if (best.empty() || cand < best) best = cand;
  }
  return best;
}

Ring rotate_ring_to_min(const Ring& ring) {
  auto ids = ring_ids(ring);
  auto target = rotate_to_min(ids);
  const std::size_t n = ring.size();
  for (std::size_t s = 0; s < n; ++s) {
    bool match = true;
    for (std::size_t k = 0; k < n && match; ++k) match = ring[(s + k) % n].id == target[k];
    if (match) {
      Ring out;
      for (std::size_t k = 0; k < n; ++k) out.push_back(ring[(s + k) % n]);
      return out;
    }
  }
  return ring;
}

}  // namespace

std::vector<int> canonical_ring_ids(const Ring& ring) { return rotate_to_min(ring_ids(ring)); }

std::string canonical_key(const PolygonWithHoles& poly) {
  std::string key;
  for (int id : canonical_ring_ids(poly.outer)) key += std::to_string(id) + ",";
  std::vector<std::vector<int>> holes;
  for (const auto& h : poly.holes) holes.push_back(canonical_ring_ids(h));
  std::sort(holes.begin(), holes.end());
  for (const auto& h : holes) {
    key += "|";
    for (int id : h) key += std::to_string(id) + ",";
  }
  return key;
}

std::vector<PolygonWithHoles> partition_by_diagonals(const PolygonWithHoles& poly,
                                                     const ConformingDiagonalSet& diagonals) {
  PolygonView view(poly);
  return partition_by_diagonals(view, diagonals, [&](int i, int j) { return view.is_diagonal(i, j); });
}

std::vector<PolygonWithHoles> partition_by_diagonals(const PolygonView& view,
                                                     const ConformingDiagonalSet& diagonals,
                                                     const std::function<bool(int, int)>& is_diagonal) {
  const int n = view.size();
  std::vector<std::vector<int>> diag_nbrs(n);
  std::vector<std::pair<int, int>> seen;
  for (const auto& d : diagonals) {
    int i = view.index_of(d.u), j = view.index_of(d.v);
    if (i < 0 || j < 0 || !is_diagonal(i, j)) {
      throw std::invalid_argument("partition_by_diagonals: (" + std::to_string(d.u) + ", " +
                                  std::to_string(d.v) + ") is not a diagonal");
    }
    auto key = std::minmax(i, j);
    if (std::find(seen.begin(), seen.end(), std::pair<int, int>(key.first, key.second)) !=
        seen.end()) {
      continue;
    }
    seen.emplace_back(key.first, key.second);
    diag_nbrs[i].push_back(j);
    diag_nbrs[j].push_back(i);
  }
  for (std::size_t a = 0; a < seen.size(); ++a) {
    for (std::size_t b = a + 1; b < seen.size(); ++b) {
      Segment s1{view.point(seen[a].first), view.point(seen[a].second)};
      Segment s2{view.point(seen[b].first), view.point(seen[b].second)};
      if (segments_intersect(s1, s2).relation == SegmentRelation::ProperCross) {
        throw std::invalid_argument("partition_by_diagonals: diagonals cross");
      }
    }
  }

  // Outgoing interior half-edges per vertex in CCW order from the ring edge.
  std::vector<std::vector<int>> out(n);
  for (int i = 0; i < n; ++i) {
    const Point2 ref = sub(view.point(view.next(i)), view.point(i));
    auto nbrs = diag_nbrs[i];
    std::sort(nbrs.begin(), nbrs.end(), [&](int a, int b) {
      return ccw_before(ref, sub(view.point(a), view.point(i)), sub(view.point(b), view.point(i)));
    });
    out[i].push_back(view.next(i));
    out[i].insert(out[i].end(), nbrs.begin(), nbrs.end());
  }
  auto position = [&](int at, int from) {
    if (from == view.prev(at)) return static_cast<int>(out[at].size());
    for (std::size_t k = 1; k < out[at].size(); ++k) {
      if (out[at][k] == from) return static_cast<int>(k);
    }
    throw std::logic_error("partition_by_diagonals: broken half-edge structure");
  };

  std::vector<std::vector<char>> visited(n);
  for (int i = 0; i < n; ++i) visited[i].assign(out[i].size(), 0);

  struct Cycle {
    std::vector<int> verts;
    Rational area2;
  };
  std::vector<Cycle> cycles;
  for (int i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < out[i].size(); ++k) {
      if (visited[i][k]) continue;
      Cycle c;
      int cur = i;
      int slot = static_cast<int>(k);
      while (!visited[cur][slot]) {
        visited[cur][slot] = 1;
        c.verts.push_back(cur);
        int to = out[cur][slot];
        slot = position(to, cur) - 1;
        cur = to;
      }
      std::vector<Point2> pts;
      for (int v : c.verts) pts.push_back(view.point(v));
      c.area2 = signed_area2(pts);
      cycles.push_back(std::move(c));
    }
  }

  auto to_ring = [&](const std::vector<int>& verts) {
    Ring r;
    for (int v : verts) r.push_back({view.id(v), view.point(v)});
    return rotate_ring_to_min(r);
  };

  std::vector<std::size_t> outers, inners;
  for (std::size_t c = 0; c < cycles.size(); ++c) {
    (cycles[c].area2 > 0 ? outers : inners).push_back(c);
  }
  std::vector<PolygonWithHoles> faces(outers.size());
  for (std::size_t f = 0; f < outers.size(); ++f) faces[f].outer = to_ring(cycles[outers[f]].verts);
  for (std::size_t c : inners) {
    std::size_t best = outers.size();
    for (std::size_t f = 0; f < outers.size(); ++f) {
      std::vector<Point2> ring;
      for (int v : cycles[outers[f]].verts) ring.push_back(view.point(v));
      bool contained = false;
      for (int v : cycles[c].verts) {
        auto loc = locate_in_ring(view.point(v), ring);
        if (loc == RingLocation::OnBoundary) continue;
        contained = loc == RingLocation::Inside;
        break;
      }
      if (!contained) continue;
      if (best == outers.size() || cycles[outers[f]].area2 < cycles[outers[best]].area2) best = f;
    }
    if (best == outers.size()) throw std::logic_error("partition_by_diagonals: orphan hole cycle");
    faces[best].holes.push_back(to_ring(cycles[c].verts));
  }
  for (auto& f : faces) {
    std::sort(f.holes.begin(), f.holes.end(),
              [](const Ring& a, const Ring& b) { return ring_ids(a) < ring_ids(b); });
  }
  std::sort(faces.begin(), faces.end(), [](const PolygonWithHoles& a, const PolygonWithHoles& b) {
    return ring_ids(a.outer) < ring_ids(b.outer);
  });
  return faces;
}

Triangulation triangulate(const PolygonWithHoles& poly) {
  auto candidates = enumerate_diagonals(poly);
  Triangulation tri;
  for (const auto& d : candidates) {
    bool ok = true;
    for (const auto& e : tri.diagonals) {
      if (e.u == d.u || e.u == d.v || e.v == d.u || e.v == d.v) continue;
      if (segments_intersect(d.geometry, e.geometry).relation != SegmentRelation::Disjoint) {
        ok = false;
        break;
      }
    }
    if (ok) tri.diagonals.push_back(d);
  }
  normalize_diagonal_set(tri.diagonals);
  for (const auto& face : partition_by_diagonals(poly, tri.diagonals)) {
    if (face.outer.size() != 3 || !face.holes.empty()) {
      throw std::logic_error("triangulate: maximal diagonal set left a non-triangular face");
    }
    tri.triangles.push_back(Triangle2::make(face.outer[0].p, face.outer[1].p, face.outer[2].p));
    tri.corner_ids.push_back({face.outer[0].id, face.outer[1].id, face.outer[2].id});
  }
  return tri;
}

ConvexDecomposition decomposition_from_diagonals(const PolygonWithHoles& poly,
                                                 ConformingDiagonalSet diagonals) {
  normalize_diagonal_set(diagonals);
  ConvexDecomposition dec;
  for (auto& face : partition_by_diagonals(poly, diagonals)) {
    dec.pieces.push_back(std::move(face.outer));
  }
  dec.added_diagonals = std::move(diagonals);
  return dec;
}

namespace {

bool convex_rings_interior_disjoint(const std::vector<Point2>& a, const std::vector<Point2>& b) {
  auto separated_by = [](const std::vector<Point2>& s, const std::vector<Point2>& t) {
    for (std::size_t i = 0; i < s.size(); ++i) {
      const Point2& p = s[i];
      const Point2& q = s[(i + 1) % s.size()];
      if (p == q) continue;
      bool all_out = true;
      for (const auto& v : t) {
        if (orient(p, q, v) > 0) {
          all_out = false;
          break;
        }
      }
      if (all_out) return true;
    }
    return false;
  };
  return separated_by(a, b) || separated_by(b, a);
}

}  // namespace

ValidationReport check_decomposition(const PolygonWithHoles& poly,
                                     const ConvexDecomposition& decomposition) {
  PolygonView view(poly);
  const auto& diags = decomposition.added_diagonals;
  for (const auto& d : diags) {
    int i = view.index_of(d.u), j = view.index_of(d.v);
    if (i < 0 || j < 0 || !view.is_diagonal(i, j)) {
      return ValidationReport::fail("added segment is not a diagonal", {d.u, d.v});
    }
    if (d.geometry.a != view.point(i) || d.geometry.b != view.point(j)) {
      return ValidationReport::fail("diagonal geometry does not match vertices", {d.u, d.v});
    }
  }
  if (!is_conforming(diags)) return ValidationReport::fail("added diagonals cross");

  const auto& pieces = decomposition.pieces;
  if (pieces.empty()) return ValidationReport::fail("no pieces");
  for (std::size_t k = 0; k < pieces.size(); ++k) {
    for (const auto& v : pieces[k]) {
      int i = view.index_of(v.id);
      if (i < 0 || view.point(i) != v.p) {
        return ValidationReport::fail("piece vertex is not a polygon vertex",
                                      {static_cast<int>(k), v.id});
      }
    }
    auto pts = ring_points(pieces[k]);
    if (pts.size() < 3 || !ring_is_simple(pts) || signed_area2(pts) <= 0) {
      return ValidationReport::fail("piece is not a simple CCW ring", {static_cast<int>(k)});
    }
    if (!is_convex(pts)) return ValidationReport::fail("piece not convex", {static_cast<int>(k)});
    for (std::size_t e = 0; e < pieces[k].size(); ++e) {
      int a = view.index_of(pieces[k][e].id);
      int b = view.index_of(pieces[k][(e + 1) % pieces[k].size()].id);
      if (view.next(a) == b) continue;
      Diagonal probe;
      probe.u = std::min(view.id(a), view.id(b));
      probe.v = std::max(view.id(a), view.id(b));
      if (!std::binary_search(diags.begin(), diags.end(), probe)) {
        return ValidationReport::fail("piece edge is neither a polygon edge nor an added diagonal",
                                      {static_cast<int>(k), view.id(a), view.id(b)});
      }
    }
  }

  Rational total = 0;
  for (const auto& piece : pieces) total += signed_area2(ring_points(piece));
  if (total != poly.area2()) return ValidationReport::fail("piece areas do not sum to polygon area");

  for (std::size_t a = 0; a < pieces.size(); ++a) {
    auto pa = ring_points(pieces[a]);
    for (std::size_t b = a + 1; b < pieces.size(); ++b) {
      if (!convex_rings_interior_disjoint(pa, ring_points(pieces[b]))) {
        return ValidationReport::fail("piece interiors overlap",
                                      {static_cast<int>(a), static_cast<int>(b)});
      }
    }
  }

  std::vector<PolygonWithHoles> faces;
  try {
    faces = partition_by_diagonals(poly, diags);
  } catch (const std::invalid_argument& e) {
    return ValidationReport::fail(e.what());
  }
  std::vector<std::vector<int>> expected, actual;
  for (const auto& f : faces) {
    if (!f.holes.empty()) return ValidationReport::fail("a face retains a hole");
    expected.push_back(canonical_ring_ids(f.outer));
  }
  for (const auto& p : pieces) actual.push_back(canonical_ring_ids(p));
  std::sort(expected.begin(), expected.end());
  std::sort(actual.begin(), actual.end());
  if (expected != actual) {
    return ValidationReport::fail("pieces differ from the faces induced by the added diagonals");
  }
  if (pieces.size() >= 3 && diags.size() > 3 * pieces.size() - 6) {
    return ValidationReport::fail("more than 3K-6 diagonals");
  }
  return ValidationReport::pass();
}

}  // namespace geopart
