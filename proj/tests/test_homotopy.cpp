#include <doctest.h>

#include "geopart/convex_decomp.hpp"
#include "geopart/corpus.hpp"
#include "geopart/homotopy.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <random>
#include <set>

using namespace geopart;

namespace {

PolygonWithHoles annulus() {
  return make_polygon({{0, 0}, {6, 0}, {6, 6}, {0, 6}}, {{{2, 2}, {4, 2}, {4, 4}, {2, 4}}});
}

Chain chain(std::vector<Point2> pts) { return Chain{std::move(pts)}; }

Point2 centroid(const TriangleMesh& mesh, int t) {
  const auto& c = mesh.corners(t);
  const auto& v = mesh.view();
  return scale(add(add(v.point(c[0]), v.point(c[1])), v.point(c[2])), Rational(1, 3));
}

// Self-avoiding walk through the triangulation from a corner of the first
// triangle to a different corner of the last, threading centroids and shared
// edge midpoints, so the chain is simple and meets no vertex in between.
Chain random_chain(const TriangleMesh& mesh, std::mt19937_64& rng, int max_steps) {
  const auto& view = mesh.view();
  std::uniform_int_distribution<int> pick_t(0, mesh.triangle_count() - 1);
  std::uniform_int_distribution<int> pick3(0, 2);
  int t = pick_t(rng);
  std::vector<int> walk{t};
  std::set<int> seen{t};
  for (int s = 0; s < max_steps; ++s) {
    std::vector<int> options;
    for (int k = 0; k < 3; ++k) {
      int u = mesh.neighbor(t, k);
      if (u >= 0 && !seen.count(u)) options.push_back(u);
    }
    if (options.empty()) break;
    t = options[std::uniform_int_distribution<std::size_t>(0, options.size() - 1)(rng)];
    walk.push_back(t);
    seen.insert(t);
  }
  const int start = mesh.corners(walk.front())[pick3(rng)];
  int end = mesh.corners(walk.back())[pick3(rng)];
  while (end == start) end = mesh.corners(walk.back())[pick3(rng)];
  Chain c;
  c.points.push_back(view.point(start));
  for (std::size_t i = 0; i < walk.size(); ++i) {
    c.points.push_back(centroid(mesh, walk[i]));
    if (i + 1 < walk.size()) {
      const auto e = mesh.crossing(walk[i], walk[i + 1]);
      c.points.push_back(midpoint(view.point(e.left), view.point(e.right)));
    }
  }
  c.points.push_back(view.point(end));
  return c;
}

// Winding number of a closed polyline around p, which must not lie on it.
int winding(const std::vector<Point2>& loop, const Point2& p) {
  int w = 0;
  for (std::size_t i = 0; i < loop.size(); ++i) {
    const Point2& a = loop[i];
    const Point2& b = loop[(i + 1) % loop.size()];
    if (a.y <= p.y && b.y > p.y && orient(a, b, p) > 0) ++w;
    if (b.y <= p.y && a.y > p.y && orient(a, b, p) < 0) --w;
  }
  return w;
}

Point2 point_inside_hole(const Ring& hole) {
  auto pts = ring_points(hole);
  std::reverse(pts.begin(), pts.end());
  const auto t = triangulate(make_polygon(pts)).triangles.front();
  return scale(add(add(t.v0, t.v1), t.v2), Rational(1, 3));
}

// Euclidean shortest path over the visibility graph of a hole-free polygon.
double visibility_shortest(const PolygonWithHoles& poly, int from_id, int to_id) {
  PolygonView view(poly);
  const int n = view.size();
  auto len = [&](int i, int j) {
    return std::hypot(to_double(view.point(i).x - view.point(j).x), to_double(view.point(i).y - view.point(j).y));
  };
  std::vector<double> dist(n, std::numeric_limits<double>::infinity());
  using Item = std::pair<double, int>;
  std::priority_queue<Item, std::vector<Item>, std::greater<>> pq;
  const int s = view.index_of(from_id);
  dist[s] = 0;
  pq.push({0, s});
  while (!pq.empty()) {
    auto [d, i] = pq.top();
    pq.pop();
    if (d > dist[i]) continue;
    for (int j = 0; j < n; ++j) {
      if (j == i) continue;
      if (!view.adjacent(i, j) && !oracle::is_diagonal(poly, view.id(i), view.id(j))) continue;
      if (dist[i] + len(i, j) < dist[j]) {
        dist[j] = dist[i] + len(i, j);
        pq.push({dist[j], j});
      }
    }
  }
  return dist[view.index_of(to_id)];
}

// Connected components of the chain inside the open convex ring.
int components_in_open_piece(const Chain& c, const std::vector<Point2>& ring) {
  auto strictly_inside = [&](const Point2& p) {
    for (std::size_t i = 0; i < ring.size(); ++i) {
      if (orient(ring[i], ring[(i + 1) % ring.size()], p) <= 0) return false;
    }
    return true;
  };
  int count = 0;
  for (std::size_t s = 0; s + 1 < c.points.size(); ++s) {
    const Point2& a = c.points[s];
    const Point2& b = c.points[s + 1];
    Rational lo = 0, hi = 1;
    bool open_lo = false, open_hi = false;
    bool empty = false;
    for (std::size_t i = 0; i < ring.size() && !empty; ++i) {
      const Point2& p = ring[i];
      const Point2& q = ring[(i + 1) % ring.size()];
      const Rational fa = cross(p, q, a);
      const Rational fb = cross(p, q, b);
      // f(t) = fa + t (fb - fa) > 0
      if (fa == fb) {
        if (fa <= 0) empty = true;
        continue;
      }
      const Rational root = fa / (fa - fb);
      if (fb > fa) {
        if (root > lo || (root == lo)) {
          lo = root;
          open_lo = true;
        }
      } else if (root < hi || root == hi) {
        hi = root;
        open_hi = true;
      }
    }
    if (empty || lo > hi || (lo == hi && (open_lo || open_hi))) continue;
    ++count;
  }
  for (std::size_t s = 1; s + 1 < c.points.size(); ++s) {
    if (strictly_inside(c.points[s])) --count;
  }
  return count;
}

}  // namespace

TEST_CASE("build_sleeve") {
  auto quad = make_polygon({{0, 0}, {3, 0}, {4, 2}, {0, 3}});
  const auto tri = triangulate(quad);
  REQUIRE(tri.diagonals.size() == 1);
  const Diagonal d = tri.diagonals.front();
  PolygonView view(quad);

  // A detour through the triangle holding edge (0, 1) stays in it.
  int t01 = -1;
  for (std::size_t t = 0; t < tri.corner_ids.size(); ++t) {
    const auto& c = tri.corner_ids[t];
    if (std::count(c.begin(), c.end(), 0) && std::count(c.begin(), c.end(), 1)) t01 = static_cast<int>(t);
  }
  REQUIRE(t01 >= 0);
  const auto& tr = tri.triangles[t01];
  const Point2 inner = scale(add(add(tr.v0, tr.v1), tr.v2), Rational(1, 3));
  CHECK(build_sleeve(quad, tri, chain({view.point(0), inner, view.point(1)})).triangles.size() == 1);

  // The other diagonal crosses the triangulating one.
  int a = d.u == 0 || d.v == 0 ? 1 : 0;
  int b = a + 2;
  auto s = build_sleeve(quad, tri, chain({view.point(a), view.point(b)}));
  CHECK(s.triangles.size() == 2);
  CHECK(s.edges.size() == 1);

  const auto ring = annulus();
  const auto rt = triangulate(ring);
  auto u = build_sleeve(ring, rt, chain({{6, 0}, {1, 1}, {1, 5}, {6, 6}}));
  CHECK(u.triangles.size() >= 4);
  CHECK(std::set<int>(u.triangles.begin(), u.triangles.end()).size() == u.triangles.size());
  for (std::size_t i = 0; i + 1 < u.triangles.size(); ++i) {
    const auto& c1 = rt.corner_ids[u.triangles[i]];
    const auto& c2 = rt.corner_ids[u.triangles[i + 1]];
    for (int id : u.edges[i]) {
      CHECK(std::count(c1.begin(), c1.end(), id) == 1);
      CHECK(std::count(c2.begin(), c2.end(), id) == 1);
    }
  }

  CHECK_THROWS_AS(build_sleeve(ring, rt, chain({{6, 0}, {3, 3}, {6, 6}})), ChainError);
  CHECK_THROWS_AS(build_sleeve(ring, rt, chain({{6, 0}, {1, 1}, {5, 5}})), ChainError);
}

TEST_CASE("shortest_homotopic_path examples") {
  auto quad = make_polygon({{0, 0}, {3, 0}, {4, 2}, {0, 3}});
  const auto tri = triangulate(quad);
  auto straight = chain({{0, 0}, {4, 2}});
  CHECK(shortest_homotopic_path(quad, tri, straight).points == straight.points);
  auto detour = chain({{0, 0}, {3, 1}, {4, 2}});
  CHECK(shortest_homotopic_path(quad, tri, detour).points == straight.points);

  const auto ring = annulus();
  const auto rt = triangulate(ring);
  auto left = shortest_homotopic_path(ring, rt, chain({{6, 0}, {1, 1}, {1, 5}, {6, 6}}));
  CHECK(left.points == std::vector<Point2>{{6, 0}, {2, 2}, {2, 4}, {6, 6}});
  auto right = shortest_homotopic_path(ring, rt, chain({{6, 0}, {6, 6}}));
  CHECK(right.points == std::vector<Point2>{{6, 0}, {6, 6}});
  auto around = shortest_homotopic_path(ring, rt, chain({{6, 0}, {5, 1}, {5, 5}, {1, 5}, {1, 1}, {4, 1}, {4, 2}}));
  CHECK(around.points == std::vector<Point2>{{6, 0}, {4, 4}, {2, 4}, {2, 2}, {4, 2}});
}

TEST_CASE("extract_diagonals") {
  const auto ring = annulus();
  CHECK(extract_diagonals(ring, chain({{0, 0}, {6, 0}, {6, 6}})).empty());
  auto two = extract_diagonals(ring, chain({{6, 0}, {2, 2}, {2, 4}, {6, 6}}));
  REQUIRE(two.size() == 2);
  CHECK(two[0].u == 1);
  CHECK(two[0].v == 4);
  CHECK(two[1].u == 2);
  CHECK(two[1].v == 7);

  auto first = extract_diagonals(ring, chain({{6, 0}, {2, 2}, {2, 4}}));
  auto second = extract_diagonals(ring, chain({{0, 0}, {2, 2}, {6, 0}}));
  ConformingDiagonalSet both = first;
  both.insert(both.end(), second.begin(), second.end());
  normalize_diagonal_set(both);
  CHECK(both.size() == 2);

  CHECK_THROWS_AS(extract_diagonals(ring, chain({{0, 0}, {6, 6}})), ChainError);
}

TEST_CASE("shortest_homotopic_path properties on a fuzzed corpus") {
  const auto corpus = generate_corpus(33, 40, CorpusOptions{12, 2, 20});
  std::mt19937_64 rng(5);
  int checked = 0;
  for (const auto& poly : corpus) {
    const auto tri = triangulate(poly);
    const TriangleMesh mesh(poly, tri);
    const auto& view = mesh.view();
    const auto pieces = hertel_mehlhorn(poly).pieces;
    for (int rep = 0; rep < 4; ++rep) {
      const Chain c = random_chain(mesh, rng, 8);
      const Chain out = mesh.shortest_homotopic_path(c);
      ++checked;

      CHECK(out.points.front() == c.points.front());
      CHECK(out.points.back() == c.points.back());
      for (const auto& p : out.points) CHECK(mesh.vertex_index_at(p) >= 0);
      CHECK(chain_length(out) <= chain_length(c) + 1e-9);
      CHECK_NOTHROW(extract_diagonals(mesh, out));

      CHECK(mesh.shortest_homotopic_path(out).points == out.points);

      std::vector<Point2> loop = c.points;
      for (auto it = out.points.rbegin() + 1; it + 1 != out.points.rend(); ++it) loop.push_back(*it);
      for (const auto& hole : poly.holes) CHECK(winding(loop, point_inside_hole(hole)) == 0);

      if (poly.holes.empty()) {
        const double best = visibility_shortest(poly, view.id(mesh.vertex_index_at(c.points.front())),
                                                view.id(mesh.vertex_index_at(c.points.back())));
        CHECK(std::abs(chain_length(out) - best) < 1e-9);
      }

      for (const auto& piece : pieces) {
        const auto ring = ring_points(piece);
        CHECK(components_in_open_piece(out, ring) <= components_in_open_piece(c, ring));
      }
    }
  }
  CHECK(checked == 160);
}

TEST_CASE("convex polygons give straight paths") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<long> coord(-20, 20);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<Point2> pts;
    for (int i = 0; i < 12; ++i) pts.emplace_back(coord(rng), coord(rng));
    const auto hull = convex_hull(pts);
    if (hull.size() < 4) continue;
    const auto poly = make_polygon(hull);
    const auto tri = triangulate(poly);
    const TriangleMesh mesh(poly, tri);
    for (int rep = 0; rep < 3; ++rep) {
      const Chain c = random_chain(mesh, rng, 6);
      const Chain out = mesh.shortest_homotopic_path(c);
      CHECK(out.points == std::vector<Point2>{c.points.front(), c.points.back()});
    }
  }
}
