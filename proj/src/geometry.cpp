#include "geopart/geometry.hpp"

#include <algorithm>
#include <stdexcept>

namespace geopart {

bool lex_less(const Point2& a, const Point2& b) {
  if (a.x != b.x) return a.x < b.x;
  return a.y < b.y;
}

Rational cross(const Point2& p, const Point2& q, const Point2& r) {
  Rational dx1 = q.x - p.x;
  Rational dy1 = q.y - p.y;
  Rational dx2 = r.x - p.x;
  Rational dy2 = r.y - p.y;
  return Rational(dx1 * dy2 - dy1 * dx2);
}

int orient(const Point2& p, const Point2& q, const Point2& r) { return sgn(cross(p, q, r)); }

Orientation orientation(const Point2& p, const Point2& q, const Point2& r) {
  return static_cast<Orientation>(orient(p, q, r));
}

Rational cross_dir(const Point2& u, const Point2& v) { return Rational(u.x * v.y - u.y * v.x); }
Point2 sub(const Point2& a, const Point2& b) { return Point2(Rational(a.x - b.x), Rational(a.y - b.y)); }
Point2 add(const Point2& a, const Point2& b) { return Point2(Rational(a.x + b.x), Rational(a.y + b.y)); }
Point2 scale(const Point2& a, const Rational& s) { return Point2(Rational(a.x * s), Rational(a.y * s)); }
Rational dot(const Point2& a, const Point2& b) { return Rational(a.x * b.x + a.y * b.y); }
Point2 midpoint(const Point2& a, const Point2& b) {
  return Point2(Rational((a.x + b.x) / 2), Rational((a.y + b.y) / 2));
}
Point2 lerp(const Point2& a, const Point2& b, const Rational& t) {
  return Point2(Rational(a.x + (b.x - a.x) * t), Rational(a.y + (b.y - a.y) * t));
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (orient(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool on_open_segment(const Point2& p, const Point2& a, const Point2& b) {
  return p != a && p != b && on_segment(p, a, b);
}

SegmentIntersection segments_intersect(const Segment& s1, const Segment& s2) {
  if (s1.degenerate() || s2.degenerate()) {
    throw std::invalid_argument("segments_intersect: degenerate segment");
  }
  const Point2 &a = s1.a, &b = s1.b, &c = s2.a, &d = s2.b;
  int o1 = orient(a, b, c);
  int o2 = orient(a, b, d);
  int o3 = orient(c, d, a);
  int o4 = orient(c, d, b);

  SegmentIntersection out;
  if (o1 == 0 && o2 == 0) {
    // Collinear: project on the dominant axis.
    auto key = [&](const Point2& p) { return a.x != b.x ? p.x : p.y; };
    Rational lo1 = std::min(key(a), key(b)), hi1 = std::max(key(a), key(b));
    Rational lo2 = std::min(key(c), key(d)), hi2 = std::max(key(c), key(d));
    Rational lo = std::max(lo1, lo2), hi = std::min(hi1, hi2);
    if (lo > hi) return out;
    out.relation = SegmentRelation::Touch;
    out.overlap = lo < hi;
    return out;
  }
  if (o1 * o2 < 0 && o3 * o4 < 0) {
    out.relation = SegmentRelation::ProperCross;
    return out;
  }
  if ((o1 == 0 && on_segment(c, a, b)) || (o2 == 0 && on_segment(d, a, b)) ||
      (o3 == 0 && on_segment(a, c, d)) || (o4 == 0 && on_segment(b, c, d))) {
    out.relation = SegmentRelation::Touch;
  }
  return out;
}

std::optional<Point2> line_intersection(const Point2& a, const Point2& b, const Point2& c,
                                        const Point2& d) {
  Point2 r = sub(b, a);
  Point2 s = sub(d, c);
  Rational denom = cross_dir(r, s);
  if (denom == 0) return std::nullopt;
  Rational t = cross_dir(sub(c, a), s) / denom;
  return lerp(a, b, t);
}

std::vector<Point2> convex_hull(std::vector<Point2> points) {
  if (points.empty()) throw std::invalid_argument("convex_hull: empty input");
  std::sort(points.begin(), points.end(), lex_less);
  points.erase(std::unique(points.begin(), points.end()), points.end());
  if (points.size() < 3) return points;

  std::vector<Point2> hull(2 * points.size());
  std::size_t k = 0;
  for (const auto& p : points) {
    while (k >= 2 && orient(hull[k - 2], hull[k - 1], p) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = points.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(hull[k - 2], hull[k - 1], points[i]) <= 0) --k;
    hull[k++] = points[i];
  }
  hull.resize(k - 1);
  if (hull.size() == 2 && hull[0] == hull[1]) hull.resize(1);
  return hull;
}

Rational signed_area2(std::span<const Point2> ring) {
  Rational sum = 0;
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = ring[i];
    const Point2& q = ring[(i + 1) % n];
    sum += p.x * q.y - q.x * p.y;
  }
  return sum;
}

bool ring_is_simple(std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  if (n < 3) return false;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (ring[i] == ring[j]) return false;
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    Segment e1{ring[i], ring[(i + 1) % n]};
    for (std::size_t j = i + 1; j < n; ++j) {
      Segment e2{ring[j], ring[(j + 1) % n]};
      auto hit = segments_intersect(e1, e2);
      bool adjacent = (j == i + 1) || (i == 0 && j == n - 1);
      if (!adjacent) {
        if (hit.relation != SegmentRelation::Disjoint) return false;
      } else {
        // Adjacent edges must share only their common vertex.
        if (hit.overlap) return false;
        if (n == 3) continue;
      }
    }
  }
  return true;
}

bool is_convex(std::span<const Point2> ring) {
  if (ring.size() < 3 || !ring_is_simple(ring)) {
    throw std::invalid_argument("is_convex: ring is not a simple polygon");
  }
  if (signed_area2(ring) <= 0) throw std::invalid_argument("is_convex: ring is not CCW");
  const std::size_t n = ring.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(ring[(i + n - 1) % n], ring[i], ring[(i + 1) % n]) < 0) return false;
  }
  return true;
}

RingLocation locate_in_ring(const Point2& p, std::span<const Point2> ring) {
  const std::size_t n = ring.size();
  bool inside = false;
  for (std::size_t i = 0, j = n - 1; i < n; j = i++) {
    const Point2& a = ring[j];
    const Point2& b = ring[i];
    if (on_segment(p, a, b)) return RingLocation::OnBoundary;
    // Half-open crossing rule on the horizontal ray to +x.
    if ((a.y > p.y) != (b.y > p.y)) {
      int o = orient(a, b, p);
      if ((b.y > a.y && o > 0) || (b.y < a.y && o < 0)) inside = !inside;
    }
  }
  return inside ? RingLocation::Inside : RingLocation::Outside;
}

Triangle2 Triangle2::make(const Point2& a, const Point2& b, const Point2& c) {
  Triangle2 t;
  int o = orient(a, b, c);
  if (o > 0) {
    t.v0 = a, t.v1 = b, t.v2 = c;
    return t;
  }
  if (o < 0) {
    t.v0 = a, t.v1 = c, t.v2 = b;
    return t;
  }
  std::vector<Point2> pts{a, b, c};
  std::sort(pts.begin(), pts.end(), lex_less);
  if (pts.front() == pts.back()) {
    t.v0 = t.v1 = t.v2 = pts.front();
    t.degeneracy = Degeneracy::Point;
  } else {
    t.v0 = pts.front();
    t.v1 = t.v2 = pts.back();
    t.degeneracy = Degeneracy::Segment;
  }
  return t;
}

Triangle2 Triangle2::from_hull(std::span<const Point2> hull) {
  if (hull.empty() || hull.size() > 3) {
    throw std::invalid_argument("Triangle2::from_hull needs 1 to 3 points");
  }
  if (hull.size() == 1) return make(hull[0], hull[0], hull[0]);
  if (hull.size() == 2) return make(hull[0], hull[1], hull[1]);
  return make(hull[0], hull[1], hull[2]);
}

bool Triangle2::contains(const Point2& p) const {
  switch (degeneracy) {
    case Degeneracy::Point:
      return p == v0;
    case Degeneracy::Segment:
      return on_segment(p, v0, v1);
    case Degeneracy::Full:
      break;
  }
  return orient(v0, v1, p) >= 0 && orient(v1, v2, p) >= 0 && orient(v2, v0, p) >= 0;
}

bool Triangle2::contains_interior(const Point2& p) const {
  if (degeneracy != Degeneracy::Full) return false;
  return orient(v0, v1, p) > 0 && orient(v1, v2, p) > 0 && orient(v2, v0, p) > 0;
}

Rational Triangle2::area2() const {
  if (degeneracy != Degeneracy::Full) return 0;
  return cross(v0, v1, v2);
}

std::vector<Point2> Triangle2::vertices() const {
  switch (degeneracy) {
    case Degeneracy::Point:
      return {v0};
    case Degeneracy::Segment:
      return {v0, v1};
    case Degeneracy::Full:
      break;
  }
  return {v0, v1, v2};
}

bool operator==(const Triangle2& a, const Triangle2& b) {
  if (a.degeneracy != b.degeneracy) return false;
  if (a.degeneracy != Degeneracy::Full) return a.v0 == b.v0 && a.v1 == b.v1;
  // Same CCW cycle up to rotation.
  const Point2* av[3] = {&a.v0, &a.v1, &a.v2};
  for (int s = 0; s < 3; ++s) {
    if (*av[s] == b.v0 && *av[(s + 1) % 3] == b.v1 && *av[(s + 2) % 3] == b.v2) return true;
  }
  return false;
}

bool interiors_disjoint(const Triangle2& a, const Triangle2& b) {
  if (a.degeneracy != Degeneracy::Full || b.degeneracy != Degeneracy::Full) return true;
  // Separating axis: two convex polygons have disjoint interiors iff some edge
  // line of one has the other polygon in its closed outer half-plane.
  auto separated_by = [](const Triangle2& s, const Triangle2& t) {
    const Point2* sv[3] = {&s.v0, &s.v1, &s.v2};
    const Point2* tv[3] = {&t.v0, &t.v1, &t.v2};
    for (int i = 0; i < 3; ++i) {
      const Point2& p = *sv[i];
      const Point2& q = *sv[(i + 1) % 3];
      bool all_out = true;
      for (int j = 0; j < 3 && all_out; ++j) all_out = orient(p, q, *tv[j]) <= 0;
      if (all_out) return true;
    }
    return false;
  };
  return separated_by(a, b) || separated_by(b, a);
}

bool triangle_contains(const Triangle2& outer, const Triangle2& inner) {
  for (const auto& v : inner.vertices()) {
    if (!outer.contains(v)) return false;
  }
  return true;
}

bool segment_meets_open_triangle(const Point2& a, const Point2& b, const Triangle2& t) {
  if (t.degeneracy != Degeneracy::Full) return false;
  // Clip the parameter range [0, 1] by three open half-planes.
  Rational lo = 0, hi = 1;
  bool lo_open = false, hi_open = false;
  const Point2* tv[3] = {&t.v0, &t.v1, &t.v2};
  for (int i = 0; i < 3; ++i) {
    const Point2& p = *tv[i];
    const Point2& q = *tv[(i + 1) % 3];
    // f(s) = cross(p, q, a + s (b - a)) = fa + s (fb - fa); need f > 0.
    Rational fa = cross(p, q, a);
    Rational fb = cross(p, q, b);
    Rational slope = fb - fa;
    if (slope == 0) {
      if (fa <= 0) return false;
      continue;
    }
    Rational root = -fa / slope;
    if (slope > 0) {
      if (root > lo || (root == lo)) {
        lo = root;
        lo_open = true;
      }
    } else {
      if (root < hi || (root == hi)) {
        hi = root;
        hi_open = true;
      }
    }
  }
  if (lo < hi) return true;
  if (lo == hi) return !lo_open && !hi_open;
  return false;
}

std::string to_string(const Point2& p) {
  return "(" + format_rational(p.x) + ", " + format_rational(p.y) + ")";
}

}  // namespace geopart
