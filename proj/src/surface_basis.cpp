#include "geopart/surface_basis.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <set>
#include <stdexcept>
#include <unordered_map>
#include <unordered_set>

namespace geopart {

int mask_size(PointMask m) { return std::popcount(m); }

PointMask full_mask(int n) { return n >= 64 ? ~PointMask{0} : (PointMask{1} << n) - 1; }

SampleSet::SampleSet(std::vector<Point3> points, Rational mu) : points3_(std::move(points)), mu_(std::move(mu)) {
  if (points3_.empty()) throw std::invalid_argument("sample set is empty");
  if (points3_.size() > static_cast<std::size_t>(kMaxSamples)) {
    throw std::invalid_argument("too many samples (limit " + std::to_string(kMaxSamples) + ")");
  }
  if (mu_ < 0) throw std::invalid_argument("mu must be non-negative");
  for (const auto& p : points3_) points2_.push_back(p.projection());
  std::vector<std::size_t> order(points2_.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return lex_less(points2_[a], points2_[b]); });
  for (std::size_t k = 1; k < order.size(); ++k) {
    if (points2_[order[k]] == points2_[order[k - 1]]) {
      throw std::invalid_argument("samples " + std::to_string(order[k - 1]) + " and " +
                                  std::to_string(order[k]) + " share the projection " +
                                  to_string(points2_[order[k]]));
    }
  }
}

std::vector<Point2> SampleSet::projections(PointMask m) const {
  std::vector<Point2> out;
  for (int i = 0; i < size(); ++i) {
    if (mask_has(m, i)) out.push_back(points2_[i]);
  }
  return out;
}

std::vector<Point3> SampleSet::lifted(PointMask m) const {
  std::vector<Point3> out;
  for (int i = 0; i < size(); ++i) {
    if (mask_has(m, i)) out.push_back(points3_[i]);
  }
  return out;
}

PointMask covered_mask(const Triangle2& tri, const SampleSet& samples) {
  PointMask m = 0;
  const auto& pts = samples.points2();
  for (int i = 0; i < samples.size(); ++i) {
    if (tri.contains(pts[i])) m |= PointMask{1} << i;
  }
  return m;
}

const PlaneFit& PlaneCache::fit(PointMask m) {
  auto it = fits_.find(m);
  if (it == fits_.end()) {
    const auto pts = samples_.lifted(m);
    it = fits_.emplace(m, chebyshev_plane_fit(pts)).first;
  }
  return it->second;
}

bool is_valid_triangle(const Triangle2& tri, const SampleSet& samples) {
  const PointMask m = covered_mask(tri, samples);
  if (m == 0) return true;
  const auto pts = samples.lifted(m);
  return chebyshev_plane_fit(pts).t <= samples.mu();
}

namespace {

// Closed half-plane n.x >= c placed so that no sample lies on its boundary.
struct HalfPlane {
  Point2 n;
  Rational c;
  double dx = 0;
  double dy = 0;
};

int cross_sign(const HalfPlane& a, const HalfPlane& b) {
  const double v = a.dx * b.dy - a.dy * b.dx;
  const double scale = std::hypot(a.dx, a.dy) * std::hypot(b.dx, b.dy);
  if (v > 1e-9 * scale) return 1;
  if (v < -1e-9 * scale) return -1;
  return sgn(cross_dir(a.n, b.n));
}

// The three normals positively span the plane, so the intersection of the
// half-planes is bounded.
bool positively_spanning(const HalfPlane& a, const HalfPlane& b, const HalfPlane& c) {
  const int s1 = cross_sign(a, b);
  if (s1 == 0) return false;
  return cross_sign(b, c) == s1 && cross_sign(c, a) == s1;
}

Rational min_nonzero_abs(const std::vector<Rational>& values, const Rational& fallback) {
  std::optional<Rational> best;
  for (const auto& v : values) {
    if (sgn(v) == 0) continue;
    Rational a = abs_value(v);
    if (!best || a < *best) best = a;
  }
  return best ? *best : fallback;
}

class HalfPlaneFamily {
 public:
  explicit HalfPlaneFamily(const SampleSet& samples) : pts_(samples.points2()) {
    const int n = static_cast<int>(pts_.size());
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) {
        const Point2 d = sub(pts_[j], pts_[i]);
        for (int side : {1, -1}) {
          const Point2 normal(side * -d.y, side * d.x);
          add_line_variants(normal, d, pts_[i]);
        }
      }
    }
  }

  const std::vector<PointMask>& masks() const { return masks_; }
  const std::vector<HalfPlane>& planes(std::size_t k) const { return by_mask_[k]; }

 private:
  void insert(const Point2& n, const Rational& c) {
    PointMask m = 0;
    for (std::size_t s = 0; s < pts_.size(); ++s) {
      if (dot(n, pts_[s]) >= c) m |= PointMask{1} << s;
    }
    if (m == 0) return;
    auto [it, fresh] = slot_.try_emplace(m, masks_.size());
    if (fresh) {
      masks_.push_back(m);
      by_mask_.emplace_back();
    }
    auto& list = by_mask_[it->second];
    for (const auto& h : list) {
      if (sgn(cross_dir(h.n, n)) == 0 && sgn(dot(h.n, n)) > 0) return;
    }
    list.push_back(HalfPlane{n, c, to_double(n.x), to_double(n.y)});
  }

  void add_line_variants(const Point2& n, const Point2& d, const Point2& on) {
    const Rational c0 = dot(n, on);
    std::vector<Rational> off;
    Rational lowest = dot(n, pts_[0]);
    std::vector<Point2> online;
    for (const auto& s : pts_) {
      Rational v = dot(n, s) - c0;
      lowest = std::min(lowest, dot(n, s));
      if (sgn(v) == 0) online.push_back(s);
      off.push_back(std::move(v));
    }
    const Rational eta = min_nonzero_abs(off, 2) / 2;
    insert(n, c0 - eta);
    insert(n, c0 + eta);
    insert(n, lowest - 1);

    // Rotating slightly about an on-line point splits the on-line points by
    // their position along the line.
    Rational spread = 0;
    for (const auto& p : online) {
      for (const auto& s : pts_) spread = std::max(spread, abs_value(dot(d, sub(s, p))));
    }
    const Rational theta = min_nonzero_abs(off, 2) / (2 * spread + 1);
    for (const auto& p : online) {
      for (int rot : {1, -1}) {
        const Point2 n2 = geopart::add(n, scale(d, rot * theta));
        std::vector<Rational> w;
        for (const auto& s : pts_) w.push_back(dot(n2, sub(s, p)));
        const Rational eta2 = min_nonzero_abs(w, 2) / 2;
        const Rational c2 = dot(n2, p);
        insert(n2, c2 - eta2);
        insert(n2, c2 + eta2);
      }
    }
  }

  std::vector<Point2> pts_;
  std::vector<PointMask> masks_;
  std::vector<std::vector<HalfPlane>> by_mask_;
  std::unordered_map<PointMask, std::size_t> slot_;
};

Point2 boundary_meet(const HalfPlane& a, const HalfPlane& b) {
  // n_a.x = c_a, n_b.x = c_b
  const Rational det = a.n.x * b.n.y - a.n.y * b.n.x;
  return Point2((a.c * b.n.y - a.n.y * b.c) / det, (a.n.x * b.c - a.c * b.n.x) / det);
}

}  // namespace

std::vector<SubsetRecord> enumerate_F(const SampleSet& samples) {
  const int n = samples.size();
  const auto& pts = samples.points2();
  std::unordered_map<PointMask, Triangle2> found;

  for (int i = 0; i < n; ++i) {
    found.try_emplace(PointMask{1} << i, Triangle2::make(pts[i], pts[i], pts[i]));
    for (int j = i + 1; j < n; ++j) {
      const Triangle2 seg = Triangle2::make(pts[i], pts[j], pts[j]);
      found.try_emplace(covered_mask(seg, samples), seg);
    }
  }

  HalfPlaneFamily family(samples);
  const auto& masks = family.masks();
  const std::size_t m = masks.size();
  for (std::size_t a = 0; a < m; ++a) {
    for (std::size_t b = a; b < m; ++b) {
      const PointMask ab = masks[a] & masks[b];
      if (ab == 0) continue;
      for (std::size_t c = b; c < m; ++c) {
        const PointMask abc = ab & masks[c];
        if (abc == 0 || found.count(abc)) continue;
        bool done = false;
        for (const auto& ha : family.planes(a)) {
          for (const auto& hb : family.planes(b)) {
            for (const auto& hc : family.planes(c)) {
              if (!positively_spanning(ha, hb, hc)) continue;
              const Triangle2 t =
                  Triangle2::make(boundary_meet(ha, hb), boundary_meet(hb, hc), boundary_meet(hc, ha));
              if (covered_mask(t, samples) != abc) throw std::logic_error("half-plane triangle mask mismatch");
              found.emplace(abc, t);
              done = true;
              break;
            }
            if (done) break;
          }
          if (done) break;
        }
      }
    }
  }

  std::vector<SubsetRecord> out;
  out.reserve(found.size());
  for (auto& [mask, tri] : found) out.push_back(SubsetRecord{mask, tri});
  std::sort(out.begin(), out.end(), [](const SubsetRecord& x, const SubsetRecord& y) { return x.mask < y.mask; });
  return out;
}

std::vector<Triangle2> Hexagon::triangulate() const {
  std::vector<Triangle2> out;
  if (kind != Kind::Bounded || vertices.size() < 3) return out;
  std::size_t bottom = 0;
  for (std::size_t k = 1; k < vertices.size(); ++k) {
    const auto& p = vertices[k];
    const auto& q = vertices[bottom];
    if (p.y < q.y || (p.y == q.y && p.x < q.x)) bottom = k;
  }
  const std::size_t s = vertices.size();
  for (std::size_t k = 1; k + 1 < s; ++k) {
    out.push_back(Triangle2::make(vertices[bottom], vertices[(bottom + k) % s], vertices[(bottom + k + 1) % s]));
  }
  return out;
}

Hexagon hexagon_for_vertices(const std::vector<Point2>& hull, const std::vector<int>& chosen) {
  const int h = static_cast<int>(hull.size());
  if (h < 3) throw std::invalid_argument("hexagon needs a two-dimensional hull");
  std::set<int> edges;  // edge k joins hull[k], hull[k+1]
  for (int v : chosen) {
    if (v < 0 || v >= h) throw std::invalid_argument("hexagon vertex is not a hull vertex");
    edges.insert(v);
    edges.insert((v + h - 1) % h);
  }
  struct Edge {
    Point2 a;
    Point2 d;
  };
  std::vector<Edge> lines;
  for (int k : edges) lines.push_back({hull[k], sub(hull[(k + 1) % h], hull[k])});
  auto inside = [&](const Point2& p) {
    for (const auto& e : lines) {
      if (sgn(cross_dir(e.d, sub(p, e.a))) < 0) return false;
    }
    return true;
  };

  Hexagon out;
  for (const auto& e : lines) {
    for (int s : {1, -1}) {
      const Point2 dir = scale(e.d, s);
      bool recedes = true;
      for (const auto& f : lines) {
        if (sgn(cross_dir(f.d, dir)) < 0) {
          recedes = false;
          break;
        }
      }
      if (recedes) return out;
    }
  }
  std::vector<Point2> corners;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      auto p = line_intersection(lines[i].a, add(lines[i].a, lines[i].d), lines[j].a, add(lines[j].a, lines[j].d));
      if (p && inside(*p)) corners.push_back(*p);
    }
  }
  if (corners.empty()) {
    out.kind = Hexagon::Kind::Degenerate;
    return out;
  }
  out.vertices = convex_hull(corners);
  out.kind = out.vertices.size() >= 3 ? Hexagon::Kind::Bounded : Hexagon::Kind::Degenerate;
  return out;
}

Hexagon hexagon_for_triple(const SampleSet& samples, PointMask r, const Point2& p, const Point2& q,
                           const Point2& s) {
  const auto hull = convex_hull(samples.projections(r));
  std::vector<int> chosen;
  for (const Point2* v : {&p, &q, &s}) {
    auto it = std::find(hull.begin(), hull.end(), *v);
    if (it == hull.end()) throw std::invalid_argument("hexagon vertex is not a hull vertex");
    chosen.push_back(static_cast<int>(it - hull.begin()));
  }
  if (chosen[0] == chosen[1] || chosen[1] == chosen[2] || chosen[0] == chosen[2]) {
    throw std::invalid_argument("hexagon vertices must be distinct");
  }
  return hexagon_for_vertices(hull, chosen);
}

Triangle2 canonical_triangle(const Triangle2& t) {
  if (t.degeneracy != Degeneracy::Full) return t;
  Triangle2 out = t;
  if (lex_less(t.v1, t.v0) && lex_less(t.v1, t.v2)) {
    out.v0 = t.v1, out.v1 = t.v2, out.v2 = t.v0;
  } else if (lex_less(t.v2, t.v0) && lex_less(t.v2, t.v1)) {
    out.v0 = t.v2, out.v1 = t.v0, out.v2 = t.v1;
  }
  return out;
}

bool TriangleLess::operator()(const Triangle2& a, const Triangle2& b) const {
  if (a.degeneracy != b.degeneracy) return a.degeneracy < b.degeneracy;
  const Triangle2 x = canonical_triangle(a), y = canonical_triangle(b);
  const Point2* xs[3] = {&x.v0, &x.v1, &x.v2};
  const Point2* ys[3] = {&y.v0, &y.v1, &y.v2};
  for (int k = 0; k < 3; ++k) {
    if (lex_less(*xs[k], *ys[k])) return true;
    if (lex_less(*ys[k], *xs[k])) return false;
  }
  return false;
}

Basis::Basis(std::vector<BasisTriangle> triangles) : triangles_(std::move(triangles)) {
  const int n = size();
  inside_.assign(n, {});
  for (int i = 0; i < n; ++i) {
    triangles_[i].tri = canonical_triangle(triangles_[i].tri);
    if (!index_.emplace(triangles_[i].tri, i).second) throw std::invalid_argument("duplicate basis triangle");
  }
  for (int outer = 0; outer < n; ++outer) {
    const PointMask om = triangles_[outer].covered;
    for (int inner = 0; inner < n; ++inner) {
      if ((triangles_[inner].covered & ~om) != 0) continue;
      if (triangle_contains(triangles_[outer].tri, triangles_[inner].tri)) inside_[outer].push_back(inner);
    }
  }
}

bool Basis::contained_in(int inner, int outer) const {
  const auto& v = inside_[outer];
  return std::binary_search(v.begin(), v.end(), inner);
}

std::optional<int> Basis::find(const Triangle2& t) const {
  auto it = index_.find(t);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Basis build_basis(const SampleSet& samples, BasisStats* stats) {
  return build_basis(samples, enumerate_F(samples), stats);
}

Basis build_basis(const SampleSet& samples, const std::vector<SubsetRecord>& family, BasisStats* stats) {
  BasisStats local;
  std::set<Triangle2, TriangleLess> candidates;
  for (const auto& rec : family) {
    ++local.subsets;
    const auto hull = convex_hull(samples.projections(rec.mask));
    if (hull.size() < 3) {
      ++local.low_dimensional;
      candidates.insert(Triangle2::from_hull(hull));
      continue;
    }
    const int h = static_cast<int>(hull.size());
    auto consider = [&](const std::vector<int>& chosen) {
      const Hexagon hex = hexagon_for_vertices(hull, chosen);
      if (hex.kind != Hexagon::Kind::Bounded) {
        ++local.hexagons_unbounded;
        return;
      }
      ++local.hexagons_bounded;
      for (const auto& t : hex.triangulate()) candidates.insert(canonical_triangle(t));
    };
    for (int i = 0; i < h; ++i) {
      for (int j = i + 1; j < h; ++j) {
        consider({i, j});
        for (int k = j + 1; k < h; ++k) consider({i, j, k});
      }
    }
  }

  PlaneCache cache(samples);
  std::vector<BasisTriangle> out;
  for (const auto& t : candidates) {
    ++local.candidates;
    const PointMask m = covered_mask(t, samples);
    if (m == 0) continue;
    if (!cache.valid(m)) {
      ++local.invalid;
      continue;
    }
    out.push_back(BasisTriangle{t, m, cache.fit(m)});
  }
  if (stats) *stats = local;
  return Basis(std::move(out));
}

BasisSelection select_basis_cover(const Triangle2& tri, const SampleSet& samples, const Basis& basis) {
  const PointMask r = covered_mask(tri, samples);
  BasisSelection out;
  if (r == 0) return out;
  if (!is_valid_triangle(tri, samples)) throw std::invalid_argument("query triangle is not valid");
  const auto pts = samples.projections(r);
  const auto hull = convex_hull(pts);
  if (hull.size() < 3) {
    out.triangles.push_back(Triangle2::from_hull(hull));
  } else {
    if (tri.degeneracy != Degeneracy::Full) throw std::logic_error("degenerate triangle with a 2D hull");
    const Point2* corners[3] = {&tri.v0, &tri.v1, &tri.v2};
    std::vector<int> chosen;
    for (int side = 0; side < 3; ++side) {
      const Point2& a = *corners[side];
      const Point2& b = *corners[(side + 1) % 3];
      const Point2* best = nullptr;
      Rational best_d;
      for (const auto& p : pts) {
        Rational d = abs_value(cross(a, b, p));
        if (!best || d < best_d || (d == best_d && lex_less(p, *best))) {
          best = &p;
          best_d = d;
        }
      }
      auto it = std::find(hull.begin(), hull.end(), *best);
      if (it == hull.end()) throw std::logic_error("closest sample is not a hull vertex");
      const int idx = static_cast<int>(it - hull.begin());
      if (std::find(chosen.begin(), chosen.end(), idx) == chosen.end()) chosen.push_back(idx);
    }
    std::sort(chosen.begin(), chosen.end());
    const Hexagon hex = hexagon_for_vertices(hull, chosen);
    if (hex.kind != Hexagon::Kind::Bounded) throw std::logic_error("selection hexagon is not bounded");
    for (const auto& t : hex.triangulate()) {
      if (covered_mask(t, samples) != 0) out.triangles.push_back(canonical_triangle(t));
    }
  }
  for (const auto& t : out.triangles) out.ids.push_back(basis.find(t));
  return out;
}

}  // namespace geopart
