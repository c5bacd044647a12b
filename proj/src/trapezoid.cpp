#include "geopart/trapezoid.hpp"

#include <algorithm>
#include <stdexcept>

namespace geopart {

Box inflated_bounding_box(const std::vector<Point2>& pts, const Rational& margin) {
  if (pts.empty()) return Box{-margin, -margin, margin, margin};
  Box b{pts[0].x, pts[0].y, pts[0].x, pts[0].y};
  for (const auto& p : pts) {
    b.xmin = std::min(b.xmin, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.xmax = std::max(b.xmax, p.x);
    b.ymax = std::max(b.ymax, p.y);
  }
  b.xmin -= margin;
  b.ymin -= margin;
  b.xmax += margin;
  b.ymax += margin;
  return b;
}

namespace {

Rational y_at(const Segment& s, const Point2& p) {
  if (s.a.x == s.b.x) return p.y < s.a.y ? s.a.y : (p.y > s.b.y ? s.b.y : p.y);
  return s.a.y + (s.b.y - s.a.y) * (p.x - s.a.x) / (s.b.x - s.a.x);
}

}  // namespace

TrapezoidalDecomposition trapezoidal_decomposition(const std::vector<Segment>& segments,
                                                   const Box& box) {
  if (!(box.xmin < box.xmax && box.ymin < box.ymax)) throw std::invalid_argument("empty box");
  std::vector<Segment> carriers{
      Segment{Point2(box.xmin, box.ymin), Point2(box.xmax, box.ymin)},
      Segment{Point2(box.xmin, box.ymax), Point2(box.xmax, box.ymax)},
  };
  for (const auto& s : segments) {
    if (s.degenerate()) throw std::invalid_argument("degenerate segment");
    for (const Point2* p : {&s.a, &s.b}) {
      if (!(p->x > box.xmin && p->x < box.xmax && p->y > box.ymin && p->y < box.ymax)) {
        throw std::invalid_argument("segment outside box");
      }
    }
    carriers.push_back(lex_less(s.a, s.b) ? s : Segment{s.b, s.a});
  }
  const int nc = static_cast<int>(carriers.size());
  for (int i = 2; i < nc; ++i) {
    for (int j = i + 1; j < nc; ++j) {
      auto hit = segments_intersect(carriers[i], carriers[j]);
      if (hit.relation == SegmentRelation::Disjoint) continue;
      if (hit.relation == SegmentRelation::ProperCross || hit.overlap) {
        throw std::invalid_argument("crossing segments");
      }
      const auto& a = carriers[i];
      const auto& b = carriers[j];
      bool shared = a.a == b.a || a.a == b.b || a.b == b.a || a.b == b.b;
      if (!shared) throw std::invalid_argument("segment endpoint touches another segment");
    }
  }

  std::vector<Point2> events;
  for (int i = 2; i < nc; ++i) {
    events.push_back(carriers[i].a);
    events.push_back(carriers[i].b);
  }
  std::sort(events.begin(), events.end(), LexLess{});
  events.erase(std::unique(events.begin(), events.end()), events.end());

  TrapezoidalDecomposition out;
  const Point2 c00(box.xmin, box.ymin), c10(box.xmax, box.ymin);
  const Point2 c11(box.xmax, box.ymax), c01(box.xmin, box.ymax);
  out.vertices = {c00, c10, c11, c01};
  out.vertices.insert(out.vertices.end(), events.begin(), events.end());
  out.vertical_edges.push_back(Segment{c00, c01});
  out.vertical_edges.push_back(Segment{c10, c11});

  std::vector<std::vector<Point2>> on_carrier(nc);
  on_carrier[0] = {c00, c10};
  on_carrier[1] = {c01, c11};
  for (int i = 2; i < nc; ++i) on_carrier[i] = {carriers[i].a, carriers[i].b};

  std::vector<int> active{0, 1};
  std::vector<Point2> gap_left{c00};

  for (const auto& p : events) {
    int lo = -1, hi = -1;
    for (int k = 0; k < static_cast<int>(active.size()); ++k) {
      const auto& s = carriers[active[k]];
      if (s.a == p || s.b == p) continue;
      if (orient(s.a, s.b, p) > 0) lo = k;
      else if (hi < 0) hi = k;
    }
    if (lo < 0 || hi < 0) throw std::logic_error("trapezoid sweep lost its bounding carriers");
    for (int k = lo; k < hi; ++k) {
      out.faces.push_back(Trapezoid{gap_left[k], p, active[k], active[k + 1]});
    }
    std::vector<int> starting;
    for (int i = 2; i < nc; ++i) {
      if (carriers[i].a == p) starting.push_back(i);
    }
    std::sort(starting.begin(), starting.end(), [&](int s, int t) {
      return orient(p, carriers[s].b, carriers[t].b) > 0;
    });
    std::vector<int> next_active(active.begin(), active.begin() + lo + 1);
    next_active.insert(next_active.end(), starting.begin(), starting.end());
    next_active.insert(next_active.end(), active.begin() + hi, active.end());
    std::vector<Point2> next_gaps(gap_left.begin(), gap_left.begin() + lo);
    for (std::size_t k = 0; k <= starting.size(); ++k) next_gaps.push_back(p);
    next_gaps.insert(next_gaps.end(), gap_left.begin() + hi, gap_left.end());

    const Point2 down(p.x, y_at(carriers[active[lo]], p));
    const Point2 up(p.x, y_at(carriers[active[hi]], p));
    out.vertices.push_back(down);
    out.vertices.push_back(up);
    out.vertical_edges.push_back(Segment{down, p});
    out.vertical_edges.push_back(Segment{p, up});
    on_carrier[active[lo]].push_back(down);
    on_carrier[active[hi]].push_back(up);

    active = std::move(next_active);
    gap_left = std::move(next_gaps);
  }
  for (std::size_t k = 0; k + 1 < active.size(); ++k) {
    out.faces.push_back(Trapezoid{gap_left[k], c10, active[k], active[k + 1]});
  }
  for (auto& pts : on_carrier) {
    std::sort(pts.begin(), pts.end(), LexLess{});
    for (std::size_t k = 1; k < pts.size(); ++k) out.carrier_edges.push_back(Segment{pts[k - 1], pts[k]});
  }
  return out;
}

}  // namespace geopart
