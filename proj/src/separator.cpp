#include "geopart/separator.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace geopart {

void SeparatorBudget::validate(bool small_delta) const {
  if (!(delta > 0)) throw std::invalid_argument("delta must be positive, got " + format_rational(delta));
  if (small_delta && !(delta < Rational(1, 12))) {
    throw std::invalid_argument("delta must lie in (0, 1/12), got " + format_rational(delta));
  }
  if (lambda < 1) throw std::invalid_argument("lambda must be at least 1");
  if (ell_max < 4 || ell_max % 2 != 0) throw std::invalid_argument("ell_max must be even and >= 4");
  if (max_candidates < 0) throw std::invalid_argument("max_candidates must be non-negative");
}

CandidateStats& CandidateStats::operator+=(const CandidateStats& o) {
  emitted += o.emitted;
  accepted += o.accepted;
  rejected += o.rejected;
  empty += o.empty;
  duplicate += o.duplicate;
  pruned += o.pruned;
  return *this;
}

std::vector<Point2> SeparatorCycle::ring() const {
  std::vector<Point2> out;
  out.reserve(vertices.size());
  for (const auto& v : vertices) out.push_back(v.p);
  return out;
}

RingLocation locate_in_cycle(const Point2& p, const std::vector<Point2>& ring) {
  return locate_in_ring(p, ring);
}

namespace {

std::vector<Carrier> box_carriers(const Box& box) {
  Carrier bottom;
  bottom.kind = Carrier::Kind::BoxBottom;
  bottom.seg = Segment{Point2(box.xmin, box.ymin), Point2(box.xmax, box.ymin)};
  Carrier top;
  top.kind = Carrier::Kind::BoxTop;
  top.seg = Segment{Point2(box.xmin, box.ymax), Point2(box.xmax, box.ymax)};
  return {bottom, top};
}

Carrier make_carrier(Carrier::Kind kind, const Point2& a, int ia, const Point2& b, int ib) {
  Carrier c;
  c.kind = kind;
  if (lex_less(a, b)) {
    c.seg = Segment{a, b};
    c.u = ia;
    c.v = ib;
  } else {
    c.seg = Segment{b, a};
    c.u = ib;
    c.v = ia;
  }
  return c;
}

bool is_box(const Carrier& c) {
  return c.kind == Carrier::Kind::BoxBottom || c.kind == Carrier::Kind::BoxTop;
}

Rational carrier_y(const Carrier& c, const Rational& x) {
  const auto& s = c.seg;
  return s.a.y + (s.b.y - s.a.y) * (x - s.a.x) / (s.b.x - s.a.x);
}

class CycleEnumerator {
 public:
  CycleEnumerator(const CycleSpace& space, long cap,
                  const std::function<bool(const SeparatorCycle&)>& visit)
      : space_(space), cap_(cap), visit_(visit) {
    const int ns = static_cast<int>(space_.stations.size());
    for (const auto& c : space_.carriers) {
      int lo = ns, hi = -1;
      for (int s = 0; s < ns; ++s) {
        const Rational& x = space_.stations[s].source.x;
        if (x >= c.seg.a.x && x <= c.seg.b.x) {
          lo = std::min(lo, s);
          hi = std::max(hi, s);
        }
      }
      span_.emplace_back(lo, hi);
    }
  }

  // Returns false once the stream is exhausted by the cap or the visitor.
  bool run(int ell_max) {
    if (cap_ <= 0) return false;
    for (int len = 4; len <= ell_max; len += 2) {
      const int breaks = (len - 4) / 2;
      for (int m = 0; m <= breaks + 2; ++m) {
        for (int bu = 0; bu <= breaks; ++bu) {
          len_ = len;
          m_ = m;
          bu_ = bu;
          bl_ = breaks - bu;
          upper_.clear();
          lower_.clear();
          if (!choose_upper()) return false;
        }
      }
    }
    return true;
  }

 private:
  int non_box(const std::vector<int>& seq) const {
    int k = 0;
    for (int c : seq) k += is_box(space_.carriers[c]) ? 0 : 1;
    return k;
  }

  bool choose_upper() {
    if (static_cast<int>(upper_.size()) == bu_ + 1) return choose_lower();
    for (int c = 0; c < static_cast<int>(space_.carriers.size()); ++c) {
      if (space_.carriers[c].kind == Carrier::Kind::BoxBottom) continue;
      if (!upper_.empty() && upper_.back() == c) continue;
      if (span_[c].second < 0) continue;
      upper_.push_back(c);
      bool go = non_box(upper_) <= m_ ? choose_upper() : true;
      upper_.pop_back();
      if (!go) return false;
    }
    return true;
  }

  bool choose_lower() {
    if (static_cast<int>(lower_.size()) == bl_ + 1) {
      if (non_box(upper_) + non_box(lower_) != m_) return true;
      return choose_stations();
    }
    for (int c = 0; c < static_cast<int>(space_.carriers.size()); ++c) {
      if (space_.carriers[c].kind == Carrier::Kind::BoxTop) continue;
      if (!lower_.empty() && lower_.back() == c) continue;
      if (span_[c].second < 0) continue;
      lower_.push_back(c);
      bool go = non_box(upper_) + non_box(lower_) <= m_ ? choose_lower() : true;
      lower_.pop_back();
      if (!go) return false;
    }
    return true;
  }

  // Stations: xL, upper breaks, lower breaks, xR, all strictly increasing
  // within each chain and inside the spans of the carriers they join.
  bool choose_stations() {
    const int lo = std::max(span_[upper_.front()].first, span_[lower_.front()].first);
    const int hi = std::min(span_[upper_.front()].second, span_[lower_.front()].second);
    for (int xl = lo; xl <= hi; ++xl) {
      xl_ = xl;
      ubreak_.clear();
      if (!choose_breaks(true)) return false;
    }
    return true;
  }

  bool choose_breaks(bool upper) {
    auto& seq = upper ? upper_ : lower_;
    auto& br = upper ? ubreak_ : lbreak_;
    const int want = upper ? bu_ : bl_;
    if (static_cast<int>(br.size()) == want) {
      if (upper) {
        lbreak_.clear();
        return choose_breaks(false);
      }
      return choose_right();
    }
    const int k = static_cast<int>(br.size());
    const int prev = br.empty() ? xl_ : br.back();
    const int hi = std::min(span_[seq[k]].second, span_[seq[k + 1]].second);
    for (int s = std::max(prev + 1, span_[seq[k + 1]].first); s <= hi; ++s) {
      if (s < span_[seq[k]].first) continue;
      br.push_back(s);
      bool go = choose_breaks(upper);
      br.pop_back();
      if (!go) return false;
    }
    return true;
  }

  bool choose_right() {
    int lo = xl_ + 1;
    if (!ubreak_.empty()) lo = std::max(lo, ubreak_.back() + 1);
    if (!lbreak_.empty()) lo = std::max(lo, lbreak_.back() + 1);
    const int hi = std::min(span_[upper_.back()].second, span_[lower_.back()].second);
    for (int xr = lo; xr <= hi; ++xr) {
      if (!emit(xr)) return false;
    }
    return true;
  }

  FeaturePoint feature(int station, int carrier) const {
    const Station& st = space_.stations[station];
    const Carrier& c = space_.carriers[carrier];
    FeaturePoint f;
    f.p = Point2(st.source.x, carrier_y(c, st.source.x));
    if (st.source_id < 0) {
      f.kind = FeaturePoint::Kind::BoxCorner;
      const bool right = st.source_id == -2;
      const bool top = c.kind == Carrier::Kind::BoxTop;
      f.corner = top ? (right ? 2 : 3) : (right ? 1 : 0);
    } else if (f.p == st.source) {
      f.kind = FeaturePoint::Kind::Vertex;
      f.vertex_id = st.source_id;
    } else {
      f.kind = FeaturePoint::Kind::Projection;
      f.vertex_id = st.source_id;
      f.carrier = carrier;
      f.up = f.p.y > st.source.y;
    }
    return f;
  }

  bool emit(int xr) {
    SeparatorCycle cyc;
    auto push = [&](FeaturePoint f, int carrier_after) {
      cyc.vertices.push_back(std::move(f));
      cyc.edge_carrier.push_back(carrier_after);
    };
    // Lower chain left to right.
    push(feature(xl_, lower_[0]), lower_[0]);
    for (std::size_t k = 0; k < lbreak_.size(); ++k) {
      push(feature(lbreak_[k], lower_[k]), -1);
      push(feature(lbreak_[k], lower_[k + 1]), lower_[k + 1]);
    }
    push(feature(xr, lower_.back()), -1);
    // Upper chain right to left.
    push(feature(xr, upper_.back()), upper_.back());
    for (std::size_t k = ubreak_.size(); k-- > 0;) {
      push(feature(ubreak_[k], upper_[k + 1]), -1);
      push(feature(ubreak_[k], upper_[k]), upper_[k]);
    }
    push(feature(xl_, upper_[0]), -1);

    const auto ring = cyc.ring();
    if (!(ring.back().y > ring.front().y)) return true;
    const std::size_t right_top = 2 + 2 * lbreak_.size();
    if (!(ring[right_top].y > ring[right_top - 1].y)) return true;
    if (!ring_is_simple(ring) || signed_area2(ring) <= 0) return true;

    cyc.key = {len_, m_};
    cyc.key.insert(cyc.key.end(), upper_.begin(), upper_.end());
    cyc.key.push_back(-1);
    cyc.key.insert(cyc.key.end(), lower_.begin(), lower_.end());
    cyc.key.push_back(-1);
    cyc.key.push_back(xl_);
    cyc.key.insert(cyc.key.end(), ubreak_.begin(), ubreak_.end());
    cyc.key.insert(cyc.key.end(), lbreak_.begin(), lbreak_.end());
    cyc.key.push_back(xr);

    ++emitted_;
    if (!visit_(cyc)) return false;
    return emitted_ < cap_;
  }

  const CycleSpace& space_;
  long cap_;
  const std::function<bool(const SeparatorCycle&)>& visit_;
  std::vector<std::pair<int, int>> span_;
  long emitted_ = 0;
  int len_ = 4, m_ = 0, bu_ = 0, bl_ = 0;
  std::vector<int> upper_, lower_, ubreak_, lbreak_;
  int xl_ = 0;
};

}  // namespace

CycleSpace polygon_cycle_space(const PolygonWithHoles& poly) {
  PolygonView view(poly);
  std::vector<Point2> pts;
  for (int i = 0; i < view.size(); ++i) pts.push_back(view.point(i));
  CycleSpace space;
  space.box = inflated_bounding_box(pts, Rational(1));
  space.carriers = box_carriers(space.box);

  std::vector<Carrier> edges;
  for (const auto& e : view.edges()) {
    if (view.point(e[0]).x == view.point(e[1]).x) {
      throw std::invalid_argument("polygon has vertices with equal x; shear it first");
    }
    edges.push_back(make_carrier(Carrier::Kind::Edge, view.point(e[0]), view.id(e[0]),
                                 view.point(e[1]), view.id(e[1])));
  }
  std::sort(edges.begin(), edges.end(), [](const Carrier& a, const Carrier& b) {
    return std::minmax(a.u, a.v) < std::minmax(b.u, b.v);
  });
  space.carriers.insert(space.carriers.end(), edges.begin(), edges.end());
  for (const auto& d : enumerate_diagonals(poly)) {
    space.carriers.push_back(
        make_carrier(Carrier::Kind::Diagonal, d.geometry.a, d.u, d.geometry.b, d.v));
  }

  std::vector<int> order(view.size());
  for (int i = 0; i < view.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(),
            [&](int a, int b) { return lex_less(view.point(a), view.point(b)); });
  space.stations.push_back(Station{Point2(space.box.xmin, space.box.ymin), -1});
  for (int i : order) {
    if (space.stations.back().source.x == view.point(i).x) {
      throw std::invalid_argument("polygon has vertices with equal x; shear it first");
    }
    space.stations.push_back(Station{view.point(i), view.id(i)});
  }
  space.stations.push_back(Station{Point2(space.box.xmax, space.box.ymin), -2});
  return space;
}

CycleSpace triangle_cycle_space(const std::vector<Triangle2>& triangles) {
  std::vector<Point2> pts;
  for (const auto& t : triangles) {
    for (const auto& v : t.vertices()) pts.push_back(v);
  }
  std::sort(pts.begin(), pts.end(), LexLess{});
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  auto id_of = [&](const Point2& p) {
    return static_cast<int>(std::lower_bound(pts.begin(), pts.end(), p, LexLess{}) - pts.begin());
  };

  CycleSpace space;
  space.box = inflated_bounding_box(pts, Rational(1));
  space.carriers = box_carriers(space.box);
  std::vector<Carrier> reps;
  for (const auto& t : triangles) {
    auto vs = t.vertices();
    const Point2 lo = *std::min_element(vs.begin(), vs.end(), LexLess{});
    const Point2 hi = *std::max_element(vs.begin(), vs.end(), LexLess{});
    if (lo.x == hi.x) continue;
    reps.push_back(make_carrier(Carrier::Kind::Representative, lo, id_of(lo), hi, id_of(hi)));
  }
  std::sort(reps.begin(), reps.end(),
            [](const Carrier& a, const Carrier& b) { return std::pair(a.u, a.v) < std::pair(b.u, b.v); });
  reps.erase(std::unique(reps.begin(), reps.end(),
                         [](const Carrier& a, const Carrier& b) { return a.u == b.u && a.v == b.v; }),
             reps.end());
  space.carriers.insert(space.carriers.end(), reps.begin(), reps.end());

  space.stations.push_back(Station{Point2(space.box.xmin, space.box.ymin), -1});
  for (std::size_t i = 0; i < pts.size(); ++i) {
    if (space.stations.back().source.x == pts[i].x) continue;
    space.stations.push_back(Station{pts[i], static_cast<int>(i)});
  }
  space.stations.push_back(Station{Point2(space.box.xmax, space.box.ymin), -2});
  return space;
}

void for_each_cycle(const CycleSpace& space, int ell_max, long max_candidates,
                    const std::function<bool(const SeparatorCycle&)>& visit) {
  CycleEnumerator(space, max_candidates, visit).run(ell_max);
}

std::vector<SeparatorCycle> enumerate_polygon_cycles(const PolygonWithHoles& poly,
                                                     const SeparatorBudget& budget) {
  std::vector<SeparatorCycle> out;
  for_each_cycle(polygon_cycle_space(poly), budget.ell_max, budget.max_candidates,
                 [&](const SeparatorCycle& c) {
                   out.push_back(c);
                   return true;
                 });
  return out;
}

std::vector<SeparatorCycle> enumerate_curves(const std::vector<Triangle2>& basis,
                                             const SeparatorBudget& budget) {
  std::vector<SeparatorCycle> out;
  for_each_cycle(triangle_cycle_space(basis), budget.ell_max, budget.max_candidates,
                 [&](const SeparatorCycle& c) {
                   out.push_back(c);
                   return true;
                 });
  return out;
}

namespace {

CycleConversion reject(std::string why) {
  CycleConversion out;
  out.reason = std::move(why);
  return out;
}

struct Piece {
  Point2 a;
  Point2 b;
  bool inside = false;
};

}  // namespace

CycleConversion cycle_to_diagonals(const TriangleMesh& mesh, const SeparatorCycle& cycle) {
  const PolygonView& view = mesh.view();
  const auto ring = cycle.ring();
  if (ring.size() < 3 || !ring_is_simple(ring)) return reject("cycle is not simple");

  const auto edges = view.edges();
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < ring.size(); ++i) {
    const Point2& a = ring[i];
    const Point2& b = ring[(i + 1) % ring.size()];
    const Point2 d = sub(b, a);
    const Rational len2 = dot(d, d);
    std::vector<Rational> ts{Rational(0), Rational(1)};
    auto add = [&](const Point2& x) { ts.push_back(dot(sub(x, a), d) / len2); };
    const Rational& lo_x = a.x < b.x ? a.x : b.x;
    const Rational& hi_x = a.x < b.x ? b.x : a.x;
    const Rational& lo_y = a.y < b.y ? a.y : b.y;
    const Rational& hi_y = a.y < b.y ? b.y : a.y;
    for (const auto& e : edges) {
      const Point2& p = view.point(e[0]);
      const Point2& q = view.point(e[1]);
      if ((p.x < lo_x && q.x < lo_x) || (p.x > hi_x && q.x > hi_x) || (p.y < lo_y && q.y < lo_y) ||
          (p.y > hi_y && q.y > hi_y)) {
        continue;
      }
      auto hit = segments_intersect(Segment{a, b}, Segment{p, q});
      if (hit.relation == SegmentRelation::Disjoint) continue;
      if (on_segment(p, a, b)) add(p);
      if (on_segment(q, a, b)) add(q);
      if (hit.relation == SegmentRelation::ProperCross) add(*line_intersection(a, b, p, q));
    }
    std::sort(ts.begin(), ts.end());
    ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
    for (std::size_t k = 1; k < ts.size(); ++k) {
      Piece piece{lerp(a, b, ts[k - 1]), lerp(a, b, ts[k])};
      piece.inside = view.locate(lerp(a, b, (ts[k - 1] + ts[k]) / 2)) != RingLocation::Outside;
      pieces.push_back(std::move(piece));
    }
  }

  auto vertex_at = [&](const Point2& p) { return mesh.vertex_index_at(p); };
  std::vector<Chain> fragments;
  auto split_at_vertices = [&](const std::vector<Point2>& line) {
    Chain cur;
    for (std::size_t k = 0; k < line.size(); ++k) {
      if (!cur.points.empty() && cur.points.back() == line[k]) continue;
      cur.points.push_back(line[k]);
      if (k > 0 && k + 1 < line.size() && vertex_at(line[k]) >= 0) {
        fragments.push_back(cur);
        cur.points = {line[k]};
      }
    }
    fragments.push_back(std::move(cur));
  };

  const bool all_inside =
      std::all_of(pieces.begin(), pieces.end(), [](const Piece& p) { return p.inside; });
  if (all_inside) {
    std::vector<Point2> loop;
    for (const auto& p : pieces) loop.push_back(p.a);
    std::size_t first = loop.size();
    for (std::size_t k = 0; k < loop.size(); ++k) {
      if (vertex_at(loop[k]) >= 0) {
        first = k;
        break;
      }
    }
    if (first == loop.size()) {
      for (const auto& p : pieces) {
        if (view.locate(p.a) == RingLocation::OnBoundary ||
            view.locate(midpoint(p.a, p.b)) == RingLocation::OnBoundary) {
          return reject("closed fragment touches the boundary away from vertices");
        }
      }
      for (int i = 0; i < view.size(); ++i) {
        if (view.ring_of(i) > 0 && locate_in_ring(view.point(i), ring) == RingLocation::Inside) {
          return reject("closed fragment encloses a hole");
        }
      }
    } else {
      std::vector<Point2> line;
      for (std::size_t k = 0; k <= loop.size(); ++k) line.push_back(loop[(first + k) % loop.size()]);
      split_at_vertices(line);
    }
  } else {
    std::size_t start = 0;
    while (pieces[start].inside) ++start;
    const std::size_t np = pieces.size();
    std::vector<Point2> line;
    auto flush = [&]() {
      if (line.empty()) return;
      split_at_vertices(line);
      line.clear();
    };
    for (std::size_t k = 1; k <= np; ++k) {
      const Piece& p = pieces[(start + k) % np];
      if (!p.inside) {
        flush();
        continue;
      }
      if (line.empty()) line.push_back(p.a);
      line.push_back(p.b);
    }
    flush();
  }

  // Endpoints inside an edge are pulled to the edge's left endpoint.
  auto left_end_of_edge_through = [&](const Point2& x) -> std::optional<Point2> {
    for (const auto& e : edges) {
      const Point2& p = view.point(e[0]);
      const Point2& q = view.point(e[1]);
      if (on_open_segment(x, p, q)) return lex_less(p, q) ? p : q;
    }
    return std::nullopt;
  };
  CycleConversion out;
  for (auto& f : fragments) {
    if (f.points.size() < 2) continue;
    if (vertex_at(f.points.front()) < 0) {
      auto left = left_end_of_edge_through(f.points.front());
      if (!left) return reject("fragment endpoint is neither a vertex nor on an edge");
      f.points.insert(f.points.begin(), *left);
    }
    if (vertex_at(f.points.back()) < 0) {
      auto left = left_end_of_edge_through(f.points.back());
      if (!left) return reject("fragment endpoint is neither a vertex nor on an edge");
      f.points.push_back(*left);
    }
    Chain clean;
    for (const auto& p : f.points) {
      if (clean.points.empty() || clean.points.back() != p) clean.points.push_back(p);
    }
    if (clean.points.size() < 2) continue;
    try {
      Chain path = mesh.shortest_homotopic_path(clean);
      auto ds = extract_diagonals(mesh, path);
      out.diagonals.insert(out.diagonals.end(), ds.begin(), ds.end());
    } catch (const ChainError& e) {
      return reject(std::string("fragment: ") + e.what());
    }
    out.fragments.push_back(std::move(clean));
  }
  normalize_diagonal_set(out.diagonals);
  if (!is_conforming(out.diagonals)) return reject("fragment diagonals cross");
  try {
    out.faces = partition_by_diagonals(view, out.diagonals,
                                       [&](int i, int j) { return mesh.is_diagonal(i, j); });
  } catch (const std::invalid_argument& e) {
    return reject(e.what());
  }
  // Faces cut from a valid polygon by conforming diagonals can only fail to
  // be valid by pinching, i.e. meeting one vertex twice.
  for (const auto& face : out.faces) {
    std::vector<int> ids;
    for (const auto& v : face.vertices()) ids.push_back(v.id);
    std::sort(ids.begin(), ids.end());
    if (std::adjacent_find(ids.begin(), ids.end()) != ids.end()) return reject("face: rings share a point");
  }
  out.accepted = true;
  return out;
}

CycleConversion cycle_to_diagonals(const PolygonWithHoles& poly, const Triangulation& tri,
                                   const SeparatorCycle& cycle) {
  return cycle_to_diagonals(TriangleMesh(poly, tri), cycle);
}

}  // namespace geopart
