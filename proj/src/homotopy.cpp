#include "geopart/homotopy.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace geopart {

Rational chain_length_squared_sum(const Chain& chain) {
  Rational total = 0;
  for (std::size_t i = 1; i < chain.points.size(); ++i) {
    Point2 d = sub(chain.points[i], chain.points[i - 1]);
    total += dot(d, d);
  }
  return total;
}

double chain_length(const Chain& chain) {
  double total = 0;
  for (std::size_t i = 1; i < chain.points.size(); ++i) {
    Point2 d = sub(chain.points[i], chain.points[i - 1]);
    total += std::sqrt(to_double(dot(d, d)));
  }
  return total;
}

TriangleMesh::TriangleMesh(const PolygonWithHoles& poly, const Triangulation& tri)
    : poly_(poly), view_(poly) {
  std::map<std::pair<int, int>, std::pair<int, int>> edge_owner;
  for (const auto& ids : tri.corner_ids) {
    std::array<int, 3> c{};
    for (int k = 0; k < 3; ++k) {
      c[k] = view_.index_of(ids[k]);
      if (c[k] < 0) throw std::invalid_argument("triangle corner is not a polygon vertex");
    }
    if (orient(view_.point(c[0]), view_.point(c[1]), view_.point(c[2])) <= 0) {
      throw std::invalid_argument("triangle corners are not counterclockwise");
    }
    corners_.push_back(c);
  }
  neighbors_.assign(corners_.size(), {-1, -1, -1});
  for (int t = 0; t < triangle_count(); ++t) {
    for (int k = 0; k < 3; ++k) {
      int a = corners_[t][k], b = corners_[t][(k + 1) % 3];
      auto key = std::minmax(a, b);
      auto it = edge_owner.find({key.first, key.second});
      if (it == edge_owner.end()) {
        edge_owner[{key.first, key.second}] = {t, k};
      } else {
        neighbors_[t][k] = it->second.first;
        neighbors_[it->second.first][it->second.second] = t;
      }
    }
  }
  const int n = view_.size();
  diagonal_.assign(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      if (!view_.adjacent(i, j) && view_.is_diagonal(i, j)) {
        diagonal_[static_cast<std::size_t>(i) * n + j] = diagonal_[static_cast<std::size_t>(j) * n + i] = 1;
      }
    }
  }
  fans_.assign(view_.size(), {});
  for (int t = 0; t < triangle_count(); ++t) {
    for (int k = 0; k < 3; ++k) fans_[corners_[t][k]].push_back(t);
  }
  for (int w = 0; w < view_.size(); ++w) {
    const Point2& W = view_.point(w);
    const Point2 ref = sub(view_.point(view_.next(w)), W);
    auto first_leg = [&](int t) {
      const auto& c = corners_[t];
      int k = static_cast<int>(std::find(c.begin(), c.end(), w) - c.begin());
      return sub(view_.point(c[(k + 1) % 3]), W);
    };
    std::sort(fans_[w].begin(), fans_[w].end(),
              [&](int s, int t) { return ccw_before(ref, first_leg(s), first_leg(t)); });
  }
}

EdgeCrossing TriangleMesh::crossing(int t, int u) const {
  for (int k = 0; k < 3; ++k) {
    if (neighbors_[t][k] == u) {
      return EdgeCrossing{t, u, corners_[t][(k + 1) % 3], corners_[t][k]};
    }
  }
  throw std::logic_error("crossing between non-adjacent triangles");
}

int TriangleMesh::vertex_index_at(const Point2& p) const {
  for (int i = 0; i < view_.size(); ++i) {
    if (view_.point(i) == p) return i;
  }
  return -1;
}

int TriangleMesh::fan_slot(int w, int t) const {
  const auto& fan = fans_[w];
  auto it = std::find(fan.begin(), fan.end(), t);
  return it == fan.end() ? -1 : static_cast<int>(it - fan.begin());
}

int TriangleMesh::fan_slot_for_direction(int w, const Point2& d, int current_slot) const {
  const Point2& W = view_.point(w);
  int best = -1;
  for (int s = 0; s < static_cast<int>(fans_[w].size()); ++s) {
    const auto& c = corners_[fans_[w][s]];
    int k = static_cast<int>(std::find(c.begin(), c.end(), w) - c.begin());
    Point2 a = sub(view_.point(c[(k + 1) % 3]), W);
    Point2 b = sub(view_.point(c[(k + 2) % 3]), W);
    if (cross_dir(a, d) < 0 || cross_dir(d, b) < 0) continue;
    if (best < 0 || (current_slot >= 0 && std::abs(s - current_slot) < std::abs(best - current_slot))) {
      best = s;
    }
  }
  return best;
}

std::vector<EdgeCrossing> TriangleMesh::trace(const Chain& chain) const {
  if (chain.points.size() < 2) throw ChainError("chain needs at least two points");
  const int start = vertex_index_at(chain.points.front());
  if (start < 0 || vertex_index_at(chain.points.back()) < 0) {
    throw ChainError("chain endpoints must be polygon vertices");
  }
  std::vector<EdgeCrossing> out;
  int t = -1;
  int at = start;
  Point2 q = chain.points.front();
  auto step_into = [&](int u) {
    out.push_back(crossing(t, u));
    t = u;
  };
  const int guard_limit = 8 * (triangle_count() + 4);
  for (std::size_t s = 1; s < chain.points.size(); ++s) {
    const Point2& r = chain.points[s];
    for (int guard = 0;; ++guard) {
      if (guard > guard_limit) throw std::logic_error("trace did not terminate");
      if (at >= 0) {
        const Point2& W = view_.point(at);
        if (W == r) break;
        const Point2 d = sub(r, W);
        const int cur = t >= 0 ? fan_slot(at, t) : -1;
        const int slot = fan_slot_for_direction(at, d, cur);
        if (slot < 0) {
          throw ChainError("chain leaves the polygon at vertex " + std::to_string(view_.id(at)));
        }
        if (cur >= 0) {
          for (int k = cur; k < slot; ++k) step_into(fans_[at][k + 1]);
          for (int k = cur; k > slot; --k) step_into(fans_[at][k - 1]);
        }
        t = fans_[at][slot];
        const auto& c = corners_[t];
        const int k = static_cast<int>(std::find(c.begin(), c.end(), at) - c.begin());
        const int a = c[(k + 1) % 3], b = c[(k + 2) % 3];
        const Point2& A = view_.point(a);
        const Point2& B = view_.point(b);
        if (orient(A, B, r) >= 0) {
          q = r;
          at = r == A ? a : (r == B ? b : -1);
          break;
        }
        if (orient(W, A, r) == 0) {
          q = A;
          at = a;
          continue;
        }
        if (orient(W, B, r) == 0) {
          q = B;
          at = b;
          continue;
        }
        const int u = neighbors_[t][(k + 1) % 3];
        if (u < 0) throw ChainError("chain leaves the polygon");
        q = *line_intersection(W, r, A, B);
        at = -1;
        step_into(u);
        continue;
      }
      const auto& c = corners_[t];
      bool inside = true;
      for (int k = 0; k < 3 && inside; ++k) {
        inside = orient(view_.point(c[k]), view_.point(c[(k + 1) % 3]), r) >= 0;
      }
      if (inside) {
        q = r;
        at = -1;
        for (int k = 0; k < 3; ++k) {
          if (view_.point(c[k]) == r) at = c[k];
        }
        break;
      }
      bool moved = false;
      for (int k = 0; k < 3 && !moved; ++k) {
        const Point2& A = view_.point(c[k]);
        const Point2& B = view_.point(c[(k + 1) % 3]);
        if (orient(A, B, r) >= 0) continue;
        auto x = line_intersection(q, r, A, B);
        if (!x || !on_segment(*x, A, B) || !on_segment(*x, q, r)) continue;
        moved = true;
        if (*x == A || *x == B) {
          at = *x == A ? c[k] : c[(k + 1) % 3];
          q = *x;
          break;
        }
        const int u = neighbors_[t][k];
        if (u < 0) throw ChainError("chain leaves the polygon");
        q = *x;
        step_into(u);
      }
      if (!moved) throw std::logic_error("trace lost the chain inside a triangle");
    }
  }
  return out;
}

std::vector<EdgeCrossing> TriangleMesh::reduce(std::vector<EdgeCrossing> raw, int start,
                                               int end) const {
  std::vector<EdgeCrossing> st;
  for (const auto& c : raw) {
    if (!st.empty() && st.back().from == c.to && st.back().to == c.from) {
      st.pop_back();
    } else {
      st.push_back(c);
    }
  }
  std::size_t lo = 0;
  while (lo < st.size() && (st[lo].left == start || st[lo].right == start)) ++lo;
  std::size_t hi = st.size();
  while (hi > lo && (st[hi - 1].left == end || st[hi - 1].right == end)) --hi;
  return {st.begin() + static_cast<std::ptrdiff_t>(lo), st.begin() + static_cast<std::ptrdiff_t>(hi)};
}

Sleeve TriangleMesh::build_sleeve(const Chain& chain) const {
  auto raw = trace(chain);
  const int start = vertex_index_at(chain.points.front());
  const int end = vertex_index_at(chain.points.back());
  Sleeve sleeve;
  sleeve.crossings = reduce(std::move(raw), start, end);
  if (sleeve.crossings.empty()) {
    int slot = start == end ? 0
                            : fan_slot_for_direction(start, sub(view_.point(end), view_.point(start)), -1);
    if (slot < 0) slot = 0;
    sleeve.triangles.push_back(fans_[start][slot]);
    return sleeve;
  }
  sleeve.triangles.push_back(sleeve.crossings.front().from);
  for (const auto& c : sleeve.crossings) {
    sleeve.triangles.push_back(c.to);
    sleeve.edges.push_back({view_.id(c.left), view_.id(c.right)});
  }
  return sleeve;
}

Chain TriangleMesh::shortest_homotopic_path(const Chain& chain) const {
  const Sleeve sleeve = build_sleeve(chain);
  const int start = vertex_index_at(chain.points.front());
  const int end = vertex_index_at(chain.points.back());

  std::vector<std::pair<int, int>> portals;  // (left, right)
  portals.emplace_back(start, start);
  for (const auto& c : sleeve.crossings) portals.emplace_back(c.left, c.right);
  portals.emplace_back(end, end);

  auto P = [&](int i) -> const Point2& { return view_.point(i); };
  std::vector<int> path{start};
  int apex = start, pl = start, pr = start;
  std::size_t apex_i = 0, left_i = 0, right_i = 0;
  for (std::size_t i = 1; i < portals.size(); ++i) {
    const auto [l, r] = portals[i];
    const Point2& A = P(apex);
    if (r != apex && (pr == apex || orient(A, P(pr), P(r)) >= 0)) {
      if (pl == apex || orient(A, P(pl), P(r)) < 0) {
        pr = r;
        right_i = i;
      } else {
        path.push_back(pl);
        apex = pl;
        apex_i = left_i;
        pr = apex;
        right_i = apex_i;
        i = apex_i;
        continue;
      }
    }
    if (l != apex && (pl == apex || orient(A, P(pl), P(l)) <= 0)) {
      if (pr == apex || orient(A, P(pr), P(l)) > 0) {
        pl = l;
        left_i = i;
      } else {
        path.push_back(pr);
        apex = pr;
        apex_i = right_i;
        pl = apex;
        left_i = apex_i;
        i = apex_i;
        continue;
      }
    }
  }
  if (path.back() != end) path.push_back(end);

  Chain out;
  for (int v : path) {
    if (out.points.empty() || out.points.back() != P(v)) out.points.push_back(P(v));
  }
  if (out.points.size() == 1) out.points.push_back(out.points.front());
  return out;
}

Sleeve build_sleeve(const PolygonWithHoles& poly, const Triangulation& tri, const Chain& chain) {
  return TriangleMesh(poly, tri).build_sleeve(chain);
}

Chain shortest_homotopic_path(const PolygonWithHoles& poly, const Triangulation& tri,
                              const Chain& chain) {
  return TriangleMesh(poly, tri).shortest_homotopic_path(chain);
}

namespace {

template <typename IsDiagonal>
ConformingDiagonalSet extract_with(const PolygonView& view, const Chain& path, IsDiagonal&& is_diagonal) {
  auto index_at = [&](const Point2& p) {
    for (int i = 0; i < view.size(); ++i) {
      if (view.point(i) == p) return i;
    }
    return -1;
  };
  ConformingDiagonalSet out;
  for (std::size_t s = 1; s < path.points.size(); ++s) {
    const Point2& p = path.points[s - 1];
    const Point2& q = path.points[s];
    if (p == q) continue;
    if (index_at(p) < 0 || index_at(q) < 0) {
      throw ChainError("path link endpoint is not a polygon vertex");
    }
    std::vector<int> on;
    for (int i = 0; i < view.size(); ++i) {
      if (on_segment(view.point(i), p, q)) on.push_back(i);
    }
    const Point2 dir = sub(q, p);
    std::sort(on.begin(), on.end(), [&](int a, int b) {
      return dot(sub(view.point(a), p), dir) < dot(sub(view.point(b), p), dir);
    });
    for (std::size_t k = 1; k < on.size(); ++k) {
      const int i = on[k - 1], j = on[k];
      if (view.point(i) == view.point(j) || view.adjacent(i, j)) continue;
      if (!is_diagonal(i, j)) {
        throw ChainError("path link (" + std::to_string(view.id(i)) + ", " +
                         std::to_string(view.id(j)) + ") is neither an edge nor a diagonal");
      }
      out.push_back(make_diagonal(view, i, j));
    }
  }
  normalize_diagonal_set(out);
  return out;
}

}  // namespace

ConformingDiagonalSet extract_diagonals(const PolygonView& view, const Chain& path) {
  return extract_with(view, path, [&](int i, int j) { return view.is_diagonal(i, j); });
}

ConformingDiagonalSet extract_diagonals(const TriangleMesh& mesh, const Chain& path) {
  return extract_with(mesh.view(), path, [&](int i, int j) { return mesh.is_diagonal(i, j); });
}

ConformingDiagonalSet extract_diagonals(const PolygonWithHoles& poly, const Chain& path) {
  return extract_diagonals(PolygonView(poly), path);
}

}  // namespace geopart
