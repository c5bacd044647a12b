#include "geopart/convex_decomp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>

namespace geopart {

namespace {

// Iterative-deepening search over diagonal sets. Only diagonals with a reflex
// endpoint can appear in a minimal decomposition, and every unresolved reflex
// vertex must receive a diagonal inside one of its wider-than-flat sectors.
class ExactSearch {
 public:
  explicit ExactSearch(const PolygonWithHoles& poly) : poly_(poly), view_(poly) {
    const int n = view_.size();
    holes_ = static_cast<int>(poly.holes.size());
    reflex_.resize(n);
    for (int i = 0; i < n; ++i) reflex_[i] = view_.is_reflex(i);
    for (const auto& d : enumerate_diagonals(poly)) {
      int i = view_.index_of(d.u), j = view_.index_of(d.v);
      if (!reflex_[i] && !reflex_[j]) continue;
      cands_.push_back({i, j, d});
    }
    const int m = static_cast<int>(cands_.size());
    at_.assign(n, {});
    for (int c = 0; c < m; ++c) {
      at_[cands_[c].i].push_back(c);
      at_[cands_[c].j].push_back(c);
    }
    for (int v = 0; v < n; ++v) {
      const Point2 ref = sub(view_.point(view_.next(v)), view_.point(v));
      std::sort(at_[v].begin(), at_[v].end(), [&](int a, int b) {
        return ccw_before(ref, direction(a, v), direction(b, v));
      });
    }
    crosses_.assign(m, {});
    for (int a = 0; a < m; ++a) {
      for (int b = a + 1; b < m; ++b) {
        if (segments_intersect(cands_[a].d.geometry, cands_[b].d.geometry).relation ==
            SegmentRelation::ProperCross) {
          crosses_[a].push_back(b);
          crosses_[b].push_back(a);
        }
      }
    }
    chosen_.assign(m, 0);
    blocked_.assign(m, 0);
  }

  int holes() const { return holes_; }

  // Lower bound on the number of diagonals in any convex decomposition.
  int diagonal_lower_bound() {
    auto u = unresolved();
    return std::max(bound(u), 0);
  }

  std::optional<ConformingDiagonalSet> solve(int max_diagonals) {
    for (int t = 0; t <= max_diagonals; ++t) {
      visited_.clear();
      if (dfs(t)) {
        ConformingDiagonalSet out;
        for (int c : stack_) out.push_back(cands_[c].d);
        normalize_diagonal_set(out);
        return out;
      }
    }
    return std::nullopt;
  }

 private:
  struct Cand {
    int i;
    int j;
    Diagonal d;
  };
  struct Open {
    int v;
    std::vector<int> options;
  };

  Point2 direction(int c, int v) const {
    const int w = cands_[c].i == v ? cands_[c].j : cands_[c].i;
    return sub(view_.point(w), view_.point(v));
  }

  // Candidates lying in a reflex sector of v; empty result with resolved=true
  // when v has none.
  bool reflex_sectors(int v, std::vector<int>* options) const {
    const Point2& p = view_.point(v);
    const auto& list = at_[v];
    Point2 prev_dir = sub(view_.point(view_.next(v)), p);
    int prev_pos = -1;
    bool open = false;
    auto close_sector = [&](const Point2& dir, int pos) {
      if (cross_dir(prev_dir, dir) < 0) {
        open = true;
        if (options) {
          for (int k = prev_pos + 1; k < pos; ++k) {
            const int c = list[k];
            if (!chosen_[c] && blocked_[c] == 0) options->push_back(c);
          }
        }
      }
      prev_dir = dir;
      prev_pos = pos;
    };
    for (int k = 0; k < static_cast<int>(list.size()); ++k) {
      if (chosen_[list[k]]) close_sector(direction(list[k], v), k);
    }
    close_sector(sub(view_.point(view_.prev(v)), p), static_cast<int>(list.size()));
    return open;
  }

  std::vector<Open> unresolved() const {
    std::vector<Open> out;
    for (int v = 0; v < view_.size(); ++v) {
      if (!reflex_[v]) continue;
      Open o{v, {}};
      if (reflex_sectors(v, &o.options)) out.push_back(std::move(o));
    }
    return out;
  }

  int bound(const std::vector<Open>& open) {
    if (open.empty()) return 0;
    marks_.assign(cands_.size(), 0);
    for (const auto& o : open) {
      for (int c : o.options) ++marks_[c];
    }
    int lonely = 0;
    for (const auto& o : open) {
      bool paired = false;
      for (int c : o.options) {
        if (marks_[c] == 2) {
          paired = true;
          break;
        }
      }
      if (!paired) ++lonely;
    }
    const int u = static_cast<int>(open.size());
    return u - (u - lonely) / 2;
  }

  void push(int c) {
    chosen_[c] = 1;
    stack_.push_back(c);
    for (int d : crosses_[c]) ++blocked_[d];
  }

  void pop() {
    const int c = stack_.back();
    stack_.pop_back();
    chosen_[c] = 0;
    for (int d : crosses_[c]) --blocked_[d];
  }

  bool dfs(int threshold) {
    auto open = unresolved();
    if (open.empty()) return true;
    const int g = static_cast<int>(stack_.size());
    if (g >= threshold || g + bound(open) > threshold) return false;
    std::vector<int> key(stack_);
    std::sort(key.begin(), key.end());
    if (!visited_.insert(std::move(key)).second) return false;
    const Open* pick = &open.front();
    for (const auto& o : open) {
      if (o.options.size() < pick->options.size()) pick = &o;
    }
    if (pick->options.empty()) return false;
    const std::vector<int> options = pick->options;
    for (int c : options) {
      push(c);
      if (dfs(threshold)) return true;
      pop();
    }
    return false;
  }

  const PolygonWithHoles& poly_;
  PolygonView view_;
  int holes_ = 0;
  std::vector<char> reflex_;
  std::vector<Cand> cands_;
  std::vector<std::vector<int>> at_;
  std::vector<std::vector<int>> crosses_;
  std::vector<char> chosen_;
  std::vector<int> blocked_;
  std::vector<int> stack_;
  std::vector<int> marks_;
  std::set<std::vector<int>> visited_;
};

int diagonal_cap(int k_max, int holes) {
  int cap = k_max - 1 + holes;
  cap = std::min(cap, k_max >= 3 ? 3 * k_max - 6 : 1);
  return cap;
}

}  // namespace

int piece_lower_bound(const PolygonWithHoles& poly) {
  ExactSearch search(poly);
  return std::max(1, search.diagonal_lower_bound() + 1 - search.holes());
}

std::optional<ConvexDecomposition> exact_decompose(const PolygonWithHoles& poly, int k_max) {
  if (k_max < 1) throw std::invalid_argument("k_max must be at least 1");
  ExactSearch search(poly);
  auto diagonals = search.solve(diagonal_cap(k_max, search.holes()));
  if (!diagonals) return std::nullopt;
  auto dec = decomposition_from_diagonals(poly, std::move(*diagonals));
  for (const auto& piece : dec.pieces) {
    if (!is_convex(ring_points(piece))) throw std::logic_error("exact search produced a non-convex piece");
  }
  if (static_cast<int>(dec.pieces.size()) > k_max) return std::nullopt;
  return dec;
}

ConvexDecomposition hertel_mehlhorn(const PolygonWithHoles& poly) {
  PolygonView view(poly);
  ConformingDiagonalSet diags = triangulate(poly).diagonals;

  auto merged_sector_ok = [&](std::size_t skip, int v_index, const Point2& dir) {
    const Point2& p = view.point(v_index);
    const Point2 ref = sub(view.point(view.next(v_index)), p);
    Point2 before = ref;
    Point2 after = sub(view.point(view.prev(v_index)), p);
    const int vid = view.id(v_index);
    for (std::size_t k = 0; k < diags.size(); ++k) {
      if (k == skip) continue;
      const auto& e = diags[k];
      if (e.u != vid && e.v != vid) continue;
      const Point2 other = sub(e.u == vid ? e.geometry.b : e.geometry.a, p);
      if (ccw_before(ref, other, dir)) {
        if (ccw_before(ref, before, other)) before = other;
      } else if (ccw_before(ref, other, after)) {
        after = other;
      }
    }
    return cross_dir(before, after) >= 0;
  };

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t k = 0; k < diags.size();) {
      const auto& d = diags[k];
      const int i = view.index_of(d.u), j = view.index_of(d.v);
      if (merged_sector_ok(k, i, sub(d.geometry.b, d.geometry.a)) &&
          merged_sector_ok(k, j, sub(d.geometry.a, d.geometry.b))) {
        diags.erase(diags.begin() + static_cast<std::ptrdiff_t>(k));
        changed = true;
      } else {
        ++k;
      }
    }
  }
  return decomposition_from_diagonals(poly, diags);
}

Rational general_position_shear(const PolygonWithHoles& poly) {
  const auto verts = poly.vertices();
  std::vector<Rational> xs;
  Rational ymin = verts.front().p.y, ymax = ymin;
  for (const auto& v : verts) {
    xs.push_back(v.p.x);
    ymin = std::min(ymin, v.p.y);
    ymax = std::max(ymax, v.p.y);
  }
  std::sort(xs.begin(), xs.end());
  bool tie = false;
  Rational min_gap = -1;
  for (std::size_t k = 1; k < xs.size(); ++k) {
    if (xs[k] == xs[k - 1]) {
      tie = true;
    } else if (min_gap < 0 || xs[k] - xs[k - 1] < min_gap) {
      min_gap = xs[k] - xs[k - 1];
    }
  }
  if (!tie) return 0;
  if (min_gap < 0) min_gap = 1;
  return min_gap / (2 * (ymax - ymin) + 1);
}

PolygonWithHoles apply_shear(const PolygonWithHoles& poly, const Rational& s) {
  PolygonWithHoles out = poly;
  auto shear = [&](Ring& r) {
    for (auto& v : r) v.p.x = v.p.x + s * v.p.y;
  };
  shear(out.outer);
  for (auto& h : out.holes) shear(h);
  return out;
}

int default_alpha_cap(int vertex_count) {
  const long target = std::max(1L, 3L * vertex_count - 6);
  Rational power = 1;
  int a = 0;
  while (power < target) {
    power *= Rational(4, 3);
    ++a;
  }
  return a;
}

namespace {

struct NodeResult {
  std::optional<ConvexDecomposition> dec;
  int level = 0;
};

class Decomposer {
 public:
  Decomposer(const DecomposeConfig& cfg, int alpha) : cfg_(cfg), alpha_(alpha) {}

  NodeResult solve(const PolygonWithHoles& poly, int depth) {
    const std::string key = canonical_key(poly) + "#" + std::to_string(depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    NodeResult r = compute(poly, depth);
    memo_.emplace(key, r);
    return r;
  }

  const CandidateStats& stats() const { return stats_; }
  std::vector<std::string> log() const {
    std::vector<std::string> out;
    for (const auto& [why, count] : reasons_) out.push_back(std::to_string(count) + " x " + why);
    return out;
  }

 private:
  int lower_bound(const PolygonWithHoles& poly) {
    const std::string key = canonical_key(poly);
    if (auto it = bounds_.find(key); it != bounds_.end()) return it->second;
    const int b = piece_lower_bound(poly);
    bounds_.emplace(key, b);
    return b;
  }

  const std::optional<ConvexDecomposition>& base(const PolygonWithHoles& poly) {
    const std::string key = canonical_key(poly);
    if (auto it = base_.find(key); it != base_.end()) return it->second;
    return base_.emplace(key, exact_decompose(poly, cfg_.budget.lambda)).first->second;
  }

  // Any result for a face is either its base solution or has more than
  // lambda pieces.
  int face_bound(const PolygonWithHoles& face) {
    if (const auto& b = base(face)) return static_cast<int>(b->pieces.size());
    return std::max(lower_bound(face), cfg_.budget.lambda + 1);
  }

  NodeResult compute(const PolygonWithHoles& poly, int depth) {
    if (const auto& b = base(poly)) return {b, 0};
    if (depth > alpha_) return {};

    const auto tri = triangulate(poly);
    const TriangleMesh mesh(poly, tri);
    const int lb = std::max(lower_bound(poly), cfg_.budget.lambda + 1);
    NodeResult best;
    int best_count = 0;
    std::set<std::vector<std::pair<int, int>>> seen;

    for_each_cycle(polygon_cycle_space(poly), cfg_.budget.ell_max, cfg_.budget.max_candidates,
                   [&](const SeparatorCycle& cycle) {
                     ++stats_.emitted;
                     auto conv = cycle_to_diagonals(mesh, cycle);
                     if (!conv.accepted) {
                       ++stats_.rejected;
                       if (cfg_.verbose) ++reasons_[conv.reason];
                       return true;
                     }
                     if (conv.diagonals.empty()) {
                       ++stats_.empty;
                       return true;
                     }
                     std::vector<std::pair<int, int>> dkey;
                     for (const auto& d : conv.diagonals) dkey.emplace_back(d.u, d.v);
                     if (!seen.insert(dkey).second) {
                       ++stats_.duplicate;
                       return true;
                     }
                     ++stats_.accepted;

                     std::vector<int> bounds;
                     int bound_sum = 0;
                     for (const auto& f : conv.faces) {
                       bounds.push_back(face_bound(f));
                       bound_sum += bounds.back();
                     }
                     if (best.dec && bound_sum >= best_count) {
                       ++stats_.pruned;
                       return true;
                     }
                     ConvexDecomposition merged;
                     merged.added_diagonals = conv.diagonals;
                     int total = 0;
                     int level = 0;
                     int remaining = bound_sum;
                     for (std::size_t k = 0; k < conv.faces.size(); ++k) {
                       remaining -= bounds[k];
                       NodeResult sub = solve(conv.faces[k], depth + 1);
                       if (!sub.dec) return true;
                       total += static_cast<int>(sub.dec->pieces.size());
                       level = std::max(level, sub.level);
                       if (best.dec && total + remaining >= best_count) {
                         ++stats_.pruned;
                         return true;
                       }
                       merged.pieces.insert(merged.pieces.end(), sub.dec->pieces.begin(),
                                            sub.dec->pieces.end());
                       merged.added_diagonals.insert(merged.added_diagonals.end(),
                                                     sub.dec->added_diagonals.begin(),
                                                     sub.dec->added_diagonals.end());
                     }
                     if (!best.dec || total < best_count) {
                       normalize_diagonal_set(merged.added_diagonals);
                       best.dec = std::move(merged);
                       best.level = level + 1;
                       best_count = total;
                     }
                     return best_count > lb;
                   });
    return best;
  }

  const DecomposeConfig& cfg_;
  int alpha_;
  CandidateStats stats_;
  std::map<std::string, NodeResult> memo_;
  std::map<std::string, std::optional<ConvexDecomposition>> base_;
  std::map<std::string, int> bounds_;
  std::map<std::string, long> reasons_;
};

Ring restore_ring(const Ring& ring, const PolygonView& original) {
  Ring out;
  for (const auto& v : ring) out.push_back({v.id, original.point(original.index_of(v.id))});
  return out;
}

}  // namespace

DecomposeOutcome decompose(const PolygonWithHoles& poly, const DecomposeConfig& cfg) {
  auto report = validate(poly);
  if (!report.ok) throw std::invalid_argument("invalid polygon: " + report.violation);
  if (!(cfg.epsilon > 0)) throw std::invalid_argument("epsilon must be positive");

  DecomposeOutcome out;
  out.alpha_cap = cfg.alpha_cap >= 0 ? cfg.alpha_cap : default_alpha_cap(poly.vertex_count());
  DecomposeConfig effective = cfg;
  out.epsilon = cfg.epsilon;
  if (cfg.derive_delta) {
    Rational delta = cfg.epsilon / (2 * std::max(1, out.alpha_cap));
    if (delta >= Rational(1, 12)) {
      delta = Rational(1, 13);
      out.epsilon = delta * 2 * std::max(1, out.alpha_cap);
    }
    effective.budget.delta = delta;
  }
  effective.budget.validate();
  out.delta = effective.budget.delta;

  const Rational s = general_position_shear(poly);
  const PolygonWithHoles work = s == 0 ? poly : apply_shear(poly, s);
  Decomposer solver(effective, out.alpha_cap);
  NodeResult r = solver.solve(work, 0);
  out.stats = solver.stats();
  if (cfg.verbose) out.log = solver.log();
  if (!r.dec) return out;

  const PolygonView original(poly);
  ConvexDecomposition dec;
  for (const auto& piece : r.dec->pieces) dec.pieces.push_back(restore_ring(piece, original));
  for (auto d : r.dec->added_diagonals) {
    d.geometry = Segment{original.point(original.index_of(d.u)), original.point(original.index_of(d.v))};
    dec.added_diagonals.push_back(d);
  }
  normalize_diagonal_set(dec.added_diagonals);
  std::sort(dec.pieces.begin(), dec.pieces.end(),
            [](const Ring& a, const Ring& b) { return canonical_ring_ids(a) < canonical_ring_ids(b); });
  out.result = std::move(dec);
  out.max_level = r.level;
  return out;
}

}  // namespace geopart
