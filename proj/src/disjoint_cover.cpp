#include "geopart/disjoint_cover.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <tuple>
#include <unordered_map>

namespace geopart {

CoverInstance CoverInstance::full(const SampleSet& samples, const Basis& basis) {
  CoverInstance inst;
  inst.points = full_mask(samples.size());
  for (int i = 0; i < basis.size(); ++i) inst.triangles.push_back(i);
  return inst;
}

bool has_closure(const CoverInstance& inst, const Basis& basis) {
  for (int outer : inst.triangles) {
    for (int inner : basis.contained_ids(outer)) {
      if (!std::binary_search(inst.triangles.begin(), inst.triangles.end(), inner)) return false;
    }
  }
  return true;
}

ValidationReport check_disjoint_cover(const DisjointCover& cover, const Basis& basis,
                                      const SampleSet& samples, PointMask points) {
  const auto& ids = cover.triangle_ids;
  for (std::size_t k = 0; k < ids.size(); ++k) {
    if (ids[k] < 0 || ids[k] >= basis.size()) {
      return ValidationReport::fail("triangle id out of range", {ids[k]});
    }
    if (k > 0 && ids[k] == ids[k - 1]) return ValidationReport::fail("repeated triangle", {ids[k]});
  }
  for (std::size_t a = 0; a < ids.size(); ++a) {
    const auto& t = basis[ids[a]];
    if (covered_mask(t.tri, samples) != t.covered) {
      return ValidationReport::fail("stored coverage differs from the triangle", {ids[a]});
    }
    if (t.cheb_error() > samples.mu() || max_vertical_error(t.plane, samples.lifted(t.covered)) != t.cheb_error()) {
      return ValidationReport::fail("triangle is not valid", {ids[a]});
    }
    for (std::size_t b = a + 1; b < ids.size(); ++b) {
      if (!interiors_disjoint(t.tri, basis[ids[b]].tri)) {
        return ValidationReport::fail("triangle interiors overlap", {ids[a], ids[b]});
      }
    }
  }
  PointMask covered = 0;
  for (int id : ids) covered |= basis[id].covered;
  const PointMask missing = points & ~covered;
  if (missing != 0) {
    std::vector<int> where;
    for (int i = 0; i < samples.size(); ++i) {
      if (mask_has(missing, i)) where.push_back(i);
    }
    return ValidationReport::fail("sample not covered", where);
  }
  return ValidationReport::pass();
}

namespace {

class DisjointnessCache {
 public:
  explicit DisjointnessCache(const Basis& basis) : basis_(basis), n_(static_cast<std::size_t>(basis.size())) {
    if (n_ <= kDenseLimit) dense_.assign((n_ * n_ + 3) / 4, 0);
  }

  bool disjoint(int a, int b) {
    if (a > b) std::swap(a, b);
    if (!dense_.empty()) {
      const std::size_t k = static_cast<std::size_t>(a) * n_ + static_cast<std::size_t>(b);
      const int shift = static_cast<int>(k % 4) * 2;
      const int state = (dense_[k / 4] >> shift) & 3;
      if (state != 0) return state == 1;
      const bool d = interiors_disjoint(basis_[a].tri, basis_[b].tri);
      dense_[k / 4] = static_cast<std::uint8_t>(dense_[k / 4] | ((d ? 1 : 2) << shift));
      return d;
    }
    const auto key = (static_cast<std::uint64_t>(a) << 32) | static_cast<std::uint32_t>(b);
    if (auto it = sparse_.find(key); it != sparse_.end()) return it->second;
    const bool d = interiors_disjoint(basis_[a].tri, basis_[b].tri);
    sparse_.emplace(key, d);
    return d;
  }

 private:
  static constexpr std::size_t kDenseLimit = 8192;
  const Basis& basis_;
  std::size_t n_;
  std::vector<std::uint8_t> dense_;  // 2 bits per pair: unknown, disjoint, overlapping
  std::unordered_map<std::uint64_t, bool> sparse_;
};

class CoverSearch {
 public:
  CoverSearch(const CoverInstance& inst, const Basis& basis, DisjointnessCache& cache)
      : basis_(basis), cache_(cache), points_(inst.points) {
    // A triangle holding a smaller active one with the same active points is
    // never needed: the smaller one overlaps less.
    std::vector<int> useful;
    for (int id : inst.triangles) {
      const PointMask mine = basis[id].covered & points_;
      if (mine == 0) continue;
      bool dominated = false;
      for (int inner : basis.contained_ids(id)) {
        if (inner != id && (basis[inner].covered & points_) == mine &&
            std::binary_search(inst.triangles.begin(), inst.triangles.end(), inner)) {
          dominated = true;
          break;
        }
      }
      if (!dominated) useful.push_back(id);
    }
    for (int p = 0; p < kMaxSamples; ++p) {
      if (!mask_has(points_, p)) continue;
      auto& list = cands_[p];
      for (int id : useful) {
        const PointMask c = basis[id].covered;
        if (!mask_has(c, p)) continue;
        list.push_back(id);
        cocover_[p] |= c & points_;
      }
      std::stable_sort(list.begin(), list.end(), [&](int a, int b) {
        return mask_size(basis[a].covered & points_) > mask_size(basis[b].covered & points_);
      });
    }
  }

  bool coverable() const {
    for (int p = 0; p < kMaxSamples; ++p) {
      if (mask_has(points_, p) && cands_[p].empty()) return false;
    }
    return true;
  }

  // Points no single active triangle covers together each need their own.
  int lower_bound(PointMask uncovered) const {
    PointMask blocked = 0;
    int count = 0;
    for (int p = 0; p < kMaxSamples; ++p) {
      if (!mask_has(uncovered, p) || mask_has(blocked, p)) continue;
      ++count;
      blocked |= cocover_[p];
    }
    return count;
  }

  std::optional<DisjointCover> solve(int k_max) {
    if (points_ == 0) return DisjointCover{};
    if (!coverable()) return std::nullopt;
    for (int t = lower_bound(points_); t <= k_max; ++t) {
      if (dfs(points_, t)) {
        DisjointCover out{chosen_};
        std::sort(out.triangle_ids.begin(), out.triangle_ids.end());
        return out;
      }
    }
    return std::nullopt;
  }

 private:
  bool dfs(PointMask uncovered, int threshold) {
    if (uncovered == 0) return true;
    if (static_cast<int>(chosen_.size()) + lower_bound(uncovered) > threshold) return false;
    int p = 0;
    while (!mask_has(uncovered, p)) ++p;
    for (int id : cands_[p]) {
      bool ok = true;
      for (int c : chosen_) {
        if (!cache_.disjoint(c, id)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen_.push_back(id);
      if (dfs(uncovered & ~basis_[id].covered, threshold)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  const Basis& basis_;
  DisjointnessCache& cache_;
  PointMask points_;
  std::vector<int> cands_[kMaxSamples];
  PointMask cocover_[kMaxSamples] = {};
  std::vector<int> chosen_;
};

}  // namespace

std::optional<DisjointCover> exact_disjoint_cover(const CoverInstance& inst, const Basis& basis, int k_max) {
  if (k_max < 0) throw std::invalid_argument("k_max must be non-negative");
  DisjointnessCache cache(basis);
  return CoverSearch(inst, basis, cache).solve(k_max);
}

namespace {

Rational param_along(const Point2& a, const Point2& b, const Point2& p) {
  const Point2 d = sub(b, a);
  return dot(sub(p, a), d) / dot(d, d);
}

CurveSide classify_segment(const Point2& a, const Point2& b, const std::vector<Point2>& curve) {
  std::vector<Rational> ts{0, 1};
  const std::size_t n = curve.size();
  for (std::size_t k = 0; k < n; ++k) {
    const Point2& c = curve[k];
    const Point2& d = curve[(k + 1) % n];
    if (on_segment(c, a, b)) ts.push_back(param_along(a, b, c));
    auto hit = segments_intersect(Segment{a, b}, Segment{c, d});
    if (hit.relation == SegmentRelation::ProperCross) {
      if (auto p = line_intersection(a, b, c, d)) ts.push_back(param_along(a, b, *p));
    }
  }
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  bool in = false, out = false;
  auto probe = [&](const Rational& t) {
    switch (locate_in_cycle(lerp(a, b, t), curve)) {
      case RingLocation::Inside:
        in = true;
        break;
      case RingLocation::Outside:
        out = true;
        break;
      case RingLocation::OnBoundary:
        break;
    }
  };
  for (std::size_t k = 0; k < ts.size(); ++k) {
    probe(ts[k]);
    if (k + 1 < ts.size()) probe((ts[k] + ts[k + 1]) / 2);
  }
  if (in && out) return CurveSide::Crossed;
  if (in) return CurveSide::Inside;
  return out ? CurveSide::Outside : CurveSide::OnCurve;
}

}  // namespace

CurveSide classify_against_curve(const Triangle2& tri, const std::vector<Point2>& curve) {
  switch (tri.degeneracy) {
    case Degeneracy::Point:
      switch (locate_in_cycle(tri.v0, curve)) {
        case RingLocation::Inside:
          return CurveSide::Inside;
        case RingLocation::Outside:
          return CurveSide::Outside;
        case RingLocation::OnBoundary:
          return CurveSide::OnCurve;
      }
      break;
    case Degeneracy::Segment:
      return classify_segment(tri.v0, tri.v1, curve);
    case Degeneracy::Full:
      break;
  }
  const std::size_t n = curve.size();
  for (std::size_t k = 0; k < n; ++k) {
    if (segment_meets_open_triangle(curve[k], curve[(k + 1) % n], tri)) return CurveSide::Crossed;
  }
  const Point2 centroid((tri.v0.x + tri.v1.x + tri.v2.x) / 3, (tri.v0.y + tri.v1.y + tri.v2.y) / 3);
  return locate_in_cycle(centroid, curve) == RingLocation::Inside ? CurveSide::Inside : CurveSide::Outside;
}

CurveSplit split_by_curve(const CoverInstance& inst, const Basis& basis, const SampleSet& samples,
                          const std::vector<Point2>& curve) {
  CurveSplit out;
  const auto& pts = samples.points2();
  for (int i = 0; i < samples.size(); ++i) {
    if (!mask_has(inst.points, i)) continue;
    const PointMask bit = PointMask{1} << i;
    if (locate_in_cycle(pts[i], curve) == RingLocation::Outside) {
      out.outside.points |= bit;
    } else {
      out.inside.points |= bit;
    }
  }
  for (int id : inst.triangles) {
    switch (classify_against_curve(basis[id].tri, curve)) {
      case CurveSide::Inside:
        out.inside.triangles.push_back(id);
        break;
      case CurveSide::Outside:
        out.outside.triangles.push_back(id);
        break;
      case CurveSide::Crossed:
        ++out.crossed;
        break;
      case CurveSide::OnCurve:
        out.inside.triangles.push_back(id);
        out.outside.triangles.push_back(id);
        break;
    }
  }
  return out;
}

int default_depth_cap(int sample_count) {
  Rational power = 1;
  int a = 0;
  while (power < sample_count) {
    power *= Rational(4, 3);
    ++a;
  }
  return a;
}

namespace {

struct CoverNode {
  std::optional<DisjointCover> cover;
  int level = 0;
};

class CoverRecursion {
 public:
  CoverRecursion(const SampleSet& samples, const Basis& basis, const SeparatorBudget& budget, int cap)
      : samples_(samples), basis_(basis), budget_(budget), cap_(cap), cache_(basis) {}

  CoverNode solve(const CoverInstance& inst, int depth) {
    auto key = std::make_tuple(inst.points, inst.triangles, depth);
    if (auto it = memo_.find(key); it != memo_.end()) return it->second;
    CoverNode r = compute(inst, depth);
    memo_.emplace(std::move(key), r);
    return r;
  }

  const CandidateStats& stats() const { return stats_; }

 private:
  struct Quick {
    bool coverable = false;
    std::optional<DisjointCover> base;
    int bound = 0;  // exact when base is set
  };

  // Base-case answer for an instance; when it fails the optimum exceeds lambda.
  const Quick& quick(const CoverInstance& inst) {
    auto key = std::make_pair(inst.points, inst.triangles);
    if (auto it = quick_.find(key); it != quick_.end()) return it->second;
    Quick q;
    CoverSearch search(inst, basis_, cache_);
    q.coverable = search.coverable();
    if (q.coverable) {
      q.base = search.solve(budget_.lambda);
      q.bound = q.base ? q.base->size() : std::max(search.lower_bound(inst.points), budget_.lambda + 1);
    }
    return quick_.emplace(std::move(key), std::move(q)).first->second;
  }

  CoverNode compute(const CoverInstance& inst, int depth) {
    if (!has_closure(inst, basis_)) throw std::logic_error("cover instance lost the closure property");
    const Quick& q = quick(inst);
    if (!q.coverable) return {};
    if (q.base) return {q.base, 0};
    if (depth > cap_) return {};

    const int lb = q.bound;
    std::vector<Triangle2> tris;
    for (int id : inst.triangles) tris.push_back(basis_[id].tri);
    const auto& pts = samples_.points2();

    CoverNode best;
    int best_count = 0;
    std::set<std::pair<PointMask, std::vector<int>>> seen;
    for_each_cycle(triangle_cycle_space(tris), budget_.ell_max, budget_.max_candidates,
                   [&](const SeparatorCycle& curve) {
                     ++stats_.emitted;
                     const auto ring = curve.ring();
                     PointMask outside = 0;
                     for (int i = 0; i < samples_.size(); ++i) {
                       if (mask_has(inst.points, i) && locate_in_cycle(pts[i], ring) == RingLocation::Outside) {
                         outside |= PointMask{1} << i;
                       }
                     }
                     if (outside == 0 || outside == inst.points) {
                       ++stats_.empty;
                       return true;
                     }
                     CurveSplit split = split_by_curve(inst, basis_, samples_, ring);
                     if (!seen.emplace(split.inside.points, split.inside.triangles).second) {
                       ++stats_.duplicate;
                       return true;
                     }
                     const Quick& qa = quick(split.inside);
                     const Quick& qb = quick(split.outside);
                     if (!qa.coverable || !qb.coverable) {
                       ++stats_.rejected;
                       return true;
                     }
                     ++stats_.accepted;
                     if (best.cover && qa.bound + qb.bound >= best_count) {
                       ++stats_.pruned;
                       return true;
                     }
                     CoverNode a = solve(split.inside, depth + 1);
                     if (!a.cover) return true;
                     if (best.cover && a.cover->size() + qb.bound >= best_count) {
                       ++stats_.pruned;
                       return true;
                     }
                     CoverNode b = solve(split.outside, depth + 1);
                     if (!b.cover) return true;
                     DisjointCover merged{a.cover->triangle_ids};
                     auto& ids = merged.triangle_ids;
                     ids.insert(ids.end(), b.cover->triangle_ids.begin(), b.cover->triangle_ids.end());
                     std::sort(ids.begin(), ids.end());
                     ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
                     const int total = merged.size();
                     if (!best.cover || total < best_count) {
                       best.cover = std::move(merged);
                       best.level = 1 + std::max(a.level, b.level);
                       best_count = total;
                     }
                     return best_count > lb;
                   });
    return best;
  }

  const SampleSet& samples_;
  const Basis& basis_;
  SeparatorBudget budget_;
  int cap_;
  DisjointnessCache cache_;
  CandidateStats stats_;
  std::map<std::tuple<PointMask, std::vector<int>, int>, CoverNode> memo_;
  std::map<std::pair<PointMask, std::vector<int>>, Quick> quick_;
};

}  // namespace

CompcoverOutcome compcover(const CoverInstance& inst, const SampleSet& samples, const Basis& basis,
                           const CompcoverConfig& cfg) {
  CompcoverOutcome out;
  out.depth_cap = cfg.depth_cap >= 0 ? cfg.depth_cap : default_depth_cap(samples.size());
  SeparatorBudget budget = cfg.budget;
  if (cfg.derive_delta) budget.delta = Rational(1, std::max(1, out.depth_cap));
  budget.validate(false);
  out.delta = budget.delta;
  CoverRecursion rec(samples, basis, budget, out.depth_cap);
  CoverNode r = rec.solve(inst, 0);
  out.stats = rec.stats();
  out.result = std::move(r.cover);
  out.max_level = r.level;
  return out;
}

std::vector<LiftedPatch> lift_cover(const DisjointCover& cover, const Basis& basis) {
  std::vector<LiftedPatch> out;
  for (int id : cover.triangle_ids) out.push_back(LiftedPatch{basis[id].tri, basis[id].plane});
  return out;
}

Rational patch_error(const LiftedPatch& patch, const SampleSet& samples) {
  return max_vertical_error(patch.plane, samples.lifted(covered_mask(patch.base, samples)));
}

}  // namespace geopart
