#include <doctest.h>

#include "curated.hpp"
#include "geopart/corpus.hpp"
#include "geopart/disjoint_cover.hpp"
#include "oracles.hpp"

#include <algorithm>
#include <random>

using namespace geopart;

namespace {

Point3 p3(long x, long y, long z) { return {Rational(x), Rational(y), Rational(z)}; }

std::vector<Triangle2> basis_pool(const Basis& b, const CoverInstance& inst) {
  std::vector<Triangle2> out;
  for (int id : inst.triangles) out.push_back(b[id].tri);
  return out;
}

bool contains(const std::vector<int>& ids, int id) { return std::binary_search(ids.begin(), ids.end(), id); }

const std::vector<Point2> kSquare{{0, 0}, {10, 0}, {10, 10}, {0, 10}};

}  // namespace

TEST_CASE("full instance has closure") {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 5; ++trial) {
    const SampleSet s(random_samples(rng, 4 + trial, 10, 2), Rational(trial % 2));
    const Basis b = build_basis(s);
    const auto inst = CoverInstance::full(s, b);
    CHECK(inst.points == full_mask(s.size()));
    CHECK(static_cast<int>(inst.triangles.size()) == b.size());
    CHECK(has_closure(inst, b));
    CHECK(std::is_sorted(inst.triangles.begin(), inst.triangles.end()));
  }
}

TEST_CASE("exact_disjoint_cover examples") {
  const SampleSet flat({p3(0, 0, 1), p3(4, 0, 5), p3(0, 4, 9), p3(1, 1, 4)}, Rational(0));
  const Basis fb = build_basis(flat);
  auto one = exact_disjoint_cover(CoverInstance::full(flat, fb), fb, 3);
  REQUIRE(one);
  CHECK(one->size() == 1);

  // Two planes: no single valid triangle covers both clusters.
  const SampleSet two({p3(0, 0, 0), p3(2, 0, 0), p3(0, 2, 0), p3(10, 10, 5), p3(12, 10, 7), p3(10, 12, 3)},
                      Rational(0));
  const Basis tb = build_basis(two);
  const auto inst = CoverInstance::full(two, tb);
  auto pair = exact_disjoint_cover(inst, tb, 4);
  REQUIRE(pair);
  CHECK(pair->size() == 2);
  CHECK(check_disjoint_cover(*pair, tb, two, inst.points).ok);
  CHECK(oracle::min_disjoint_cover(basis_pool(tb, inst), two.points2(), 4) == 2);
  CHECK_FALSE(exact_disjoint_cover(inst, tb, 1));
}

TEST_CASE("exact_disjoint_cover matches the exhaustive oracle") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 16; ++trial) {
    const int n = 2 + trial % 5;
    const SampleSet s(random_samples(rng, n, 10, 2), Rational(trial % 3, 2));
    const Basis b = build_basis(s);
    const auto inst = CoverInstance::full(s, b);
    const auto mine = exact_disjoint_cover(inst, b, n);
    const auto ref = oracle::min_disjoint_cover(basis_pool(b, inst), s.points2(), n);
    REQUIRE(mine.has_value() == ref.has_value());
    if (!mine) continue;
    CHECK(mine->size() == *ref);
    CHECK(check_disjoint_cover(*mine, b, s, inst.points).ok);
    if (*ref > 1) CHECK_FALSE(exact_disjoint_cover(inst, b, *ref - 1));
  }
}

TEST_CASE("check_disjoint_cover rejects overlap and missed points") {
  const SampleSet s({p3(0, 0, 0), p3(4, 0, 0), p3(0, 4, 0), p3(1, 1, 0)}, Rational(0));
  const Basis b = build_basis(s);
  const auto big = b.find(canonical_triangle(Triangle2::make({0, 0}, {4, 0}, {0, 4})));
  REQUIRE(big);
  CHECK(check_disjoint_cover(DisjointCover{{*big}}, b, s, full_mask(4)).ok);
  CHECK(check_disjoint_cover(DisjointCover{}, b, s, 0).ok);
  CHECK_FALSE(check_disjoint_cover(DisjointCover{}, b, s, 1).ok);
  for (int i = 0; i < b.size(); ++i) {
    if (i == *big || b[i].tri.degeneracy != Degeneracy::Full) continue;
    std::vector<int> ids{i, *big};
    std::sort(ids.begin(), ids.end());
    CHECK_FALSE(check_disjoint_cover(DisjointCover{ids}, b, s, full_mask(4)).ok);
    break;
  }
}

TEST_CASE("classify_against_curve") {
  CHECK(classify_against_curve(Triangle2::make({1, 1}, {5, 1}, {2, 4}), kSquare) == CurveSide::Inside);
  CHECK(classify_against_curve(Triangle2::make({0, 0}, {5, 0}, {2, 4}), kSquare) == CurveSide::Inside);
  CHECK(classify_against_curve(Triangle2::make({20, 0}, {25, 0}, {22, 4}), kSquare) == CurveSide::Outside);
  CHECK(classify_against_curve(Triangle2::make({10, 0}, {15, 0}, {12, 4}), kSquare) == CurveSide::Outside);
  CHECK(classify_against_curve(Triangle2::make({5, 5}, {15, 5}, {12, 8}), kSquare) == CurveSide::Crossed);
  CHECK(classify_against_curve(Triangle2::make({-1, -1}, {30, -1}, {-1, 30}), kSquare) == CurveSide::Crossed);
  CHECK(classify_against_curve(Triangle2::make({10, 3}, {10, 3}, {10, 3}), kSquare) == CurveSide::OnCurve);
  CHECK(classify_against_curve(Triangle2::make({2, 0}, {7, 0}, {2, 0}), kSquare) == CurveSide::OnCurve);
  CHECK(classify_against_curve(Triangle2::make({3, 3}, {3, 3}, {3, 3}), kSquare) == CurveSide::Inside);
  CHECK(classify_against_curve(Triangle2::make({5, 5}, {15, 5}, {5, 5}), kSquare) == CurveSide::Crossed);
}

TEST_CASE("split_by_curve keeps closure and partitions the points") {
  std::mt19937_64 rng(57);
  SeparatorBudget budget;
  budget.max_candidates = 150;
  for (int trial = 0; trial < 4; ++trial) {
    const SampleSet s(random_samples(rng, 5 + trial, 10, 2), Rational(1));
    const Basis b = build_basis(s);
    const auto inst = CoverInstance::full(s, b);
    std::vector<Triangle2> tris;
    for (const auto& t : b.triangles()) tris.push_back(t.tri);
    for (const auto& c : enumerate_curves(tris, budget)) {
      const auto ring = c.ring();
      const auto split = split_by_curve(inst, b, s, ring);
      CHECK((split.inside.points | split.outside.points) == inst.points);
      CHECK((split.inside.points & split.outside.points) == 0);
      for (int i = 0; i < s.size(); ++i) {
        const bool in = locate_in_cycle(s.points2()[i], ring) != RingLocation::Outside;
        CHECK(mask_has(split.inside.points, i) == in);
      }
      CHECK(has_closure(split.inside, b));
      CHECK(has_closure(split.outside, b));
      int crossed = 0;
      for (int id : inst.triangles) {
        const auto side = classify_against_curve(b[id].tri, ring);
        crossed += side == CurveSide::Crossed ? 1 : 0;
        const bool in = side == CurveSide::Inside || side == CurveSide::OnCurve;
        const bool out = side == CurveSide::Outside || side == CurveSide::OnCurve;
        CHECK(contains(split.inside.triangles, id) == in);
        CHECK(contains(split.outside.triangles, id) == out);
        for (const auto& v : b[id].tri.vertices()) {
          if (side == CurveSide::Inside) CHECK(locate_in_cycle(v, ring) != RingLocation::Outside);
          if (side == CurveSide::Outside) CHECK(locate_in_cycle(v, ring) != RingLocation::Inside);
        }
      }
      CHECK(split.crossed == crossed);
    }
  }
}

TEST_CASE("default depth cap") {
  CHECK(default_depth_cap(1) == 0);
  CHECK(default_depth_cap(2) == 3);
  CHECK(default_depth_cap(4) == 5);
  CHECK(default_depth_cap(64) == 15);
}

TEST_CASE("compcover base case, budget exhaustion and determinism") {
  std::mt19937_64 rng(59);
  for (int trial = 0; trial < 8; ++trial) {
    const SampleSet s(random_samples(rng, 3 + trial % 4, 10, 2), Rational(trial % 2));
    const Basis b = build_basis(s);
    const auto inst = CoverInstance::full(s, b);
    const auto exact = exact_disjoint_cover(inst, b, 6);
    if (!exact) continue;
    const auto out = compcover(inst, s, b, CompcoverConfig{});
    REQUIRE(out.result);
    CHECK(out.result->triangle_ids == exact->triangle_ids);
    CHECK(out.max_level == 0);
  }

  const SampleSet cols(curated::column_samples(5, 2), Rational(0));
  const Basis cb = build_basis(cols);
  const auto inst = CoverInstance::full(cols, cb);
  const int opt = exact_disjoint_cover(inst, cb, cols.size())->size();
  CompcoverConfig none;
  none.budget.lambda = opt - 1;
  none.budget.max_candidates = 0;
  CHECK(compcover(inst, cols, cb, none).failed());

  CompcoverConfig cfg;
  cfg.budget.lambda = 2;
  cfg.budget.max_candidates = 2000;
  const auto a = compcover(inst, cols, cb, cfg);
  const auto again = compcover(inst, cols, cb, cfg);
  CHECK(a.delta == Rational(1, a.depth_cap));
  REQUIRE(a.result.has_value() == again.result.has_value());
  if (a.result) {
    CHECK(check_disjoint_cover(*a.result, cb, cols, inst.points).ok);
    CHECK(a.result->size() >= opt);
    CHECK(a.result->triangle_ids == again.result->triangle_ids);
  }
}

TEST_CASE("compcover budgets are monotone") {
  const SampleSet cols(curated::column_samples(4, 2), Rational(0));
  const Basis cb = build_basis(cols);
  const auto inst = CoverInstance::full(cols, cb);
  int previous = -1;
  for (long budget : {0L, 10L, 100L, 1000L}) {
    CompcoverConfig cfg;
    cfg.budget.lambda = 2;
    cfg.budget.max_candidates = budget;
    const auto out = compcover(inst, cols, cb, cfg);
    if (!out.result) {
      CHECK(previous == -1);
      continue;
    }
    CHECK(check_disjoint_cover(*out.result, cb, cols, inst.points).ok);
    if (previous >= 0) CHECK(out.result->size() <= previous);
    previous = out.result->size();
  }
}

TEST_CASE("lift_cover") {
  const SampleSet flat({p3(0, 0, 1), p3(4, 0, 5), p3(0, 4, 9)}, Rational(0));
  const Basis fb = build_basis(flat);
  auto cover = exact_disjoint_cover(CoverInstance::full(flat, fb), fb, 1);
  REQUIRE(cover);
  const auto patches = lift_cover(*cover, fb);
  REQUIRE(patches.size() == 1);
  CHECK(patches[0].plane.t == 0);
  CHECK(patch_error(patches[0], flat) == 0);
  CHECK(lift_cover(DisjointCover{}, fb).empty());

  std::mt19937_64 rng(61);
  for (int trial = 0; trial < 10; ++trial) {
    const SampleSet s(random_samples(rng, 3 + trial % 5, 10, 3), Rational(trial % 3, 2));
    const Basis b = build_basis(s);
    const auto c = exact_disjoint_cover(CoverInstance::full(s, b), b, s.size());
    REQUIRE(c);
    const auto lifted = lift_cover(*c, b);
    CHECK(static_cast<int>(lifted.size()) == c->size());
    for (const auto& p : lifted) CHECK(patch_error(p, s) <= s.mu());
    for (const auto& q : s.points2()) {
      CHECK(std::any_of(lifted.begin(), lifted.end(),
                        [&](const LiftedPatch& p) { return oracle::closed_contains(p.base, q); }));
    }
  }
}
