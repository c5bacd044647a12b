#include <doctest.h>

#include "geopart/geometry.hpp"

#include <algorithm>
#include <random>
#include <stdexcept>
#include <vector>

using namespace geopart;

namespace {

Rational random_rational(std::mt19937_64& rng) {
  std::uniform_int_distribution<long> num(-40, 40);
  std::uniform_int_distribution<long> den(1, 7);
  Rational r(num(rng), den(rng));
  r.canonicalize();
  return r;
}

Point2 random_point(std::mt19937_64& rng) { return {random_rational(rng), random_rational(rng)}; }

}  // namespace

TEST_CASE("rational parsing and formatting") {
  CHECK(parse_rational("-3") == Rational(-3));
  CHECK(parse_rational("7/4") == Rational(7, 4));
  CHECK(parse_rational("1.25") == Rational(5, 4));
  CHECK(parse_rational("-0.5") == Rational(-1, 2));
  CHECK(parse_rational("2.5e-3") == Rational(1, 400));
  CHECK(parse_rational("6/4") == Rational(3, 2));
  CHECK(parse_rational("0.25") == Rational(1, 4));
  CHECK(parse_rational("010") == Rational(10));
  CHECK(parse_rational("07/010") == Rational(7, 10));
  CHECK(parse_rational("0.0625") == Rational(1, 16));
  CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_rational(""), std::invalid_argument);
  CHECK(format_rational(Rational(3)) == "3");
  CHECK(format_rational(parse_rational("-6/4")) == "-3/2");

  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Rational r = random_rational(rng);
    CHECK(parse_rational(format_rational(r)) == r);
  }
  // Zero-padded decimal text of k / 10^4.
  for (long k = 0; k < 10000; k += 37) {
    std::string frac = std::to_string(k);
    frac.insert(0, 4 - frac.size(), '0');
    Rational expected(k, 10000);
    expected.canonicalize();
    CHECK(parse_rational("0." + frac) == expected);
  }
}

TEST_CASE("orientation") {
  CHECK(orientation({0, 0}, {1, 0}, {0, 1}) == Orientation::CCW);
  CHECK(orientation({0, 0}, {1, 1}, {2, 2}) == Orientation::Collinear);
  CHECK(orientation({0, 0}, {0, 1}, {1, 0}) == Orientation::CW);
}

TEST_CASE("orientation is antisymmetric under swaps") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 500; ++i) {
    Point2 p = random_point(rng), q = random_point(rng), r = random_point(rng);
    const int o = orient(p, q, r);
    CHECK(orient(q, p, r) == -o);
    CHECK(orient(p, r, q) == -o);
    CHECK(orient(r, q, p) == -o);
    CHECK(orient(q, r, p) == o);
  }
}

TEST_CASE("segments_intersect") {
  CHECK(segments_intersect({{0, 0}, {2, 2}}, {{0, 2}, {2, 0}}).relation == SegmentRelation::ProperCross);
  CHECK(segments_intersect({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}).relation == SegmentRelation::Touch);
  CHECK(segments_intersect({{0, 0}, {1, 0}}, {{0, 1}, {1, 1}}).relation == SegmentRelation::Disjoint);

  auto overlap = segments_intersect({{0, 0}, {2, 0}}, {{1, 0}, {3, 0}});
  CHECK(overlap.relation == SegmentRelation::Touch);
  CHECK(overlap.overlap);
  CHECK_FALSE(segments_intersect({{0, 0}, {1, 0}}, {{1, 0}, {2, 0}}).overlap);
  CHECK(segments_intersect({{0, 0}, {2, 0}}, {{1, 0}, {1, 5}}).relation == SegmentRelation::Touch);
  CHECK_THROWS_AS(segments_intersect({{0, 0}, {0, 0}}, {{0, 1}, {1, 1}}), std::invalid_argument);
}

TEST_CASE("segments_intersect is symmetric and scale invariant") {
  std::mt19937_64 rng(13);
  std::uniform_int_distribution<long> small(-3, 3);
  for (int i = 0; i < 1000; ++i) {
    Point2 a(small(rng), small(rng)), b(small(rng), small(rng));
    Point2 c(small(rng), small(rng)), d(small(rng), small(rng));
    if (a == b || c == d) continue;
    auto r1 = segments_intersect({a, b}, {c, d});
    auto r2 = segments_intersect({c, d}, {a, b});
    auto r3 = segments_intersect({b, a}, {d, c});
    CHECK(r1.relation == r2.relation);
    CHECK(r1.overlap == r2.overlap);
    CHECK(r1.relation == r3.relation);
    const Rational s(7, 3);
    auto r4 = segments_intersect({scale(a, s), scale(b, s)}, {scale(c, s), scale(d, s)});
    CHECK(r1.relation == r4.relation);
    CHECK(orient(a, b, c) == orient(scale(a, s), scale(b, s), scale(c, s)));
  }
}

TEST_CASE("convex_hull") {
  std::vector<Point2> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}, {1, 1}};
  CHECK(convex_hull(sq) == std::vector<Point2>{{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  CHECK(convex_hull({{0, 0}, {1, 1}, {2, 2}}) == std::vector<Point2>{{0, 0}, {2, 2}});
  CHECK(convex_hull({{0, 0}}) == std::vector<Point2>{{0, 0}});
  CHECK(convex_hull({{1, 0}, {0, 0}, {2, 0}, {1, 0}}) == std::vector<Point2>{{0, 0}, {2, 0}});
  CHECK_THROWS_AS(convex_hull({}), std::invalid_argument);
}

TEST_CASE("convex_hull is permutation invariant and contains its input") {
  std::mt19937_64 rng(17);
  std::uniform_int_distribution<long> coord(-5, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<Point2> pts;
    const int n = 1 + trial % 12;
    for (int i = 0; i < n; ++i) pts.emplace_back(coord(rng), coord(rng));
    const auto hull = convex_hull(pts);
    std::shuffle(pts.begin(), pts.end(), rng);
    CHECK(convex_hull(pts) == hull);
    if (hull.size() >= 3) {
      for (std::size_t i = 0; i < hull.size(); ++i) {
        CHECK(orient(hull[i], hull[(i + 1) % hull.size()], hull[(i + 2) % hull.size()]) > 0);
      }
      for (const auto& p : pts) {
        for (std::size_t i = 0; i < hull.size(); ++i) {
          CHECK(orient(hull[i], hull[(i + 1) % hull.size()], p) >= 0);
        }
      }
    } else if (hull.size() == 2) {
      for (const auto& p : pts) CHECK(on_segment(p, hull[0], hull[1]));
    } else {
      for (const auto& p : pts) CHECK(p == hull[0]);
    }
  }
}

TEST_CASE("is_convex") {
  CHECK(is_convex(std::vector<Point2>{{0, 0}, {1, 0}, {1, 1}, {0, 1}}));
  CHECK_FALSE(is_convex(std::vector<Point2>{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}));
  CHECK(is_convex(std::vector<Point2>{{0, 0}, {1, 0}, {2, 0}, {0, 2}}));
  CHECK_THROWS_AS(is_convex(std::vector<Point2>{{0, 0}, {1, 1}, {1, 0}, {0, 1}}), std::invalid_argument);
}

TEST_CASE("ring predicates") {
  const std::vector<Point2> sq{{0, 0}, {2, 0}, {2, 2}, {0, 2}};
  CHECK(signed_area2(sq) == 8);
  CHECK(ring_is_simple(sq));
  CHECK_FALSE(ring_is_simple(std::vector<Point2>{{0, 0}, {1, 1}, {1, 0}, {0, 1}}));
  CHECK(locate_in_ring({1, 1}, sq) == RingLocation::Inside);
  CHECK(locate_in_ring({2, 1}, sq) == RingLocation::OnBoundary);
  CHECK(locate_in_ring({0, 0}, sq) == RingLocation::OnBoundary);
  CHECK(locate_in_ring({3, 1}, sq) == RingLocation::Outside);
}

TEST_CASE("triangles") {
  auto t = Triangle2::make({0, 0}, {0, 2}, {2, 0});
  CHECK(t.degeneracy == Degeneracy::Full);
  CHECK(orient(t.v0, t.v1, t.v2) > 0);
  CHECK(t.area2() == 4);
  CHECK(t.contains({1, 1}));
  CHECK_FALSE(t.contains_interior({1, 1}));
  CHECK(t.contains_interior({Rational(1, 2), Rational(1, 2)}));

  auto s = Triangle2::make({2, 2}, {0, 0}, {1, 1});
  CHECK(s.degeneracy == Degeneracy::Segment);
  CHECK(s.v0 == Point2(0, 0));
  CHECK(s.v1 == Point2(2, 2));
  CHECK(s.v2 == s.v1);
  CHECK(s.contains({1, 1}));
  CHECK_FALSE(s.contains_interior({1, 1}));

  auto p = Triangle2::make({1, 1}, {1, 1}, {1, 1});
  CHECK(p.degeneracy == Degeneracy::Point);
  CHECK(p.vertices().size() == 1);

  auto u = Triangle2::make({2, 0}, {0, 2}, {2, 2});
  CHECK(interiors_disjoint(t, u));
  CHECK(interiors_disjoint(t, s));
  CHECK_FALSE(interiors_disjoint(t, Triangle2::make({0, 0}, {1, 0}, {0, 1})));
  CHECK(triangle_contains(t, Triangle2::make({0, 0}, {1, 0}, {0, 1})));
  CHECK_FALSE(triangle_contains(Triangle2::make({0, 0}, {1, 0}, {0, 1}), t));
  CHECK(segment_meets_open_triangle({-1, 1}, {3, 1}, Triangle2::make({0, 0}, {4, 0}, {0, 4})));
  CHECK_FALSE(segment_meets_open_triangle({0, 0}, {0, 4}, Triangle2::make({0, 0}, {4, 0}, {0, 4})));
}

TEST_CASE("interiors_disjoint agrees with sampled interior points") {
  std::mt19937_64 rng(19);
  std::uniform_int_distribution<long> coord(0, 4);
  for (int trial = 0; trial < 300; ++trial) {
    auto a = Triangle2::make({coord(rng), coord(rng)}, {coord(rng), coord(rng)}, {coord(rng), coord(rng)});
    auto b = Triangle2::make({coord(rng), coord(rng)}, {coord(rng), coord(rng)}, {coord(rng), coord(rng)});
    CHECK(interiors_disjoint(a, b) == interiors_disjoint(b, a));
    if (a.degeneracy != Degeneracy::Full || b.degeneracy != Degeneracy::Full) {
      CHECK(interiors_disjoint(a, b));
      continue;
    }
    bool shared = false;
    for (int i = 1; i < 24 && !shared; ++i) {
      for (int j = 1; i + j < 24 && !shared; ++j) {
        Point2 q = add(a.v0, add(scale(sub(a.v1, a.v0), Rational(i, 24)), scale(sub(a.v2, a.v0), Rational(j, 24))));
        shared = b.contains_interior(q);
      }
    }
    if (shared) CHECK_FALSE(interiors_disjoint(a, b));
  }
}
