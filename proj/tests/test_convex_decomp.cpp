#include <doctest.h>

#include "curated.hpp"
#include "geopart/convex_decomp.hpp"
#include "geopart/corpus.hpp"
#include "oracles.hpp"

#include <cmath>
#include <set>

using namespace geopart;

namespace {

PolygonWithHoles lshape() { return make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}}); }

PolygonWithHoles square_with_hole() {
  return make_polygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}}, {{{1, 1}, {2, 1}, {2, 2}, {1, 2}}});
}

std::vector<std::vector<int>> piece_ids(const ConvexDecomposition& d) {
  std::vector<std::vector<int>> out;
  for (const auto& p : d.pieces) out.push_back(canonical_ring_ids(p));
  return out;
}

std::vector<std::pair<int, int>> diagonal_ids(const ConvexDecomposition& d) {
  std::vector<std::pair<int, int>> out;
  for (const auto& x : d.added_diagonals) out.emplace_back(x.u, x.v);
  return out;
}

int oracle_optimum(const PolygonWithHoles& poly) {
  const int hm = static_cast<int>(hertel_mehlhorn(poly).pieces.size());
  return oracle::min_convex_pieces(poly, hm < 3 ? 1 : 3 * hm - 6).pieces;
}

}  // namespace

TEST_CASE("exact_decompose examples") {
  auto convex = exact_decompose(make_polygon({{0, 0}, {3, 0}, {4, 2}, {1, 3}}), 1);
  REQUIRE(convex);
  CHECK(convex->pieces.size() == 1);
  CHECK(convex->added_diagonals.empty());

  auto l = exact_decompose(lshape(), 2);
  REQUIRE(l);
  CHECK(l->pieces.size() == 2);
  CHECK(check_decomposition(lshape(), *l).ok);
  CHECK_FALSE(exact_decompose(lshape(), 1));

  const auto sq = square_with_hole();
  auto four = exact_decompose(sq, 4);
  REQUIRE(four);
  CHECK(four->pieces.size() == 4);
  CHECK(check_decomposition(sq, *four).ok);
  CHECK_FALSE(exact_decompose(sq, 3));
  CHECK(oracle::min_convex_pieces(sq, 6).pieces == 4);

  CHECK_THROWS_AS(exact_decompose(sq, 0), std::invalid_argument);
}

TEST_CASE("exact_decompose matches the brute-force oracle") {
  const auto corpus = generate_corpus(101, 30, CorpusOptions{10, 2, 15});
  for (const auto& poly : corpus) {
    auto best = exact_decompose(poly, 3 * poly.vertex_count());
    REQUIRE(best);
    const int k = static_cast<int>(best->pieces.size());
    CHECK(check_decomposition(poly, *best).ok);
    CHECK(k == oracle_optimum(poly));
    if (k > 1) CHECK_FALSE(exact_decompose(poly, k - 1));
    CHECK(piece_lower_bound(poly) <= k);
  }
}

TEST_CASE("hertel_mehlhorn") {
  auto convex = hertel_mehlhorn(make_polygon({{0, 0}, {3, 0}, {5, 2}, {4, 4}, {1, 3}}));
  CHECK(convex.pieces.size() == 1);
  auto l = hertel_mehlhorn(lshape());
  CHECK(l.pieces.size() == 2);
  CHECK(check_decomposition(lshape(), l).ok);
}

TEST_CASE("hertel_mehlhorn reaches a fixpoint and stays within four times the optimum") {
  const auto corpus = generate_corpus(103, 30, CorpusOptions{11, 2, 15});
  for (const auto& poly : corpus) {
    const auto hm = hertel_mehlhorn(poly);
    CHECK(check_decomposition(poly, hm).ok);
    CHECK(static_cast<int>(hm.pieces.size()) <= 4 * oracle_optimum(poly));
    // Dropping any kept diagonal leaves a non-convex face.
    for (std::size_t i = 0; i < hm.added_diagonals.size(); ++i) {
      auto fewer = hm.added_diagonals;
      fewer.erase(fewer.begin() + static_cast<std::ptrdiff_t>(i));
      bool some_reflex = false;
      for (const auto& f : partition_by_diagonals(poly, fewer)) {
        const auto pts = ring_points(f.outer);
        some_reflex = some_reflex || !f.holes.empty() || !ring_is_simple(pts) || !is_convex(pts);
      }
      CHECK(some_reflex);
    }
  }
}

TEST_CASE("alpha cap and derived delta") {
  CHECK(default_alpha_cap(3) == 4);
  CHECK(default_alpha_cap(4) == 7);
  CHECK(default_alpha_cap(14) == 13);

  const auto l = lshape();
  DecomposeConfig cfg;
  auto out = decompose(l, cfg);
  CHECK(out.alpha_cap == default_alpha_cap(6));
  CHECK(out.delta == cfg.epsilon / (2 * out.alpha_cap));
  CHECK(out.delta < Rational(1, 12));

  cfg.epsilon = 2;
  cfg.alpha_cap = 7;
  out = decompose(l, cfg);
  CHECK(out.delta == Rational(1, 13));
  CHECK(out.epsilon == Rational(14, 13));

  cfg.epsilon = 0;
  CHECK_THROWS_AS(decompose(l, cfg), std::invalid_argument);
}

TEST_CASE("general position shear") {
  const auto poly = make_polygon({{0, 0}, {4, 0}, {4, 4}, {0, 4}}, {{{1, 1}, {2, 1}, {1, 3}}});
  const Rational s = general_position_shear(poly);
  CHECK(s > 0);
  const auto sheared = apply_shear(poly, s);
  CHECK(validate(sheared).ok);
  PolygonView a(poly), b(sheared);
  std::set<Rational> xs;
  for (int i = 0; i < b.size(); ++i) xs.insert(b.point(i).x);
  CHECK(static_cast<int>(xs.size()) == b.size());
  for (int i = 0; i < a.size(); ++i) {
    for (int j = 0; j < a.size(); ++j) {
      if (i != j) CHECK(lex_less(a.point(i), a.point(j)) == (b.point(i).x < b.point(j).x));
    }
  }
  CHECK(general_position_shear(make_polygon({{0, 0}, {3, 1}, {1, 2}})) == 0);
}

TEST_CASE("decompose base case and budget exhaustion") {
  const auto corpus = generate_corpus(107, 12, CorpusOptions{10, 1, 15});
  for (const auto& poly : corpus) {
    auto exact = exact_decompose(poly, 6);
    if (!exact) continue;
    auto out = decompose(poly, DecomposeConfig{});
    REQUIRE(out.result);
    CHECK(piece_ids(*out.result) == piece_ids(*exact));
    CHECK(diagonal_ids(*out.result) == diagonal_ids(*exact));
    CHECK(out.max_level == 0);
  }

  const auto strip = curated::sawtooth_strip(6);
  DecomposeConfig none;
  none.budget.max_candidates = 0;
  CHECK(decompose(strip, none).failed());
  DecomposeConfig shallow;
  shallow.alpha_cap = 0;
  shallow.budget.max_candidates = 50;
  auto capped = decompose(strip, shallow);
  if (capped.result) CHECK(capped.max_level <= 1);
}

TEST_CASE("decompose on a two-hole polygon with eight pieces") {
  const auto poly = generate_corpus(20240611, 1, CorpusOptions{})[0];
  REQUIRE(poly.holes.size() == 2);
  auto exact = exact_decompose(poly, 12);
  REQUIRE(exact);
  const int k = static_cast<int>(exact->pieces.size());
  REQUIRE(k == 8);

  DecomposeConfig cfg;
  auto out = decompose(poly, cfg);
  REQUIRE(out.result);
  CHECK(check_decomposition(poly, *out.result).ok);
  const double bound = std::ceil(std::pow(1.0 + to_double(out.delta), out.max_level) * k - 1e-12);
  CHECK(static_cast<double>(out.result->pieces.size()) <= bound);
  CHECK(static_cast<int>(out.result->pieces.size()) >= k);

  auto again = decompose(poly, cfg);
  REQUIRE(again.result);
  CHECK(piece_ids(*again.result) == piece_ids(*out.result));
  CHECK(diagonal_ids(*again.result) == diagonal_ids(*out.result));
}

TEST_CASE("larger budgets never give more pieces") {
  const auto corpus = generate_corpus(109, 40, CorpusOptions{12, 2, 20});
  int above = 0;
  for (const auto& poly : corpus) {
    if (exact_decompose(poly, 6)) continue;
    ++above;
    int previous = -1;
    for (long budget : {0L, 5L, 20L, 60L}) {
      DecomposeConfig cfg;
      cfg.budget.max_candidates = budget;
      auto out = decompose(poly, cfg);
      if (!out.result) {
        CHECK(previous == -1);
        continue;
      }
      CHECK(check_decomposition(poly, *out.result).ok);
      const int pieces = static_cast<int>(out.result->pieces.size());
      if (previous >= 0) CHECK(pieces <= previous);
      previous = pieces;
    }
  }
  CHECK(above > 0);
}
