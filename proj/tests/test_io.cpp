#include <doctest.h>

#include "geopart/convex_decomp.hpp"
#include "geopart/corpus.hpp"
#include "geopart/io.hpp"
#include "geopart/render.hpp"

#include <random>

using namespace geopart;

namespace {

template <typename F>
std::string input_error(F&& f) {
  try {
    f();
  } catch (const InputError& e) {
    return e.what();
  }
  return "";
}

int count_of(const std::string& text, const std::string& needle) {
  int n = 0;
  for (auto at = text.find(needle); at != std::string::npos; at = text.find(needle, at + 1)) ++n;
  return n;
}

PolygonWithHoles annulus() {
  return make_polygon({{0, 0}, {6, 0}, {6, 6}, {0, 6}}, {{{2, 2}, {4, 2}, {4, 4}, {2, 4}}});
}

ResultDocument polygon_doc(const PolygonWithHoles& p, const ConvexDecomposition& d) {
  ResultDocument doc;
  doc.solver = "exact";
  doc.polygon = p;
  doc.decomposition = d;
  doc.counts["pieces"] = static_cast<long>(d.pieces.size());
  return doc;
}

}  // namespace

TEST_CASE("parse_polygon_json") {
  auto p = parse_polygon_json(R"({"outer": [["0","0"],["2","0"],["2","1"],["1","1"],["1","2"],["0","2"]]})");
  CHECK(p.vertex_count() == 6);
  CHECK(p.holes.empty());

  auto q = parse_polygon_json(R"({"outer": [[0, 0], ["1/2", 0], ["0.25", "3/4"]], "holes": []})");
  CHECK(q.outer[1].p == Point2(Rational(1, 2), 0));
  CHECK(q.outer[2].p == Point2(Rational(1, 4), Rational(3, 4)));

  CHECK(input_error([] { parse_polygon_json("{"); }) != "");
  CHECK(input_error([] { parse_polygon_json(R"({"holes": []})"); }).find("outer") != std::string::npos);
  CHECK(input_error([] { parse_polygon_json(R"({"outer": [[0,0],[1,0],["x",1]]})"); }).find("outer[2]") !=
        std::string::npos);
  CHECK(input_error([] { parse_polygon_json(R"({"outer": [[0,0],[1,0]]})"); }).find("at least 3") !=
        std::string::npos);
  CHECK(input_error([] { parse_polygon_json(R"({"outer": [[0,0],[2,2],[2,0],[0,2]]})"); })
            .find("outer ring not simple") != std::string::npos);
  CHECK(input_error([] {
          parse_polygon_json(R"({"outer": [[0,0],[4,0],[4,4],[0,4]], "holes": [[[1,1],[2,1],[2,2]], [[3,3],[3]]]})");
        }).find("holes[1]") != std::string::npos);
}

TEST_CASE("polygon json round trip") {
  const auto corpus = generate_corpus(71, 20, CorpusOptions{12, 2, 20});
  for (auto poly : corpus) {
    poly = apply_shear(poly, Rational(1, 7));
    const auto text = polygon_to_json(poly);
    const auto back = parse_polygon_json(text);
    CHECK(canonical_key(back) == canonical_key(poly));
    CHECK(polygon_to_json(back) == text);
  }
}

TEST_CASE("parse_samples_csv") {
  auto s = parse_samples_csv("x,y,z\n0,0,1\n1,0,3\n\n0,1,1/2\n");
  REQUIRE(s.size() == 3);
  CHECK(s[2].z == Rational(1, 2));

  CHECK(input_error([] { parse_samples_csv("a,b,c\n1,2,3\n"); }).find("line 1") != std::string::npos);
  CHECK(input_error([] { parse_samples_csv("x,y,z\n1,2\n"); }).find("line 2") != std::string::npos);
  CHECK(input_error([] { parse_samples_csv("x,y,z\n1,2,3\n4,5,q\n"); }).find("line 3, field z") !=
        std::string::npos);
  CHECK(input_error([] { parse_samples_csv("x,y,z\n1,2,3\n1,2,4\n"); }).find("duplicate") != std::string::npos);
  CHECK(input_error([] { parse_samples_csv("x,y,z\n"); }) != "");
  CHECK(input_error([] { parse_samples_csv(""); }) != "");

  std::mt19937_64 rng(73);
  for (int trial = 0; trial < 10; ++trial) {
    auto pts = random_samples(rng, 12, 20, 5);
    for (auto& p : pts) p.z /= 7;
    const auto back = parse_samples_csv(samples_to_csv(pts));
    REQUIRE(back.size() == pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i) CHECK(back[i] == pts[i]);
  }
}

TEST_CASE("result documents round trip and verify") {
  const auto corpus = generate_corpus(79, 10, CorpusOptions{12, 2, 20});
  for (const auto& poly : corpus) {
    auto doc = polygon_doc(poly, hertel_mehlhorn(poly));
    doc.solver = "hm";
    doc.config["epsilon"] = "1/2";
    doc.timing_ms = 1.5;
    const auto text = to_json(doc);
    const auto back = parse_result_document(text);
    CHECK(back.solver == "hm");
    CHECK(back.config == doc.config);
    REQUIRE(back.decomposition);
    CHECK(back.decomposition->pieces.size() == doc.decomposition->pieces.size());
    CHECK(to_json(back) == text);
    CHECK(verify_document(back).ok);
  }

  const SampleSet s(random_samples(*std::make_unique<std::mt19937_64>(83), 6, 10, 2), Rational(1));
  const Basis b = build_basis(s);
  const auto inst = CoverInstance::full(s, b);
  const auto cover = exact_disjoint_cover(inst, b, 6);
  REQUIRE(cover);
  ResultDocument cdoc;
  cdoc.solver = "cover";
  cdoc.samples = s.points3();
  cdoc.mu = s.mu();
  for (int id : cover->triangle_ids) cdoc.triangles.push_back(b[id].tri);
  CHECK(verify_document(parse_result_document(to_json(cdoc))).ok);

  ResultDocument ldoc = cdoc;
  ldoc.solver = "lift";
  ldoc.patches = lift_cover(*cover, b);
  const auto lback = parse_result_document(to_json(ldoc));
  CHECK(lback.patches.size() == ldoc.patches.size());
  CHECK(verify_document(lback).ok);
  ldoc.patches[0].plane.c += 5;
  CHECK_FALSE(verify_document(ldoc).ok);

  CHECK(input_error([] { parse_result_document(R"({"solver": "hm", "status": "maybe"})"); }).find("status") !=
        std::string::npos);
}

TEST_CASE("verify rejects a tampered decomposition") {
  const auto l = make_polygon({{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}});
  auto doc = polygon_doc(l, *exact_decompose(l, 4));
  CHECK(verify_document(doc).ok);
  doc.decomposition = decomposition_from_diagonals(l, {});
  const auto rep = verify_document(doc);
  CHECK_FALSE(rep.ok);
  CHECK_FALSE(rep.violation.empty());
}

TEST_CASE("render_svg") {
  const auto square = make_polygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}});
  const auto one = render_svg(polygon_doc(square, *exact_decompose(square, 1)));
  CHECK(count_of(one, "class=\"piece\"") == 1);
  CHECK(count_of(one, "class=\"hole\"") == 0);

  const auto a = annulus();
  const auto doc = polygon_doc(a, *exact_decompose(a, 4));
  const auto svg = render_svg(doc);
  CHECK(count_of(svg, "class=\"piece\"") == 4);
  CHECK(count_of(svg, "class=\"hole\"") == 1);
  CHECK(count_of(svg, "url(#hatch)") == 1);
  CHECK(count_of(svg, "class=\"diagonal\"") == static_cast<int>(doc.decomposition->added_diagonals.size()));
  CHECK(count_of(svg, "stroke-dasharray") == static_cast<int>(doc.decomposition->added_diagonals.size()));
  CHECK(render_svg(parse_result_document(to_json(doc))) == svg);

  ResultDocument lifted;
  lifted.solver = "lift";
  lifted.patches.push_back(LiftedPatch{Triangle2::make({0, 0}, {1, 0}, {0, 1}), PlaneFit{1, 0, 0, 0}});
  CHECK_THROWS_AS(render_svg(lifted), std::invalid_argument);
  const auto obj = render_obj(lifted);
  CHECK(count_of(obj, "\nv ") == 3);
  CHECK(count_of(obj, "\nf 1 2 3") == 1);
  CHECK_THROWS_AS(render_obj(doc), std::invalid_argument);
}
