#include "geopart/io.hpp"

#include <json.hpp>

#include <algorithm>
#include <fstream>
#include <sstream>

namespace geopart {

using Json = nlohmann::ordered_json;

namespace {

Rational scalar_from_json(const Json& j, const std::string& where) {
  try {
    if (j.is_string()) return parse_rational(j.get<std::string>());
    if (j.is_number_integer() || j.is_number_unsigned()) return parse_rational(j.dump());
    if (j.is_number_float()) return parse_rational(j.dump());
  } catch (const std::invalid_argument& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ": expected a number or a numeric string");
}

Point2 point_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 2) throw InputError(where + ": expected [x, y]");
  return {scalar_from_json(j[0], where + "[0]"), scalar_from_json(j[1], where + "[1]")};
}

std::vector<Point2> ring_from_json(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array of points");
  std::vector<Point2> pts;
  for (std::size_t i = 0; i < j.size(); ++i) {
    pts.push_back(point_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  }
  if (pts.size() < 3) throw InputError(where + ": a ring needs at least 3 points");
  return pts;
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object() || !j.contains(name)) throw InputError(where + ": missing field \"" + name + "\"");
  return j.at(name);
}

Json point_json(const Point2& p) { return Json::array({format_rational(p.x), format_rational(p.y)}); }

Json ring_json(const Ring& ring) {
  Json pts = Json::array();
  for (const auto& v : ring) pts.push_back(point_json(v.p));
  return pts;
}

// Rings are written in id order, which is the order make_polygon saw them, so
// reading the file back reproduces every vertex id.
Json input_ring_json(Ring ring) {
  std::sort(ring.begin(), ring.end(), [](const Vertex& a, const Vertex& b) { return a.id < b.id; });
  return ring_json(ring);
}

Json polygon_json(const PolygonWithHoles& poly) {
  Json j;
  j["outer"] = input_ring_json(poly.outer);
  j["holes"] = Json::array();
  for (const auto& h : poly.holes) j["holes"].push_back(input_ring_json(h));
  return j;
}

Json triangle_json(const Triangle2& t) {
  return Json::array({point_json(t.v0), point_json(t.v1), point_json(t.v2)});
}

Triangle2 triangle_from_json(const Json& j, const std::string& where) {
  if (!j.is_array() || j.size() != 3) throw InputError(where + ": expected three points");
  return Triangle2::make(point_from_json(j[0], where + "[0]"), point_from_json(j[1], where + "[1]"),
                         point_from_json(j[2], where + "[2]"));
}

PolygonWithHoles polygon_from_json(const Json& j, const std::string& where) {
  auto outer = ring_from_json(field(j, "outer", where), where + ".outer");
  std::vector<std::vector<Point2>> holes;
  if (j.contains("holes")) {
    const Json& hs = j.at("holes");
    if (!hs.is_array()) throw InputError(where + ".holes: expected an array of rings");
    for (std::size_t i = 0; i < hs.size(); ++i) {
      holes.push_back(ring_from_json(hs[i], where + ".holes[" + std::to_string(i) + "]"));
    }
  }
  auto poly = make_polygon(outer, holes);
  if (auto rep = validate(poly); !rep.ok) throw InputError(where + ": invalid polygon: " + rep.violation);
  return poly;
}

Json parse_json(std::string_view text, const char* what) {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw InputError(std::string(what) + ": " + e.what());
  }
}

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv(std::string_view line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    out.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

}  // namespace

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(path.string() + ": cannot open");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error(path.string() + ": cannot write");
  out << text;
}

PolygonWithHoles parse_polygon_json(std::string_view text) {
  return polygon_from_json(parse_json(text, "polygon"), "polygon");
}

std::string polygon_to_json(const PolygonWithHoles& poly) { return polygon_json(poly).dump(2) + "\n"; }

std::vector<Point3> parse_samples_csv(std::string_view text) {
  std::vector<Point3> out;
  std::istringstream in{std::string(text)};
  std::string line;
  int line_no = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto cells = split_csv(line);
    const std::string where = "line " + std::to_string(line_no);
    if (!header) {
      if (cells != std::vector<std::string>{"x", "y", "z"}) throw InputError(where + ": expected header x,y,z");
      header = true;
      continue;
    }
    if (cells.size() != 3) throw InputError(where + ": expected 3 fields, got " + std::to_string(cells.size()));
    Point3 p;
    Rational* dst[3] = {&p.x, &p.y, &p.z};
    for (int k = 0; k < 3; ++k) {
      try {
        *dst[k] = parse_rational(cells[k]);
      } catch (const std::invalid_argument& e) {
        throw InputError(where + ", field " + "xyz"[k] + ": " + e.what());
      }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
      if (out[i].x == p.x && out[i].y == p.y) {
        throw InputError(where + ": duplicate projection of sample " + std::to_string(i));
      }
    }
    out.push_back(std::move(p));
  }
  if (!header) throw InputError("samples: missing header x,y,z");
  if (out.empty()) throw InputError("samples: no rows");
  return out;
}

std::string samples_to_csv(const std::vector<Point3>& samples) {
  std::string out = "x,y,z\n";
  for (const auto& p : samples) {
    out += format_rational(p.x) + "," + format_rational(p.y) + "," + format_rational(p.z) + "\n";
  }
  return out;
}

std::string to_json(const ResultDocument& doc) {
  Json j;
  j["solver"] = doc.solver;
  j["status"] = doc.failed ? "FAIL" : "ok";
  j["config"] = Json::object();
  for (const auto& [k, v] : doc.config) j["config"][k] = v;
  if (doc.polygon) j["polygon"] = polygon_json(*doc.polygon);
  if (!doc.samples.empty()) {
    Json s = Json::array();
    for (const auto& p : doc.samples) {
      s.push_back(Json::array({format_rational(p.x), format_rational(p.y), format_rational(p.z)}));
    }
    j["samples"] = s;
    j["mu"] = format_rational(doc.mu);
  }
  if (doc.decomposition) {
    Json pieces = Json::array();
    for (const auto& piece : doc.decomposition->pieces) {
      Json pj;
      pj["ids"] = ring_ids(piece);
      pj["points"] = ring_json(piece);
      pieces.push_back(pj);
    }
    j["pieces"] = pieces;
    Json diags = Json::array();
    for (const auto& d : doc.decomposition->added_diagonals) diags.push_back(Json::array({d.u, d.v}));
    j["diagonals"] = diags;
  }
  if (!doc.triangles.empty() || doc.solver == "basis" || doc.solver == "cover") {
    Json ts = Json::array();
    for (const auto& t : doc.triangles) ts.push_back(triangle_json(t));
    j["triangles"] = ts;
  }
  if (!doc.patches.empty() || doc.solver == "lift") {
    Json ps = Json::array();
    for (const auto& p : doc.patches) {
      Json pj;
      pj["base"] = triangle_json(p.base);
      pj["plane"] = {{"a", format_rational(p.plane.a)},
                     {"b", format_rational(p.plane.b)},
                     {"c", format_rational(p.plane.c)},
                     {"t", format_rational(p.plane.t)}};
      ps.push_back(pj);
    }
    j["patches"] = ps;
  }
  j["counts"] = Json::object();
  for (const auto& [k, v] : doc.counts) j["counts"][k] = v;
  j["stats"] = {{"emitted", doc.stats.emitted},   {"accepted", doc.stats.accepted},
                {"rejected", doc.stats.rejected}, {"empty", doc.stats.empty},
                {"duplicate", doc.stats.duplicate}, {"pruned", doc.stats.pruned}};
  if (doc.timing_ms) j["timing_ms"] = *doc.timing_ms;
  return j.dump(2) + "\n";
}

ResultDocument parse_result_document(std::string_view text) {
  const Json j = parse_json(text, "document");
  const std::string root = "document";
  ResultDocument doc;
  try {
    doc.solver = field(j, "solver", root).get<std::string>();
    const auto status = field(j, "status", root).get<std::string>();
    if (status != "ok" && status != "FAIL") throw InputError(root + ".status: expected \"ok\" or \"FAIL\"");
    doc.failed = status == "FAIL";
    for (const auto& [k, v] : field(j, "config", root).items()) doc.config[k] = v.get<std::string>();
    if (j.contains("polygon")) doc.polygon = polygon_from_json(j.at("polygon"), root + ".polygon");
    if (j.contains("samples")) {
      const Json& s = j.at("samples");
      for (std::size_t i = 0; i < s.size(); ++i) {
        const std::string where = root + ".samples[" + std::to_string(i) + "]";
        if (!s[i].is_array() || s[i].size() != 3) throw InputError(where + ": expected [x, y, z]");
        doc.samples.push_back(
            {scalar_from_json(s[i][0], where), scalar_from_json(s[i][1], where), scalar_from_json(s[i][2], where)});
      }
      doc.mu = scalar_from_json(field(j, "mu", root), root + ".mu");
    }
    if (j.contains("pieces")) {
      if (!doc.polygon) throw InputError(root + ".pieces: document has no polygon");
      const PolygonView view(*doc.polygon);
      ConvexDecomposition dec;
      const Json& ps = j.at("pieces");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string where = root + ".pieces[" + std::to_string(i) + "]";
        const auto ids = field(ps[i], "ids", where).get<std::vector<int>>();
        const auto pts = ring_from_json(field(ps[i], "points", where), where + ".points");
        if (ids.size() != pts.size()) throw InputError(where + ": ids and points differ in length");
        Ring ring;
        for (std::size_t k = 0; k < ids.size(); ++k) ring.push_back({ids[k], pts[k]});
        dec.pieces.push_back(std::move(ring));
      }
      const Json& ds = field(j, "diagonals", root);
      for (std::size_t i = 0; i < ds.size(); ++i) {
        const std::string where = root + ".diagonals[" + std::to_string(i) + "]";
        const auto uv = ds[i].get<std::vector<int>>();
        if (uv.size() != 2) throw InputError(where + ": expected [u, v]");
        const int a = view.index_of(uv[0]), b = view.index_of(uv[1]);
        if (a < 0 || b < 0) throw InputError(where + ": unknown vertex id");
        dec.added_diagonals.push_back(make_diagonal(view, a, b));
      }
      doc.decomposition = std::move(dec);
    }
    if (j.contains("triangles")) {
      const Json& ts = j.at("triangles");
      for (std::size_t i = 0; i < ts.size(); ++i) {
        doc.triangles.push_back(triangle_from_json(ts[i], root + ".triangles[" + std::to_string(i) + "]"));
      }
    }
    if (j.contains("patches")) {
      const Json& ps = j.at("patches");
      for (std::size_t i = 0; i < ps.size(); ++i) {
        const std::string where = root + ".patches[" + std::to_string(i) + "]";
        LiftedPatch patch;
        patch.base = triangle_from_json(field(ps[i], "base", where), where + ".base");
        const Json& pl = field(ps[i], "plane", where);
        patch.plane.a = scalar_from_json(field(pl, "a", where), where + ".plane.a");
        patch.plane.b = scalar_from_json(field(pl, "b", where), where + ".plane.b");
        patch.plane.c = scalar_from_json(field(pl, "c", where), where + ".plane.c");
        patch.plane.t = scalar_from_json(field(pl, "t", where), where + ".plane.t");
        doc.patches.push_back(std::move(patch));
      }
    }
    if (j.contains("counts")) {
      for (const auto& [k, v] : j.at("counts").items()) doc.counts[k] = v.get<long>();
    }
    if (j.contains("stats")) {
      const Json& s = j.at("stats");
      doc.stats.emitted = s.value("emitted", 0L);
      doc.stats.accepted = s.value("accepted", 0L);
      doc.stats.rejected = s.value("rejected", 0L);
      doc.stats.empty = s.value("empty", 0L);
      doc.stats.duplicate = s.value("duplicate", 0L);
      doc.stats.pruned = s.value("pruned", 0L);
    }
    if (j.contains("timing_ms")) doc.timing_ms = j.at("timing_ms").get<double>();
  } catch (const Json::exception& e) {
    throw InputError(root + ": " + e.what());
  } catch (const std::invalid_argument& e) {
    throw InputError(root + ": " + e.what());
  }
  return doc;
}

namespace {

ValidationReport verify_planar_cover(const std::vector<Triangle2>& tris, const SampleSet& samples,
                                     bool need_disjoint) {
  for (std::size_t i = 0; i < tris.size(); ++i) {
    if (!is_valid_triangle(tris[i], samples)) {
      return ValidationReport::fail("triangle exceeds the vertical error bound", {static_cast<int>(i)});
    }
  }
  if (!need_disjoint) return ValidationReport::pass();
  for (std::size_t i = 0; i < tris.size(); ++i) {
    for (std::size_t k = i + 1; k < tris.size(); ++k) {
      if (!interiors_disjoint(tris[i], tris[k])) {
        return ValidationReport::fail("triangles overlap", {static_cast<int>(i), static_cast<int>(k)});
      }
    }
  }
  PointMask covered = 0;
  for (const auto& t : tris) covered |= covered_mask(t, samples);
  const PointMask all = full_mask(samples.size());
  if (covered != all) {
    std::vector<int> missing;
    for (int i = 0; i < samples.size(); ++i) {
      if (!mask_has(covered, i)) missing.push_back(i);
    }
    return ValidationReport::fail("sample not covered", missing);
  }
  return ValidationReport::pass();
}

}  // namespace

ValidationReport verify_document(const ResultDocument& doc) {
  if (doc.failed) return ValidationReport::pass();
  if (doc.solver == "exact" || doc.solver == "hm" || doc.solver == "decompose") {
    if (!doc.polygon || !doc.decomposition) return ValidationReport::fail("document lacks polygon or pieces");
    return check_decomposition(*doc.polygon, *doc.decomposition);
  }
  if (doc.solver == "basis" || doc.solver == "cover" || doc.solver == "lift") {
    if (doc.samples.empty()) return ValidationReport::fail("document lacks samples");
    const SampleSet samples(doc.samples, doc.mu);
    if (doc.solver != "lift") return verify_planar_cover(doc.triangles, samples, doc.solver == "cover");
    std::vector<Triangle2> bases;
    for (std::size_t i = 0; i < doc.patches.size(); ++i) {
      const auto& patch = doc.patches[i];
      if (patch_error(patch, samples) > doc.mu) {
        return ValidationReport::fail("patch exceeds the vertical error bound", {static_cast<int>(i)});
      }
      bases.push_back(patch.base);
    }
    return verify_planar_cover(bases, samples, true);
  }
  return ValidationReport::fail("unknown solver \"" + doc.solver + "\"");
}

}  // namespace geopart
