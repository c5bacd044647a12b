#pragma once

#include "geopart/disjoint_cover.hpp"
#include "geopart/polygon.hpp"
#include "geopart/separator.hpp"

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace geopart {

// Malformed or invalid input; the message names the offending line or field.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

// { "outer": [[x, y], ...], "holes": [[[x, y], ...], ...] } with coordinates
// given as JSON numbers, decimal strings or "p/q" strings. The result is
// validated.
PolygonWithHoles parse_polygon_json(std::string_view text);
std::string polygon_to_json(const PolygonWithHoles& poly);

// Header x,y,z then one sample per row.
std::vector<Point3> parse_samples_csv(std::string_view text);
std::string samples_to_csv(const std::vector<Point3>& samples);

struct ResultDocument {
  std::string solver;  // exact, hm, decompose, basis, cover, lift
  bool failed = false;
  std::map<std::string, std::string> config;  // echoed settings, exact values as text

  std::optional<PolygonWithHoles> polygon;
  std::optional<ConvexDecomposition> decomposition;

  std::vector<Point3> samples;
  Rational mu;
  std::vector<Triangle2> triangles;  // basis or cover triangles
  std::vector<LiftedPatch> patches;

  std::map<std::string, long> counts;
  CandidateStats stats;
  std::optional<double> timing_ms;

  bool planar() const { return polygon.has_value() || patches.empty(); }
};

std::string to_json(const ResultDocument& doc);
// Throws InputError on a malformed document.
ResultDocument parse_result_document(std::string_view text);

// Re-runs the matching checker on the stored geometry: decomposition checker
// for polygon solvers, validity for basis triangles, the disjoint-cover
// checker for covers, and the vertical error bound for lifted patches.
ValidationReport verify_document(const ResultDocument& doc);

}  // namespace geopart
