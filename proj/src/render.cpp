#include "geopart/render.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <stdexcept>

namespace geopart {

namespace {

constexpr std::array<const char*, 8> kPalette = {"#8dd3c7", "#ffffb3", "#bebada", "#fb8072",
                                                 "#80b1d3", "#fdb462", "#b3de69", "#fccde5"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v == 0.0 ? 0.0 : v);
  return buf;
}

struct Frame {
  double xmin = 0, xmax = 1, ymin = 0, ymax = 1;

  void include(const Point2& p, bool& first) {
    const double x = to_double(p.x), y = to_double(p.y);
    if (first) {
      xmin = xmax = x;
      ymin = ymax = y;
      first = false;
      return;
    }
    xmin = std::min(xmin, x);
    xmax = std::max(xmax, x);
    ymin = std::min(ymin, y);
    ymax = std::max(ymax, y);
  }
  double span() const { return std::max({xmax - xmin, ymax - ymin, 1e-9}); }
  // SVG y grows downward.
  std::string at(const Point2& p) const { return num(to_double(p.x)) + "," + num(-to_double(p.y)); }
};

std::string path_of(const std::vector<Point2>& pts, const Frame& f) {
  std::string d;
  for (std::size_t i = 0; i < pts.size(); ++i) d += (i == 0 ? "M" : " L") + f.at(pts[i]);
  return d + " Z";
}

}  // namespace

std::string render_svg(const ResultDocument& doc) {
  if (!doc.planar()) throw std::invalid_argument("document holds lifted patches; render them as OBJ");
  Frame f;
  bool first = true;
  if (doc.polygon) {
    for (const auto& v : doc.polygon->vertices()) f.include(v.p, first);
  }
  for (const auto& s : doc.samples) f.include(s.projection(), first);
  for (const auto& t : doc.triangles) {
    for (const auto& p : t.vertices()) f.include(p, first);
  }
  const double pad = f.span() * 0.05;
  const double stroke = f.span() / 300;

  std::string out = "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" + num(f.xmin - pad) + " " + num(-f.ymax - pad) + " " +
         num(f.xmax - f.xmin + 2 * pad) + " " + num(f.ymax - f.ymin + 2 * pad) + "\">\n";
  const double h = f.span() / 40;
  out += "<defs><pattern id=\"hatch\" patternUnits=\"userSpaceOnUse\" width=\"" + num(h) + "\" height=\"" + num(h) +
         "\" patternTransform=\"rotate(45)\"><line x1=\"0\" y1=\"0\" x2=\"0\" y2=\"" + num(h) +
         "\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\"/></pattern></defs>\n";

  auto filled = [&](const std::vector<Point2>& pts, std::size_t index, const char* cls) {
    out += "<path class=\"" + std::string(cls) + "\" d=\"" + path_of(pts, f) + "\" fill=\"" +
           kPalette[index % kPalette.size()] + "\" stroke=\"#555555\" stroke-width=\"" + num(stroke / 2) + "\"/>\n";
  };
  if (doc.decomposition) {
    for (std::size_t i = 0; i < doc.decomposition->pieces.size(); ++i) {
      filled(ring_points(doc.decomposition->pieces[i]), i, "piece");
    }
  }
  for (std::size_t i = 0; i < doc.triangles.size(); ++i) {
    const auto& t = doc.triangles[i];
    if (t.degeneracy == Degeneracy::Full) {
      filled({t.v0, t.v1, t.v2}, i, "piece");
    } else {
      out += "<path class=\"degenerate\" d=\"M" + f.at(t.v0) + " L" + f.at(t.v1) + "\" stroke=\"" +
             kPalette[i % kPalette.size()] + "\" stroke-width=\"" + num(stroke * 2) + "\" fill=\"none\"/>\n";
    }
  }
  if (doc.polygon) {
    out += "<path class=\"boundary\" d=\"" + path_of(ring_points(doc.polygon->outer), f) +
           "\" fill=\"none\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\"/>\n";
    for (const auto& hole : doc.polygon->holes) {
      out += "<path class=\"hole\" d=\"" + path_of(ring_points(hole), f) +
             "\" fill=\"url(#hatch)\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\"/>\n";
    }
  }
  if (doc.decomposition) {
    for (const auto& d : doc.decomposition->added_diagonals) {
      out += "<path class=\"diagonal\" d=\"M" + f.at(d.geometry.a) + " L" + f.at(d.geometry.b) +
             "\" stroke=\"black\" stroke-width=\"" + num(stroke) + "\" stroke-dasharray=\"" + num(stroke * 4) + "," +
             num(stroke * 3) + "\"/>\n";
    }
  }
  for (const auto& s : doc.samples) {
    const Point2 p = s.projection();
    out += "<circle class=\"sample\" cx=\"" + num(to_double(p.x)) + "\" cy=\"" + num(-to_double(p.y)) + "\" r=\"" +
           num(stroke * 2) + "\" fill=\"black\"/>\n";
  }
  out += "</svg>\n";
  return out;
}

std::string render_obj(const ResultDocument& doc) {
  if (doc.patches.empty()) throw std::invalid_argument("document holds no lifted patches");
  std::string out = "# lifted patches: " + std::to_string(doc.patches.size()) + "\n";
  int next = 1;
  for (const auto& patch : doc.patches) {
    const auto pts = patch.base.vertices();
    for (const auto& p : pts) {
      out += "v " + num(to_double(p.x)) + " " + num(to_double(p.y)) + " " + num(to_double(patch.plane.at(p))) + "\n";
    }
    const char* kind = pts.size() == 3 ? "f" : pts.size() == 2 ? "l" : "p";
    out += kind;
    for (std::size_t k = 0; k < pts.size(); ++k) out += " " + std::to_string(next + static_cast<int>(k));
    out += "\n";
    next += static_cast<int>(pts.size());
  }
  return out;
}

}  // namespace geopart
