#include "geopart/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>
#include <utility>

namespace geopart {

namespace {

int uniform(std::mt19937_64& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

std::vector<Point2> random_outer(std::mt19937_64& rng, int k, int radius) {
  std::uniform_real_distribution<double> angle(0.0, 2 * std::numbers::pi);
  std::uniform_real_distribution<double> shrink(0.35, 1.0);
  for (;;) {
    std::vector<double> angles(k);
    for (auto& a : angles) a = angle(rng);
    std::sort(angles.begin(), angles.end());
    std::vector<Point2> pts;
    std::set<std::pair<long, long>> seen;
    for (double a : angles) {
      // Roughly half the vertices are pulled inward to create reflex corners.
      const double r = radius * (uniform(rng, 0, 1) == 0 ? 1.0 : shrink(rng));
      const long x = std::lround(r * std::cos(a)), y = std::lround(r * std::sin(a));
      if (seen.emplace(x, y).second) pts.emplace_back(x, y);
    }
    if (static_cast<int>(pts.size()) != k) continue;
    if (ring_is_simple(pts) && sign(signed_area2(pts)) != 0) return pts;
  }
}

}  // namespace

PolygonWithHoles random_polygon(std::mt19937_64& rng, const CorpusOptions& opts) {
  if (opts.max_vertices < 3 || opts.max_holes < 0 || opts.radius < 4) {
    throw std::invalid_argument("corpus options out of range");
  }
  const int holes = uniform(rng, 0, std::min(opts.max_holes, (opts.max_vertices - 3) / 3));
  const int k = uniform(rng, 3, opts.max_vertices - 3 * holes);
  for (;;) {
    const auto outer = random_outer(rng, k, opts.radius);
    std::vector<std::vector<Point2>> placed;
    for (int attempt = 0; attempt < 200 && static_cast<int>(placed.size()) < holes; ++attempt) {
      const int size = uniform(rng, 1, std::max(1, opts.radius / 5));
      const long cx = uniform(rng, -opts.radius, opts.radius), cy = uniform(rng, -opts.radius, opts.radius);
      std::vector<Point2> tri = {Point2(cx + uniform(rng, -size, size), cy - size),
                                 Point2(cx + size, cy + uniform(rng, -size, size)),
                                 Point2(cx - size, cy + size)};
      if (sign(signed_area2(tri)) == 0) continue;
      auto trial = placed;
      trial.push_back(tri);
      if (validate(make_polygon(outer, trial)).ok) placed = std::move(trial);
    }
    if (static_cast<int>(placed.size()) < holes) continue;
    auto poly = make_polygon(outer, placed);
    if (validate(poly).ok) return poly;
  }
}

std::vector<PolygonWithHoles> generate_corpus(std::uint64_t seed, int count, const CorpusOptions& opts) {
  std::mt19937_64 rng(seed);
  std::vector<PolygonWithHoles> out;
  out.reserve(count);
  for (int i = 0; i < count; ++i) out.push_back(random_polygon(rng, opts));
  return out;
}

std::vector<Point3> random_samples(std::mt19937_64& rng, int n, int range, int noise) {
  if (n < 1 || (range + 1) * (range + 1) < n) throw std::invalid_argument("cannot place that many samples");
  const int a = uniform(rng, -2, 2), b = uniform(rng, -2, 2);
  std::set<std::pair<int, int>> seen;
  std::vector<Point3> out;
  while (static_cast<int>(out.size()) < n) {
    const int x = uniform(rng, 0, range), y = uniform(rng, 0, range);
    if (!seen.emplace(x, y).second) continue;
    out.push_back({Rational(x), Rational(y), Rational(a * x + b * y + uniform(rng, -noise, noise))});
  }
  return out;
}

}  // namespace geopart
