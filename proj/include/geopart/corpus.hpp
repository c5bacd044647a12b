#pragma once

#include "geopart/polygon.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace geopart {

struct CorpusOptions {
  int max_vertices = 14;  // counting hole vertices
  int max_holes = 2;
  int radius = 20;        // outer vertices lie on an integer grid within this radius
};

// Star-shaped perturbation of a convex polygon on a circle, then small
// triangular holes placed by rejection sampling. Always valid.
PolygonWithHoles random_polygon(std::mt19937_64& rng, const CorpusOptions& opts);

std::vector<PolygonWithHoles> generate_corpus(std::uint64_t seed, int count, const CorpusOptions& opts);

// n samples with distinct integer projections in [0, range]^2, heights
// a x + b y + noise with small integer slopes.
std::vector<Point3> random_samples(std::mt19937_64& rng, int n, int range, int noise);

}  // namespace geopart
