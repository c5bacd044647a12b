#pragma once

#include "geopart/polygon.hpp"
#include "geopart/surface_basis.hpp"

#include <vector>

namespace curated {

using namespace geopart;

// A horizontal strip with `teeth` notches cut into the bottom and top edges.
// Every vertex has its own x, and the optimum is teeth + 1 pieces.
PolygonWithHoles sawtooth_strip(int teeth);

// `cols` columns of `per` samples, each column on its own plane.
std::vector<Point3> column_samples(int cols, int per);

}  // namespace curated
