#pragma once

#include "geopart/io.hpp"

#include <string>

namespace geopart {

// Polygon boundary in black, holes hatched, one filled path per piece or
// triangle with colors cycling through a fixed palette, added diagonals
// dashed, samples as dots. Throws std::invalid_argument for lifted patches.
std::string render_svg(const ResultDocument& doc);

// Wavefront OBJ of the lifted patches; segment and point patches become
// polylines and points. Throws std::invalid_argument without patches.
std::string render_obj(const ResultDocument& doc);

}  // namespace geopart
