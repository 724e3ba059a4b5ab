#pragma once

#include "polymin/geometry.hpp"

namespace polymin {

/// Classic Douglas-Peucker: keeps the endpoints and recursively splits at the
/// vertex farthest from the chord while that distance exceeds `tolerance`.
/// The output is a subset of the source vertices.
Polyline douglas_peucker(const Polyline& poly, double tolerance);

}  // namespace polymin
