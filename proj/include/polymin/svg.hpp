#pragma once

#include <string>

#include "polymin/geometry.hpp"
#include "polymin/lattice.hpp"

namespace polymin {

/// Standalone SVG: source polyline in blue, result in red, optional candidate
/// locations as black dots. The y axis is flipped (SVG y = -y) and the
/// viewBox covers the drawing plus a 5% margin.
std::string render_svg(const Polyline& source, const Polyline& result,
                       const CandidateSet* candidates = nullptr);

}  // namespace polymin
