#pragma once

// SVG rendering of two-dimensional packings: the fundamental cell with all
// placements and their wrapped images, base bodies in one tone and each fill
// level in a progressively lighter one.

#include "polypack/packing.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace polypack {

// level_starts holds the placement index where each fill level begins;
// placements before the first entry are the base. Throws unless n == 2.
void write_packing_svg(std::ostream& out, const PeriodicPacking& packing,
                       const std::vector<std::size_t>& level_starts = {});
void write_packing_svg_file(const std::string& path, const PeriodicPacking& packing,
                            const std::vector<std::size_t>& level_starts = {});

}  // namespace polypack
