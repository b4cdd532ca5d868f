#pragma once

#include "wkfi/landscape.hpp"

#include <string>
#include <vector>

namespace wkfi {

// Heatmap of Lambda over a 2-D grid with the Lambda = 0 contour (marching
// squares) overlaid and S-members stippled.  Hand-written SVG 1.1, no external
// rendering dependency.  Expects samples from scan() over `grid` (row-major,
// second axis fastest).
void write_lambda_svg(const std::string& path, const GridSpec& grid,
                      const std::vector<LandscapeSample>& samples,
                      const std::string& title);

} // namespace wkfi
