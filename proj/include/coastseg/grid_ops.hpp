#pragma once

#include <utility>

#include "coastseg/grid.hpp"

namespace coastseg {

// Forward differences with replicate boundary: the last column of gx and the
// last row of gy are zero.
//   gx(i,j) = m(i,j+1) - m(i,j)
//   gy(i,j) = m(i+1,j) - m(i,j)
std::pair<Grid2D, Grid2D> spatial_gradient(const ProbMask& mask);

// Per-pixel population variance over a window x window neighborhood centered
// at each pixel, the window clipped at image borders (shrinking neighborhood).
// Rejects even or non-positive windows.
Grid2D neighborhood_variance(const ProbMask& mask, int window);

// Per-pixel mean over the clipped window. Same border policy as the variance.
Grid2D neighborhood_mean(const Grid2D& g, int window);

}  // namespace coastseg
