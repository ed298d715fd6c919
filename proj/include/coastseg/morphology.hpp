#pragma once

#include <utility>
#include <vector>

#include "coastseg/grid.hpp"

namespace coastseg {

// Mask with values exactly 0 or 1.
struct BinaryMask {
    Grid2D b;
    int height() const { return b.height; }
    int width() const { return b.width; }
};

// Boundary band produced by dilate(M,k) - erode(M,k). Pixels are unique and
// listed in row-major order.
struct CoastlineSet {
    std::vector<std::pair<int, int>> pixels;
    int cardinality() const { return static_cast<int>(pixels.size()); }
};

// Flood-fill labeling. Component ids are 1..component_count assigned by
// row-major first encounter; label 0 is background. areas[id-1] is the pixel
// count of component id.
struct ComponentLabeling {
    Grid2D labels;
    int component_count = 0;
    std::vector<int> areas;
};

void validate(const BinaryMask& mask);

// value >= threshold maps to 1. The single binarization rule used everywhere.
BinaryMask binarize(const ProbMask& mask, double threshold);

// Square k x k structuring element, window clipped at borders (no padding).
// Both reject even k.
BinaryMask dilate(const BinaryMask& mask, int k);
BinaryMask erode(const BinaryMask& mask, int k);

// Binarize at threshold, then dilate minus erode as a set difference.
CoastlineSet coastline_set(const ProbMask& mask, int k, double threshold);

// Membership grid for a coastline set (1 on coastline pixels).
Grid2D coastline_mask(const CoastlineSet& set, int height, int width);

// connectivity must be 4 or 8.
ComponentLabeling connected_components_2d(const BinaryMask& mask, int connectivity);

// Number of maximal runs of values >= threshold in a 1-D sequence.
int count_column_regions(const std::vector<double>& column, double threshold);

// Column extraction helper for the per-column connectivity machinery.
std::vector<double> grid_column(const Grid2D& g, int j);

}  // namespace coastseg
