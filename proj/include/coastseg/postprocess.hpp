#pragma once

#include "coastseg/grid.hpp"
#include "coastseg/morphology.hpp"

namespace coastseg {

struct PostprocConfig {
    double threshold = 0.5;
    int open_close_k = 3;
    int min_sea_area = 5;
    int min_land_area = 5;
    bool enforce_column_connectivity = true;
    int connectivity = 4;
};

void validate(const PostprocConfig& cfg);

// Inference-time mask refinement: binarize, morphological opening then
// closing, area filtering (drop small water components, fill small land
// holes), and optional per-column largest-run selection. The cleanup passes
// repeat until the mask stops changing, so refine(refine(m)) == refine(m).
BinaryMask refine(const ProbMask& mask, const PostprocConfig& cfg);

// Predicted water components with zero overlap with any true water pixel.
int count_false_components(const BinaryMask& mask, const LabelMask& labels,
                           int connectivity = 4);

}  // namespace coastseg
