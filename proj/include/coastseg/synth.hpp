#pragma once

#include <cstdint>
#include <utility>

#include "coastseg/color.hpp"
#include "coastseg/dataset.hpp"
#include "coastseg/grid.hpp"

namespace coastseg {

// Parameters of one synthetic coastline scene. The coastline is a smooth
// curve (sum of up to three seeded sinusoids); water fills the image below
// it. Labels are pixel-perfect by construction: exactly one water run per
// column. Artifact injectors perturb the image only, never the labels.
struct SceneSpec {
    int height = 32;
    int width = 32;

    double base_waterline = 0.5;  // fraction of height
    int num_sinusoids = 2;        // 0..3; 0 gives a flat coastline
    double amplitude = 0.08;      // fraction of height; each component scaled by 1/frequency

    HsvPixel water_hsv{0.55, 0.45, 0.35};
    HsvPixel land_hsv{0.25, 0.30, 0.55};
    double hsv_separation_margin = 0.2;

    double hsv_jitter = 0.05;   // per-channel uniform jitter half-width
    double noise_level = 0.02;  // additive RGB noise half-width

    int speckle_blobs = 0;         // land-colored blobs inside water (image only)
    int false_water_patches = 0;   // water-colored patches on land (image only)
    double raggedness = 0.0;       // per-column coastline jitter, in rows

    bool require_nondegenerate = true;
    std::uint64_t seed = 0;
};

void validate(const SceneSpec& spec);

struct GeneratedScene {
    RgbImage image;
    LabelMask labels;
};

// Deterministic per seed. Throws when require_nondegenerate is set and the
// curve leaves either class empty.
GeneratedScene generate(const SceneSpec& spec);

// count scenes cycled through the four coastline-shape families
// (0..3 sinusoids), partitioned train/validation by split_fraction with
// stratification by family. Deterministic per seed.
Dataset make_benchmark(const SceneSpec& base, int count, double split_fraction,
                       std::uint64_t seed);

// Shape family assigned to scene index within a benchmark.
int benchmark_family(int index);

}  // namespace coastseg
