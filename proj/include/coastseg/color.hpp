#pragma once

#include "coastseg/grid.hpp"

namespace coastseg {

struct HsvPixel {
    double h = 0.0;  // [0,1), full turn scaled from [0deg, 360deg)
    double s = 0.0;  // [0,1]
    double v = 0.0;  // [0,1]
};

// Standard sector-formula conversion. V = max(r,g,b); S = (V-min)/V (0 when
// V == 0); hue scaled to [0,1) with the achromatic case pinned at h = 0.
HsvPixel rgb_to_hsv_pixel(double r, double g, double b);
void hsv_to_rgb_pixel(const HsvPixel& hsv, double& r, double& g, double& b);

HsvImage rgb_to_hsv(const RgbImage& img);
RgbImage hsv_to_rgb(const HsvImage& img);

// Distance between hues on the unit circle: min(|dh|, 1-|dh|).
double hue_circular_distance(double h0, double h1);

// Euclidean distance in HSV space with the hue component taken on the circle.
double hsv_distance(const HsvPixel& a, const HsvPixel& b);

}  // namespace coastseg
