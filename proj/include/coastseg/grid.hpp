#pragma once

#include <cstddef>
#include <vector>

namespace coastseg {

// Dense row-major 2-D grid of doubles. The universal carrier for image
// channels, probability masks and label maps.
struct Grid2D {
    int height = 0;
    int width = 0;
    std::vector<double> values;

    Grid2D() = default;
    Grid2D(int h, int w, double fill = 0.0);

    double& at(int i, int j) { return values[static_cast<std::size_t>(i) * width + j]; }
    double at(int i, int j) const { return values[static_cast<std::size_t>(i) * width + j]; }

    std::size_t size() const { return values.size(); }
    bool same_shape(const Grid2D& other) const {
        return height == other.height && width == other.width;
    }
    bool in_bounds(int i, int j) const { return i >= 0 && i < height && j >= 0 && j < width; }
};

// Three-channel RGB image, every channel value in [0,1].
struct RgbImage {
    Grid2D r, g, b;
    int height() const { return r.height; }
    int width() const { return r.width; }
};

// HSV image with hue scaled to [0,1), saturation and value in [0,1].
// Achromatic pixels (s == 0) carry the canonical hue h == 0.
struct HsvImage {
    Grid2D h, s, v;
    int height() const { return h.height; }
    int width() const { return h.width; }
};

// Per-pixel water probability in [0,1].
struct ProbMask {
    Grid2D m;
    int height() const { return m.height; }
    int width() const { return m.width; }
};

// Ground-truth water labels, values exactly 0 or 1.
struct LabelMask {
    Grid2D y;
    int height() const { return y.height; }
    int width() const { return y.width; }
};

bool grid_values_in(const Grid2D& g, double lo, double hi);
bool grid_values_binary(const Grid2D& g);

// Throw std::invalid_argument when the declared invariants do not hold.
void validate(const Grid2D& g);
void validate(const RgbImage& img);
void validate(const HsvImage& img);
void validate(const ProbMask& mask);
void validate(const LabelMask& labels);

}  // namespace coastseg
