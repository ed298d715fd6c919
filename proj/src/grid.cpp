#include "coastseg/grid.hpp"

#include <stdexcept>
#include <string>

namespace coastseg {

Grid2D::Grid2D(int h, int w, double fill)
    : height(h), width(w), values(static_cast<std::size_t>(h) * w, fill) {
    if (h < 1 || w < 1) {
        throw std::invalid_argument("Grid2D dimensions must be positive, got " +
                                    std::to_string(h) + "x" + std::to_string(w));
    }
}

bool grid_values_in(const Grid2D& g, double lo, double hi) {
    for (double v : g.values) {
        if (!(v >= lo && v <= hi)) return false;
    }
    return true;
}

bool grid_values_binary(const Grid2D& g) {
    for (double v : g.values) {
        if (v != 0.0 && v != 1.0) return false;
    }
    return true;
}

void validate(const Grid2D& g) {
    if (g.height < 1 || g.width < 1) {
        throw std::invalid_argument("Grid2D dimensions must be positive");
    }
    if (g.values.size() != static_cast<std::size_t>(g.height) * g.width) {
        throw std::invalid_argument("Grid2D value count does not match height*width");
    }
}

void validate(const RgbImage& img) {
    validate(img.r);
    validate(img.g);
    validate(img.b);
    if (!img.r.same_shape(img.g) || !img.r.same_shape(img.b)) {
        throw std::invalid_argument("RgbImage channels must share dimensions");
    }
    if (!grid_values_in(img.r, 0.0, 1.0) || !grid_values_in(img.g, 0.0, 1.0) ||
        !grid_values_in(img.b, 0.0, 1.0)) {
        throw std::invalid_argument("RgbImage channel values must lie in [0,1]");
    }
}

void validate(const HsvImage& img) {
    validate(img.h);
    validate(img.s);
    validate(img.v);
    if (!img.h.same_shape(img.s) || !img.h.same_shape(img.v)) {
        throw std::invalid_argument("HsvImage channels must share dimensions");
    }
    if (!grid_values_in(img.s, 0.0, 1.0) || !grid_values_in(img.v, 0.0, 1.0)) {
        throw std::invalid_argument("HsvImage s/v values must lie in [0,1]");
    }
    for (std::size_t k = 0; k < img.h.values.size(); ++k) {
        double h = img.h.values[k];
        if (!(h >= 0.0 && h < 1.0)) {
            throw std::invalid_argument("HsvImage hue values must lie in [0,1)");
        }
        if (img.s.values[k] == 0.0 && h != 0.0) {
            throw std::invalid_argument("HsvImage achromatic pixels must carry hue 0");
        }
    }
}

void validate(const ProbMask& mask) {
    validate(mask.m);
    if (!grid_values_in(mask.m, 0.0, 1.0)) {
        throw std::invalid_argument("ProbMask values must lie in [0,1]");
    }
}

void validate(const LabelMask& labels) {
    validate(labels.y);
    if (!grid_values_binary(labels.y)) {
        throw std::invalid_argument("LabelMask values must be exactly 0 or 1");
    }
}

}  // namespace coastseg
