#pragma once

#include <array>
#include <string>

#include "coastseg/grid.hpp"
#include "coastseg/losses.hpp"

namespace coastseg {

// Per-pixel feature vector: r, g, b, h, s, v, the 3x3 local mean of each of
// those six channels, and a constant bias.
inline constexpr int kFeatureCount = 13;

struct FeatureStack {
    int height = 0;
    int width = 0;
    std::vector<double> values;  // [pixel][feature], row-major pixels

    const double* pixel(int i, int j) const {
        return values.data() + (static_cast<std::size_t>(i) * width + j) * kFeatureCount;
    }
    double* pixel(int i, int j) {
        return values.data() + (static_cast<std::size_t>(i) * width + j) * kFeatureCount;
    }
};

FeatureStack compute_features(const RgbImage& image, const HsvImage& hsv);

// Linear-in-features logistic segmenter: m(i,j) = sigmoid(theta . phi(i,j)).
// The HSV prior coefficients (alpha, beta) ride along as jointly trainable
// parameters of the loss.
struct ToySegmenter {
    std::array<double, kFeatureCount> theta{};
    HsvPriorParams hsv_params;
};

ProbMask predict(const ToySegmenter& model, const FeatureStack& features);
ProbMask predict(const ToySegmenter& model, const RgbImage& image);

// Plain-text model serialization with full double round-trip precision.
void save_model(const std::string& path, const ToySegmenter& model);
ToySegmenter load_model(const std::string& path);

}  // namespace coastseg
