#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coastseg/grid.hpp"
#include "coastseg/model.hpp"

namespace coastseg {

struct Scene {
    std::string id;
    RgbImage image;
    HsvImage hsv;
    FeatureStack features;
    LabelMask labels;
    std::uint64_t seed = 0;
    int family = 0;
};

struct Dataset {
    std::vector<Scene> scenes;
    std::vector<int> train_indices;
    std::vector<int> val_indices;

    int size() const { return static_cast<int>(scenes.size()); }
};

// Derives hsv + features from the RGB channels of every scene.
void attach_derived_channels(Scene& scene);

}  // namespace coastseg
