#pragma once

#include <string>

#include "coastseg/dataset.hpp"

namespace coastseg {

inline constexpr const char* kDatasetManifestName = "dataset_manifest.txt";

// On-disk dataset layout inside a directory:
//   scene_000.ppm          RGB image
//   scene_000_labels.pgm   ground-truth mask
//   dataset_manifest.txt   CSV: image,labels,seed,split,family
// Scene ids are the image filename stems. save_dataset writes everything
// atomically and deterministically; load_dataset rebuilds the derived HSV
// and feature channels.
void save_dataset(const std::string& dir, const Dataset& dataset);
Dataset load_dataset(const std::string& dir);

}  // namespace coastseg
