#include "coastseg/dataset_io.hpp"

#include <algorithm>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <stdexcept>

#include "coastseg/netpbm.hpp"
#include "coastseg/textio.hpp"

namespace coastseg {

namespace {

std::string scene_stem(int index) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "scene_%03d", index);
    return buf;
}

std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    return fields;
}

}  // namespace

void save_dataset(const std::string& dir, const Dataset& dataset) {
    std::filesystem::create_directories(dir);
    std::string manifest = "image,labels,seed,split,family\n";
    for (int i = 0; i < dataset.size(); ++i) {
        const Scene& scene = dataset.scenes[i];
        const std::string stem = scene_stem(i);
        const std::string image_name = stem + ".ppm";
        const std::string labels_name = stem + "_labels.pgm";
        write_ppm(dir + "/" + image_name, scene.image);
        write_label_mask(dir + "/" + labels_name, scene.labels);

        const bool in_val = std::find(dataset.val_indices.begin(), dataset.val_indices.end(), i) !=
                            dataset.val_indices.end();
        manifest += image_name + "," + labels_name + "," + std::to_string(scene.seed) + "," +
                    (in_val ? "val" : "train") + "," + std::to_string(scene.family) + "\n";
    }
    write_text_atomic(dir + "/" + kDatasetManifestName, manifest);
}

Dataset load_dataset(const std::string& dir) {
    const std::string manifest_path = dir + "/" + kDatasetManifestName;
    const std::string text = read_text_file(manifest_path);

    Dataset dataset;
    std::istringstream lines(text);
    std::string line;
    bool header_seen = false;
    while (std::getline(lines, line)) {
        if (line.empty()) continue;
        if (!header_seen) {
            if (line != "image,labels,seed,split,family") {
                throw std::runtime_error(manifest_path + ": unexpected header '" + line + "'");
            }
            header_seen = true;
            continue;
        }
        const std::vector<std::string> fields = split_csv_line(line);
        if (fields.size() != 5) {
            throw std::runtime_error(manifest_path + ": malformed record '" + line + "'");
        }
        Scene scene;
        scene.id = std::filesystem::path(fields[0]).stem().string();
        scene.image = read_ppm(dir + "/" + fields[0]);
        scene.labels = read_label_mask(dir + "/" + fields[1]);
        scene.seed = std::stoull(fields[2]);
        scene.family = std::stoi(fields[4]);
        attach_derived_channels(scene);

        const int index = dataset.size();
        if (fields[3] == "val") {
            dataset.val_indices.push_back(index);
        } else if (fields[3] == "train") {
            dataset.train_indices.push_back(index);
        } else {
            throw std::runtime_error(manifest_path + ": unknown split '" + fields[3] + "'");
        }
        dataset.scenes.push_back(std::move(scene));
    }
    if (!header_seen) throw std::runtime_error(manifest_path + ": empty manifest");
    return dataset;
}

}  // namespace coastseg
