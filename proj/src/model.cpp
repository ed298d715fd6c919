#include "coastseg/model.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>

#include "coastseg/color.hpp"
#include "coastseg/grid_ops.hpp"

namespace coastseg {

FeatureStack compute_features(const RgbImage& image, const HsvImage& hsv) {
    const int h = image.height();
    const int w = image.width();
    FeatureStack fs;
    fs.height = h;
    fs.width = w;
    fs.values.assign(static_cast<std::size_t>(h) * w * kFeatureCount, 0.0);

    const Grid2D* channels[6] = {&image.r, &image.g, &image.b, &hsv.h, &hsv.s, &hsv.v};
    Grid2D means[6];
    for (int c = 0; c < 6; ++c) means[c] = neighborhood_mean(*channels[c], 3);

    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            double* px = fs.pixel(i, j);
            for (int c = 0; c < 6; ++c) px[c] = channels[c]->at(i, j);
            for (int c = 0; c < 6; ++c) px[6 + c] = means[c].at(i, j);
            px[12] = 1.0;  // bias
        }
    }
    return fs;
}

ProbMask predict(const ToySegmenter& model, const FeatureStack& features) {
    ProbMask mask{Grid2D(features.height, features.width)};
    for (int i = 0; i < features.height; ++i) {
        for (int j = 0; j < features.width; ++j) {
            const double* px = features.pixel(i, j);
            double score = 0.0;
            for (int c = 0; c < kFeatureCount; ++c) score += model.theta[c] * px[c];
            mask.m.at(i, j) = 1.0 / (1.0 + std::exp(-score));
        }
    }
    return mask;
}

ProbMask predict(const ToySegmenter& model, const RgbImage& image) {
    return predict(model, compute_features(image, rgb_to_hsv(image)));
}

namespace {

std::string fmt_full(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

}  // namespace

void save_model(const std::string& path, const ToySegmenter& model) {
    std::ostringstream os;
    os << "# coastseg model\n";
    for (int c = 0; c < kFeatureCount; ++c) {
        os << "theta_" << c << " = " << fmt_full(model.theta[c]) << "\n";
    }
    const HsvPriorParams& p = model.hsv_params;
    os << "alpha_h = " << fmt_full(p.alpha_h) << "\n";
    os << "alpha_s = " << fmt_full(p.alpha_s) << "\n";
    os << "alpha_v = " << fmt_full(p.alpha_v) << "\n";
    os << "beta = " << fmt_full(p.beta) << "\n";
    os << "sigma_bw = " << fmt_full(p.sigma_bw) << "\n";
    os << "ref_h = " << fmt_full(p.ref_hsv.h) << "\n";
    os << "ref_s = " << fmt_full(p.ref_hsv.s) << "\n";
    os << "ref_v = " << fmt_full(p.ref_hsv.v) << "\n";

    const std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("model: cannot write " + path);
        out << os.str();
    }
    std::filesystem::rename(tmp, path);
}

ToySegmenter load_model(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("model: cannot read " + path);
    std::map<std::string, double> kv;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) continue;
        std::string key = line.substr(0, eq);
        while (!key.empty() && key.back() == ' ') key.pop_back();
        kv[key] = std::strtod(line.c_str() + eq + 1, nullptr);
    }
    ToySegmenter model;
    for (int c = 0; c < kFeatureCount; ++c) {
        const std::string key = "theta_" + std::to_string(c);
        auto it = kv.find(key);
        if (it == kv.end()) throw std::runtime_error("model: missing " + key + " in " + path);
        model.theta[c] = it->second;
    }
    auto get = [&](const std::string& key, double fallback) {
        auto it = kv.find(key);
        return it == kv.end() ? fallback : it->second;
    };
    model.hsv_params.alpha_h = get("alpha_h", 0.0);
    model.hsv_params.alpha_s = get("alpha_s", 0.0);
    model.hsv_params.alpha_v = get("alpha_v", 0.0);
    model.hsv_params.beta = get("beta", 0.0);
    model.hsv_params.sigma_bw = get("sigma_bw", 0.2);
    model.hsv_params.ref_hsv.h = get("ref_h", 0.55);
    model.hsv_params.ref_hsv.s = get("ref_s", 0.45);
    model.hsv_params.ref_hsv.v = get("ref_v", 0.35);
    return model;
}

}  // namespace coastseg
