#include "coastseg/synth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include "coastseg/rng.hpp"

namespace coastseg {

namespace {

constexpr double kPi = 3.14159265358979323846;

double clamp01(double v) { return std::clamp(v, 0.0, 1.0); }

double wrap_hue(double h) {
    h -= std::floor(h);
    if (h >= 1.0) h = 0.0;
    return h;
}

// One jittered sample around a region color, clamped to channel ranges.
HsvPixel jitter_hsv(const HsvPixel& mean, double jitter, Rng& rng) {
    HsvPixel out;
    out.h = wrap_hue(mean.h + rng.uniform(-jitter, jitter));
    out.s = clamp01(mean.s + rng.uniform(-jitter, jitter));
    out.v = clamp01(mean.v + rng.uniform(-jitter, jitter));
    return out;
}

void paint_pixel(RgbImage& img, int i, int j, const HsvPixel& hsv, double noise, Rng& rng) {
    double r, g, b;
    hsv_to_rgb_pixel(hsv, r, g, b);
    img.r.at(i, j) = clamp01(r + rng.uniform(-noise, noise));
    img.g.at(i, j) = clamp01(g + rng.uniform(-noise, noise));
    img.b.at(i, j) = clamp01(b + rng.uniform(-noise, noise));
}

// Stamp a filled disc of region-colored pixels; image only, labels untouched.
void stamp_blob(RgbImage& img, const LabelMask& labels, bool on_water, const HsvPixel& color,
                const SceneSpec& spec, Rng& rng) {
    const int h = spec.height;
    const int w = spec.width;
    const int radius = rng.uniform_int(1, std::max(1, std::min(h, w) / 10));
    const int ci = rng.uniform_int(0, h - 1);
    const int cj = rng.uniform_int(0, w - 1);
    for (int i = std::max(0, ci - radius); i <= std::min(h - 1, ci + radius); ++i) {
        for (int j = std::max(0, cj - radius); j <= std::min(w - 1, cj + radius); ++j) {
            const int di = i - ci, dj = j - cj;
            if (di * di + dj * dj > radius * radius) continue;
            const bool water_px = labels.y.at(i, j) != 0.0;
            if (water_px != on_water) continue;
            paint_pixel(img, i, j, jitter_hsv(color, spec.hsv_jitter, rng), spec.noise_level, rng);
        }
    }
}

}  // namespace

void validate(const SceneSpec& spec) {
    if (spec.height < 2 || spec.width < 1) {
        throw std::invalid_argument("scene must be at least 2x1");
    }
    if (spec.num_sinusoids < 0 || spec.num_sinusoids > 3) {
        throw std::invalid_argument("num_sinusoids must lie in 0..3");
    }
    if (hsv_distance(spec.water_hsv, spec.land_hsv) < spec.hsv_separation_margin) {
        throw std::invalid_argument("water and land HSV means closer than the separation margin");
    }
}

GeneratedScene generate(const SceneSpec& spec) {
    validate(spec);
    const int h = spec.height;
    const int w = spec.width;
    Rng rng(mix_seed(spec.seed, 0xC0A57ULL));

    // coastline curve: waterline row per column
    double amp[3] = {0, 0, 0};
    double phase[3] = {0, 0, 0};
    int freq[3] = {1, 2, 3};
    for (int k = 0; k < spec.num_sinusoids; ++k) {
        amp[k] = rng.uniform(0.5, 1.0) * spec.amplitude / freq[k];
        phase[k] = rng.uniform(0.0, 2.0 * kPi);
    }
    std::vector<double> waterline(static_cast<std::size_t>(w));
    for (int j = 0; j < w; ++j) {
        double level = spec.base_waterline;
        for (int k = 0; k < spec.num_sinusoids; ++k) {
            level += amp[k] * std::sin(2.0 * kPi * freq[k] * j / w + phase[k]);
        }
        double row = level * h;
        if (spec.raggedness > 0.0) {
            row += rng.uniform(-spec.raggedness, spec.raggedness);
        }
        waterline[j] = row;
    }

    GeneratedScene scene;
    scene.labels = LabelMask{Grid2D(h, w, 0.0)};
    for (int j = 0; j < w; ++j) {
        for (int i = 0; i < h; ++i) {
            if (i >= waterline[j]) scene.labels.y.at(i, j) = 1.0;
        }
    }

    if (spec.require_nondegenerate) {
        const double water = std::accumulate(scene.labels.y.values.begin(),
                                             scene.labels.y.values.end(), 0.0);
        if (water == 0.0 || water == static_cast<double>(h) * w) {
            throw std::invalid_argument("degenerate coastline: one class is empty");
        }
    }

    scene.image = RgbImage{Grid2D(h, w), Grid2D(h, w), Grid2D(h, w)};
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const bool water = scene.labels.y.at(i, j) != 0.0;
            const HsvPixel mean = water ? spec.water_hsv : spec.land_hsv;
            paint_pixel(scene.image, i, j, jitter_hsv(mean, spec.hsv_jitter, rng),
                        spec.noise_level, rng);
        }
    }

    for (int k = 0; k < spec.speckle_blobs; ++k) {
        stamp_blob(scene.image, scene.labels, true, spec.land_hsv, spec, rng);
    }
    for (int k = 0; k < spec.false_water_patches; ++k) {
        stamp_blob(scene.image, scene.labels, false, spec.water_hsv, spec, rng);
    }
    return scene;
}

int benchmark_family(int index) { return index % 4; }

void attach_derived_channels(Scene& scene) {
    scene.hsv = rgb_to_hsv(scene.image);
    scene.features = compute_features(scene.image, scene.hsv);
}

Dataset make_benchmark(const SceneSpec& base, int count, double split_fraction,
                       std::uint64_t seed) {
    if (count < 5) throw std::invalid_argument("benchmark needs at least 5 scenes");
    if (!(split_fraction > 0.0 && split_fraction < 1.0)) {
        throw std::invalid_argument("split fraction must lie in (0,1)");
    }

    Dataset ds;
    ds.scenes.reserve(static_cast<std::size_t>(count));
    for (int idx = 0; idx < count; ++idx) {
        SceneSpec spec = base;
        spec.seed = mix_seed(seed, static_cast<std::uint64_t>(idx));
        spec.num_sinusoids = benchmark_family(idx);  // families 0..3 by sinusoid count
        GeneratedScene gen = generate(spec);

        Scene scene;
        char buf[32];
        std::snprintf(buf, sizeof(buf), "scene_%04d", idx);
        scene.id = buf;
        scene.image = std::move(gen.image);
        scene.labels = std::move(gen.labels);
        scene.seed = spec.seed;
        scene.family = spec.num_sinusoids;
        attach_derived_channels(scene);
        ds.scenes.push_back(std::move(scene));
    }

    // stratified split: validation quota distributed over families by
    // largest remainder so the global count is hit exactly
    const int total_val = static_cast<int>(std::lround(count * (1.0 - split_fraction)));
    std::vector<std::vector<int>> by_family(4);
    for (int idx = 0; idx < count; ++idx) by_family[ds.scenes[idx].family].push_back(idx);

    std::vector<int> quota(4, 0);
    std::vector<std::pair<double, int>> remainders;
    int assigned = 0;
    for (int f = 0; f < 4; ++f) {
        const double exact = by_family[f].size() * (1.0 - split_fraction);
        quota[f] = static_cast<int>(std::floor(exact));
        quota[f] = std::min<int>(quota[f], static_cast<int>(by_family[f].size()));
        assigned += quota[f];
        remainders.emplace_back(exact - quota[f], f);
    }
    std::stable_sort(remainders.begin(), remainders.end(),
                     [](const auto& a, const auto& b) { return a.first > b.first; });
    for (const auto& [rem, f] : remainders) {
        if (assigned >= total_val) break;
        if (quota[f] < static_cast<int>(by_family[f].size())) {
            ++quota[f];
            ++assigned;
        }
    }

    // within each family the last quota[f] scenes go to validation
    std::vector<bool> is_val(static_cast<std::size_t>(count), false);
    for (int f = 0; f < 4; ++f) {
        const auto& members = by_family[f];
        for (int k = 0; k < quota[f]; ++k) {
            is_val[members[members.size() - 1 - k]] = true;
        }
    }
    for (int idx = 0; idx < count; ++idx) {
        (is_val[idx] ? ds.val_indices : ds.train_indices).push_back(idx);
    }
    return ds;
}

}  // namespace coastseg
