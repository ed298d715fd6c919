#include "coastseg/postprocess.hpp"

#include <stdexcept>

namespace coastseg {

namespace {

BinaryMask complement(const BinaryMask& mask) {
    BinaryMask out{Grid2D(mask.height(), mask.width())};
    for (std::size_t k = 0; k < out.b.size(); ++k) {
        out.b.values[k] = mask.b.values[k] == 0.0 ? 1.0 : 0.0;
    }
    return out;
}

// One pass of the cleanup chain after binarization.
BinaryMask cleanup_pass(const BinaryMask& start, const PostprocConfig& cfg) {
    // opening then closing
    BinaryMask mask = erode(start, cfg.open_close_k);
    mask = dilate(mask, cfg.open_close_k);
    mask = dilate(mask, cfg.open_close_k);
    mask = erode(mask, cfg.open_close_k);

    // drop small water components
    if (cfg.min_sea_area > 1) {
        const ComponentLabeling water = connected_components_2d(mask, cfg.connectivity);
        for (std::size_t k = 0; k < mask.b.size(); ++k) {
            const int label = static_cast<int>(water.labels.values[k]);
            if (label > 0 && water.areas[label - 1] < cfg.min_sea_area) {
                mask.b.values[k] = 0.0;
            }
        }
    }
    // fill small land holes
    if (cfg.min_land_area > 1) {
        const ComponentLabeling land = connected_components_2d(complement(mask), cfg.connectivity);
        for (std::size_t k = 0; k < mask.b.size(); ++k) {
            const int label = static_cast<int>(land.labels.values[k]);
            if (label > 0 && land.areas[label - 1] < cfg.min_land_area) {
                mask.b.values[k] = 1.0;
            }
        }
    }

    // keep only the largest water run per column, earliest run on ties
    if (cfg.enforce_column_connectivity) {
        const int h = mask.height();
        const int w = mask.width();
        for (int j = 0; j < w; ++j) {
            int best_start = -1, best_len = 0;
            int run_start = -1;
            for (int i = 0; i <= h; ++i) {
                const bool water = i < h && mask.b.at(i, j) != 0.0;
                if (water && run_start < 0) run_start = i;
                if (!water && run_start >= 0) {
                    const int len = i - run_start;
                    if (len > best_len) {
                        best_len = len;
                        best_start = run_start;
                    }
                    run_start = -1;
                }
            }
            if (best_len > 0) {
                for (int i = 0; i < h; ++i) {
                    const bool keep = i >= best_start && i < best_start + best_len;
                    if (!keep) mask.b.at(i, j) = 0.0;
                }
            }
        }
    }
    return mask;
}

}  // namespace

void validate(const PostprocConfig& cfg) {
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
        throw std::invalid_argument("postprocess threshold must lie in (0,1)");
    }
    if (cfg.open_close_k < 1 || cfg.open_close_k % 2 == 0) {
        throw std::invalid_argument("open_close_k must be odd and positive");
    }
    if (cfg.min_sea_area < 1 || cfg.min_land_area < 1) {
        throw std::invalid_argument("area thresholds must be >= 1");
    }
    if (cfg.connectivity != 4 && cfg.connectivity != 8) {
        throw std::invalid_argument("connectivity must be 4 or 8");
    }
}

BinaryMask refine(const ProbMask& mask, const PostprocConfig& cfg) {
    validate(cfg);
    BinaryMask current = binarize(mask, cfg.threshold);
    // column selection can expose structure the opening would remove, so the
    // chain runs to a fixed point; converges in 2-3 passes in practice
    constexpr int kMaxPasses = 16;
    for (int pass = 0; pass < kMaxPasses; ++pass) {
        BinaryMask next = cleanup_pass(current, cfg);
        if (next.b.values == current.b.values) break;
        current = std::move(next);
    }
    return current;
}

int count_false_components(const BinaryMask& mask, const LabelMask& labels, int connectivity) {
    if (!mask.b.same_shape(labels.y)) {
        throw std::invalid_argument("count_false_components: dimension mismatch");
    }
    const ComponentLabeling comps = connected_components_2d(mask, connectivity);
    std::vector<bool> overlaps(static_cast<std::size_t>(comps.component_count) + 1, false);
    for (std::size_t k = 0; k < mask.b.size(); ++k) {
        const int label = static_cast<int>(comps.labels.values[k]);
        if (label > 0 && labels.y.values[k] != 0.0) overlaps[label] = true;
    }
    int false_components = 0;
    for (int id = 1; id <= comps.component_count; ++id) {
        if (!overlaps[id]) ++false_components;
    }
    return false_components;
}

}  // namespace coastseg
