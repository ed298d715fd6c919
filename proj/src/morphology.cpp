#include "coastseg/morphology.hpp"

#include <algorithm>
#include <stdexcept>

namespace coastseg {

namespace {

void require_odd_kernel(int k) {
    if (k < 1 || k % 2 == 0) {
        throw std::invalid_argument("structuring element size must be an odd positive integer");
    }
}

// max (dilate) or min (erode) over the clipped k x k window
BinaryMask window_extreme(const BinaryMask& mask, int k, bool take_max) {
    require_odd_kernel(k);
    const int h = mask.height();
    const int w = mask.width();
    const int r = k / 2;
    BinaryMask out{Grid2D(h, w, 0.0)};
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const int i0 = std::max(0, i - r), i1 = std::min(h - 1, i + r);
            const int j0 = std::max(0, j - r), j1 = std::min(w - 1, j + r);
            bool hit = false;  // any 1 (dilate) / any 0 (erode) under the window
            for (int ii = i0; ii <= i1 && !hit; ++ii) {
                for (int jj = j0; jj <= j1; ++jj) {
                    const bool one = mask.b.at(ii, jj) != 0.0;
                    if (one == take_max) { hit = true; break; }
                }
            }
            out.b.at(i, j) = (hit == take_max) ? 1.0 : 0.0;
        }
    }
    return out;
}

}  // namespace

void validate(const BinaryMask& mask) {
    validate(mask.b);
    if (!grid_values_binary(mask.b)) {
        throw std::invalid_argument("BinaryMask values must be exactly 0 or 1");
    }
}

BinaryMask binarize(const ProbMask& mask, double threshold) {
    const int h = mask.height();
    const int w = mask.width();
    BinaryMask out{Grid2D(h, w, 0.0)};
    for (std::size_t k = 0; k < out.b.size(); ++k) {
        out.b.values[k] = mask.m.values[k] >= threshold ? 1.0 : 0.0;
    }
    return out;
}

BinaryMask dilate(const BinaryMask& mask, int k) { return window_extreme(mask, k, true); }

BinaryMask erode(const BinaryMask& mask, int k) { return window_extreme(mask, k, false); }

CoastlineSet coastline_set(const ProbMask& mask, int k, double threshold) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw std::invalid_argument("coastline threshold must lie in (0,1)");
    }
    const BinaryMask bin = binarize(mask, threshold);
    const BinaryMask dil = dilate(bin, k);
    const BinaryMask ero = erode(bin, k);
    CoastlineSet set;
    for (int i = 0; i < bin.height(); ++i) {
        for (int j = 0; j < bin.width(); ++j) {
            if (dil.b.at(i, j) == 1.0 && ero.b.at(i, j) == 0.0) {
                set.pixels.emplace_back(i, j);
            }
        }
    }
    return set;
}

Grid2D coastline_mask(const CoastlineSet& set, int height, int width) {
    Grid2D out(height, width, 0.0);
    for (const auto& [i, j] : set.pixels) out.at(i, j) = 1.0;
    return out;
}

ComponentLabeling connected_components_2d(const BinaryMask& mask, int connectivity) {
    if (connectivity != 4 && connectivity != 8) {
        throw std::invalid_argument("connectivity must be 4 or 8");
    }
    const int h = mask.height();
    const int w = mask.width();
    ComponentLabeling result{Grid2D(h, w, 0.0), 0, {}};

    static constexpr int d4[4][2] = {{-1, 0}, {1, 0}, {0, -1}, {0, 1}};
    static constexpr int d8[8][2] = {{-1, -1}, {-1, 0}, {-1, 1}, {0, -1},
                                     {0, 1},   {1, -1}, {1, 0},  {1, 1}};
    const auto* dirs = connectivity == 4 ? d4 : d8;
    const int ndirs = connectivity;

    std::vector<std::pair<int, int>> stack;
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            if (mask.b.at(i, j) == 0.0 || result.labels.at(i, j) != 0.0) continue;
            const int id = ++result.component_count;
            int area = 0;
            stack.clear();
            stack.emplace_back(i, j);
            result.labels.at(i, j) = id;
            while (!stack.empty()) {
                const auto [ci, cj] = stack.back();
                stack.pop_back();
                ++area;
                for (int d = 0; d < ndirs; ++d) {
                    const int ni = ci + dirs[d][0];
                    const int nj = cj + dirs[d][1];
                    if (ni < 0 || ni >= h || nj < 0 || nj >= w) continue;
                    if (mask.b.at(ni, nj) == 0.0 || result.labels.at(ni, nj) != 0.0) continue;
                    result.labels.at(ni, nj) = id;
                    stack.emplace_back(ni, nj);
                }
            }
            result.areas.push_back(area);
        }
    }
    return result;
}

int count_column_regions(const std::vector<double>& column, double threshold) {
    int regions = 0;
    bool inside = false;
    for (double v : column) {
        const bool water = v >= threshold;
        if (water && !inside) ++regions;
        inside = water;
    }
    return regions;
}

std::vector<double> grid_column(const Grid2D& g, int j) {
    std::vector<double> col(static_cast<std::size_t>(g.height));
    for (int i = 0; i < g.height; ++i) col[i] = g.at(i, j);
    return col;
}

}  // namespace coastseg
