#include "coastseg/grid_ops.hpp"

#include <algorithm>
#include <stdexcept>

namespace coastseg {

namespace {

void require_odd_window(int window) {
    if (window < 1 || window % 2 == 0) {
        throw std::invalid_argument("window size must be an odd positive integer");
    }
}

}  // namespace

std::pair<Grid2D, Grid2D> spatial_gradient(const ProbMask& mask) {
    const int h = mask.height();
    const int w = mask.width();
    Grid2D gx(h, w, 0.0);
    Grid2D gy(h, w, 0.0);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j + 1 < w; ++j) {
            gx.at(i, j) = mask.m.at(i, j + 1) - mask.m.at(i, j);
        }
    }
    for (int i = 0; i + 1 < h; ++i) {
        for (int j = 0; j < w; ++j) {
            gy.at(i, j) = mask.m.at(i + 1, j) - mask.m.at(i, j);
        }
    }
    return {std::move(gx), std::move(gy)};
}

Grid2D neighborhood_variance(const ProbMask& mask, int window) {
    require_odd_window(window);
    const int h = mask.height();
    const int w = mask.width();
    const int r = window / 2;
    Grid2D out(h, w, 0.0);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const int i0 = std::max(0, i - r), i1 = std::min(h - 1, i + r);
            const int j0 = std::max(0, j - r), j1 = std::min(w - 1, j + r);
            // shifted two-pass variance; exact zero on constant neighborhoods
            const double ref = mask.m.at(i0, j0);
            double sum = 0.0;
            int n = 0;
            for (int ii = i0; ii <= i1; ++ii) {
                for (int jj = j0; jj <= j1; ++jj) {
                    sum += mask.m.at(ii, jj) - ref;
                    ++n;
                }
            }
            const double mean = sum / n;
            double acc = 0.0;
            for (int ii = i0; ii <= i1; ++ii) {
                for (int jj = j0; jj <= j1; ++jj) {
                    const double d = (mask.m.at(ii, jj) - ref) - mean;
                    acc += d * d;
                }
            }
            out.at(i, j) = acc / n;
        }
    }
    return out;
}

Grid2D neighborhood_mean(const Grid2D& g, int window) {
    require_odd_window(window);
    const int h = g.height;
    const int w = g.width;
    const int r = window / 2;
    Grid2D out(h, w, 0.0);
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const int i0 = std::max(0, i - r), i1 = std::min(h - 1, i + r);
            const int j0 = std::max(0, j - r), j1 = std::min(w - 1, j + r);
            double sum = 0.0;
            int n = 0;
            for (int ii = i0; ii <= i1; ++ii) {
                for (int jj = j0; jj <= j1; ++jj) {
                    sum += g.at(ii, jj);
                    ++n;
                }
            }
            out.at(i, j) = sum / n;
        }
    }
    return out;
}

}  // namespace coastseg
