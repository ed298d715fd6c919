#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <set>

#include "coastseg/morphology.hpp"
#include "coastseg/rng.hpp"
#include "oracles.hpp"

using namespace coastseg;

namespace {

BinaryMask random_mask(int h, int w, std::uint64_t seed, double density = 0.5) {
    Rng rng(seed);
    BinaryMask mask{Grid2D(h, w)};
    for (double& v : mask.b.values) v = rng.uniform() < density ? 1.0 : 0.0;
    return mask;
}

bool subset_of(const BinaryMask& inner, const BinaryMask& outer) {
    for (std::size_t k = 0; k < inner.b.size(); ++k) {
        if (inner.b.values[k] == 1.0 && outer.b.values[k] == 0.0) return false;
    }
    return true;
}

Grid2D transpose(const Grid2D& g) {
    Grid2D t(g.width, g.height);
    for (int i = 0; i < g.height; ++i) {
        for (int j = 0; j < g.width; ++j) t.at(j, i) = g.at(i, j);
    }
    return t;
}

}  // namespace

TEST_CASE("binarize keeps values at the threshold") {
    ProbMask mask{Grid2D(1, 3)};
    mask.m.values = {0.49, 0.5, 0.51};
    const BinaryMask b = binarize(mask, 0.5);
    CHECK(b.b.values == std::vector<double>{0.0, 1.0, 1.0});
}

TEST_CASE("dilation of the empty and singleton sets") {
    const BinaryMask zero{Grid2D(4, 4, 0.0)};
    CHECK(dilate(zero, 3).b.values == zero.b.values);

    BinaryMask center{Grid2D(5, 5, 0.0)};
    center.b.at(2, 2) = 1.0;
    const BinaryMask d = dilate(center, 3);
    for (int i = 0; i < 5; ++i) {
        for (int j = 0; j < 5; ++j) {
            const bool inside = std::abs(i - 2) <= 1 && std::abs(j - 2) <= 1;
            CHECK(d.b.at(i, j) == (inside ? 1.0 : 0.0));
        }
    }
}

TEST_CASE("diagonal seeds dilate to clipped blocks") {
    BinaryMask mask{Grid2D(4, 4, 0.0)};
    mask.b.at(0, 0) = 1.0;
    mask.b.at(3, 3) = 1.0;
    const BinaryMask d = dilate(mask, 3);
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) {
            CHECK(d.b.at(i, j) == oracle::window_extreme(mask.b, i, j, 3, true));
        }
    }
}

TEST_CASE("erosion with clipped windows") {
    const BinaryMask ones{Grid2D(4, 4, 1.0)};
    CHECK(erode(ones, 3).b.values == ones.b.values);

    BinaryMask single{Grid2D(4, 4, 0.0)};
    single.b.at(1, 1) = 1.0;
    const BinaryMask e = erode(single, 3);
    for (double v : e.b.values) CHECK(v == 0.0);
}

TEST_CASE("dilate and erode match the window oracle on random masks") {
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        const BinaryMask mask = random_mask(8, 9, mix_seed(400, seed));
        for (int k : {1, 3, 5}) {
            const BinaryMask d = dilate(mask, k);
            const BinaryMask e = erode(mask, k);
            for (int i = 0; i < 8; ++i) {
                for (int j = 0; j < 9; ++j) {
                    CHECK(d.b.at(i, j) == oracle::window_extreme(mask.b, i, j, k, true));
                    CHECK(e.b.at(i, j) == oracle::window_extreme(mask.b, i, j, k, false));
                }
            }
        }
    }
}

TEST_CASE("morphology rejects even kernels") {
    const BinaryMask mask = random_mask(4, 4, 1);
    CHECK_THROWS_AS(dilate(mask, 2), std::invalid_argument);
    CHECK_THROWS_AS(erode(mask, 4), std::invalid_argument);
    CHECK_THROWS_AS(dilate(mask, 0), std::invalid_argument);
    CHECK_THROWS_AS(erode(mask, -1), std::invalid_argument);
}

TEST_CASE("extensivity, anti-extensivity, and monotonicity") {
    for (std::uint64_t seed = 0; seed < 60; ++seed) {
        const BinaryMask x = random_mask(7, 7, mix_seed(500, seed));
        BinaryMask y = x;
        // y = x plus extra pixels, so x is a subset of y
        Rng extra(mix_seed(501, seed));
        for (double& v : y.b.values) {
            if (extra.uniform() < 0.2) v = 1.0;
        }
        for (int k : {3, 5}) {
            CHECK(subset_of(x, dilate(x, k)));
            CHECK(subset_of(erode(x, k), x));
            CHECK(subset_of(dilate(x, k), dilate(y, k)));
            CHECK(subset_of(erode(x, k), erode(y, k)));
        }
    }
}

TEST_CASE("closing is extensive over random masks") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const BinaryMask x = random_mask(8, 8, mix_seed(600, seed));
        const BinaryMask closed = erode(dilate(x, 3), 3);
        CHECK(subset_of(x, closed));
    }
}

TEST_CASE("opening and closing are idempotent") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const BinaryMask x = random_mask(9, 8, mix_seed(700, seed));
        const BinaryMask opened = dilate(erode(x, 3), 3);
        const BinaryMask opened2 = dilate(erode(opened, 3), 3);
        CHECK(opened.b.values == opened2.b.values);

        const BinaryMask closed = erode(dilate(x, 3), 3);
        const BinaryMask closed2 = erode(dilate(closed, 3), 3);
        CHECK(closed.b.values == closed2.b.values);
    }
}

TEST_CASE("constant masks have no coastline") {
    const ProbMask water{Grid2D(6, 6, 1.0)};
    const ProbMask land{Grid2D(6, 6, 0.0)};
    for (int k : {1, 3, 5}) {
        CHECK(coastline_set(water, k, 0.5).cardinality() == 0);
        CHECK(coastline_set(land, k, 0.5).cardinality() == 0);
    }
}

TEST_CASE("vertical boundary yields a two-column band") {
    ProbMask mask{Grid2D(4, 4, 0.0)};
    for (int i = 0; i < 4; ++i) {
        mask.m.at(i, 0) = 1.0;
        mask.m.at(i, 1) = 1.0;
    }
    const CoastlineSet c = coastline_set(mask, 3, 0.5);
    CHECK(c.cardinality() == 8);
    std::set<std::pair<int, int>> got(c.pixels.begin(), c.pixels.end());
    std::set<std::pair<int, int>> expected;
    for (int i = 0; i < 4; ++i) {
        expected.insert({i, 1});
        expected.insert({i, 2});
    }
    CHECK(got == expected);
}

TEST_CASE("checkerboard 2x2 is entirely coastline") {
    ProbMask mask{Grid2D(2, 2, 0.0)};
    mask.m.at(0, 0) = 1.0;
    mask.m.at(1, 1) = 1.0;
    const CoastlineSet c = coastline_set(mask, 3, 0.5);
    CHECK(c.cardinality() == 4);
}

TEST_CASE("coastline pixels see both classes inside their window") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const BinaryMask mask = random_mask(10, 10, mix_seed(800, seed));
        ProbMask prob{mask.b};
        for (int k : {3, 5}) {
            const CoastlineSet c = coastline_set(prob, k, 0.5);
            for (const auto& [i, j] : c.pixels) {
                CHECK(oracle::window_extreme(mask.b, i, j, k, true) == 1.0);
                CHECK(oracle::window_extreme(mask.b, i, j, k, false) == 0.0);
            }
        }
    }
}

TEST_CASE("coastline pixels are unique and in row-major order") {
    const BinaryMask mask = random_mask(8, 8, 42);
    const CoastlineSet c = coastline_set(ProbMask{mask.b}, 3, 0.5);
    for (std::size_t k = 1; k < c.pixels.size(); ++k) {
        const auto& prev = c.pixels[k - 1];
        const auto& cur = c.pixels[k];
        CHECK((prev.first < cur.first ||
               (prev.first == cur.first && prev.second < cur.second)));
    }
    const Grid2D member = coastline_mask(c, 8, 8);
    int count = 0;
    for (double v : member.values) count += v == 1.0 ? 1 : 0;
    CHECK(count == c.cardinality());
}

TEST_CASE("coastline extraction validates the threshold") {
    const ProbMask mask{Grid2D(3, 3, 0.5)};
    CHECK_THROWS_AS(coastline_set(mask, 3, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(coastline_set(mask, 3, 1.0), std::invalid_argument);
    CHECK_NOTHROW(coastline_set(mask, 3, 0.5));
}

TEST_CASE("component labeling of empty and diagonal masks") {
    const BinaryMask zero{Grid2D(3, 3, 0.0)};
    CHECK(connected_components_2d(zero, 4).component_count == 0);

    BinaryMask diag{Grid2D(3, 3, 0.0)};
    diag.b.at(0, 0) = 1.0;
    diag.b.at(1, 1) = 1.0;
    CHECK(connected_components_2d(diag, 4).component_count == 2);
    CHECK(connected_components_2d(diag, 8).component_count == 1);
    CHECK_THROWS_AS(connected_components_2d(diag, 6), std::invalid_argument);
}

TEST_CASE("labels are contiguous with consistent areas") {
    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        const BinaryMask mask = random_mask(12, 11, mix_seed(900, seed), 0.45);
        for (int conn : {4, 8}) {
            const ComponentLabeling comps = connected_components_2d(mask, conn);
            CHECK(static_cast<int>(comps.areas.size()) == comps.component_count);
            std::vector<int> counted(comps.component_count, 0);
            int foreground = 0;
            for (std::size_t k = 0; k < mask.b.size(); ++k) {
                const int label = static_cast<int>(comps.labels.values[k]);
                if (mask.b.values[k] == 1.0) {
                    ++foreground;
                    CHECK(label >= 1);
                    CHECK(label <= comps.component_count);
                    ++counted[label - 1];
                } else {
                    CHECK(label == 0);
                }
            }
            CHECK(counted == comps.areas);
            int area_sum = 0;
            for (int a : comps.areas) area_sum += a;
            CHECK(area_sum == foreground);
        }
    }
}

TEST_CASE("component counts agree with the recursive oracle") {
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        const BinaryMask mask = random_mask(16, 16, mix_seed(1000, seed), 0.5);
        for (int conn : {4, 8}) {
            const ComponentLabeling comps = connected_components_2d(mask, conn);
            CHECK(comps.component_count == oracle::component_count(mask.b, conn));
        }
    }
}

TEST_CASE("labels follow row-major first encounter") {
    BinaryMask mask{Grid2D(3, 4, 0.0)};
    mask.b.at(0, 3) = 1.0;  // first in scan order
    mask.b.at(2, 0) = 1.0;
    mask.b.at(2, 1) = 1.0;
    const ComponentLabeling comps = connected_components_2d(mask, 4);
    CHECK(comps.component_count == 2);
    CHECK(comps.labels.at(0, 3) == 1.0);
    CHECK(comps.labels.at(2, 0) == 2.0);
    CHECK(comps.areas == std::vector<int>{1, 2});
}

TEST_CASE("component structure is invariant under transposition") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const BinaryMask mask = random_mask(9, 13, mix_seed(1100, seed));
        const BinaryMask flipped{transpose(mask.b)};
        for (int conn : {4, 8}) {
            const ComponentLabeling a = connected_components_2d(mask, conn);
            const ComponentLabeling b = connected_components_2d(flipped, conn);
            CHECK(a.component_count == b.component_count);
            std::vector<int> areas_a = a.areas;
            std::vector<int> areas_b = b.areas;
            std::sort(areas_a.begin(), areas_a.end());
            std::sort(areas_b.begin(), areas_b.end());
            CHECK(areas_a == areas_b);
        }
    }
}

TEST_CASE("column region counting") {
    CHECK(count_column_regions({0.0, 0.0, 0.0}, 0.5) == 0);
    CHECK(count_column_regions({1.0, 1.0, 0.0, 1.0}, 0.5) == 2);
    CHECK(count_column_regions({}, 0.5) == 0);
    CHECK(count_column_regions({0.5}, 0.5) == 1);
}

TEST_CASE("run counts agree with the transition oracle and reversal") {
    Rng rng(2222);
    for (int t = 0; t < 50; ++t) {
        const int len = 1 + static_cast<int>(rng.next() % 24);
        std::vector<double> column(len);
        for (double& v : column) v = rng.uniform();
        const int runs = count_column_regions(column, 0.5);
        CHECK(runs == oracle::run_count(column, 0.5));
        std::vector<double> reversed(column.rbegin(), column.rend());
        CHECK(runs == count_column_regions(reversed, 0.5));
    }
}

TEST_CASE("grid column extraction") {
    Grid2D g(3, 2);
    g.values = {1, 2, 3, 4, 5, 6};
    CHECK(grid_column(g, 0) == std::vector<double>{1, 3, 5});
    CHECK(grid_column(g, 1) == std::vector<double>{2, 4, 6});
}
