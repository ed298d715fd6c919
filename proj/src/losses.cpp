#include "coastseg/losses.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "coastseg/grid_ops.hpp"

namespace coastseg {

namespace {

double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

void require_same_shape(const Grid2D& a, const Grid2D& b, const char* what) {
    if (!a.same_shape(b)) {
        throw std::invalid_argument(std::string(what) + ": dimension mismatch");
    }
}

}  // namespace

void validate(const HsvPriorParams& params) {
    if (!(params.sigma_bw > 0.0)) {
        throw std::invalid_argument("sigma_bw must be positive");
    }
    if (!(params.ref_hsv.h >= 0.0 && params.ref_hsv.h < 1.0) ||
        !(params.ref_hsv.s >= 0.0 && params.ref_hsv.s <= 1.0) ||
        !(params.ref_hsv.v >= 0.0 && params.ref_hsv.v <= 1.0)) {
        throw std::invalid_argument("ref_hsv outside channel ranges");
    }
}

void validate(const LossWeights& weights) {
    if (weights.lambda_ce < 0.0 || weights.lambda_hsv < 0.0 || weights.lambda_coast < 0.0 ||
        weights.lambda_conn < 0.0 || weights.lambda_sea < 0.0) {
        throw std::invalid_argument("loss weights must be non-negative");
    }
}

void validate(const ConnConfig& cfg) {
    if (cfg.max_regions < 1) throw std::invalid_argument("max_regions must be >= 1");
    if (!(cfg.tau_soft > 0.0)) throw std::invalid_argument("tau_soft must be positive");
    if (!(cfg.threshold > 0.0 && cfg.threshold < 1.0)) {
        throw std::invalid_argument("conn threshold must lie in (0,1)");
    }
}

void validate(const LossConfig& cfg) {
    validate(cfg.weights);
    validate(cfg.hsv);
    validate(cfg.conn);
    if (cfg.coast.kernel < 1 || cfg.coast.kernel % 2 == 0) {
        throw std::invalid_argument("coast kernel must be odd and positive");
    }
    if (cfg.sea.window < 1 || cfg.sea.window % 2 == 0) {
        throw std::invalid_argument("sea window must be odd and positive");
    }
    if (cfg.sea.min_area < 1) throw std::invalid_argument("sea min_area must be >= 1");
    if (!(cfg.clamp_eps > 0.0 && cfg.clamp_eps < 0.5)) {
        throw std::invalid_argument("clamp_eps must lie in (0, 0.5)");
    }
}

ProbMask hsv_water_likelihood(const HsvImage& hsv, const HsvPriorParams& params) {
    const int h = hsv.height();
    const int w = hsv.width();
    ProbMask out{Grid2D(h, w)};
    for (std::size_t k = 0; k < out.m.size(); ++k) {
        const double score = params.alpha_h * hsv.h.values[k] + params.alpha_s * hsv.s.values[k] +
                             params.alpha_v * hsv.v.values[k] + params.beta;
        out.m.values[k] = sigmoid(score);
    }
    return out;
}

Grid2D hsv_confidence_weights(const HsvImage& hsv, const HsvPriorParams& params) {
    const int h = hsv.height();
    const int w = hsv.width();
    const double inv_two_sigma_sq = 1.0 / (2.0 * params.sigma_bw * params.sigma_bw);
    Grid2D out(h, w);
    for (std::size_t k = 0; k < out.size(); ++k) {
        const HsvPixel px{hsv.h.values[k], hsv.s.values[k], hsv.v.values[k]};
        const double d = hsv_distance(px, params.ref_hsv);
        out.values[k] = std::exp(-d * d * inv_two_sigma_sq);
    }
    return out;
}

TermResult loss_hsv(const ProbMask& mask, const HsvImage& hsv, const HsvPriorParams& params) {
    require_same_shape(mask.m, hsv.h, "loss_hsv");
    const ProbMask prior = hsv_water_likelihood(hsv, params);
    const Grid2D weights = hsv_confidence_weights(hsv, params);
    const double inv_hw = 1.0 / static_cast<double>(mask.m.size());

    TermResult res;
    res.grad = Grid2D(mask.height(), mask.width(), 0.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < mask.m.size(); ++k) {
        const double diff = mask.m.values[k] - prior.m.values[k];
        sum += diff * diff * weights.values[k];
        res.grad.values[k] = 2.0 * inv_hw * diff * weights.values[k];
    }
    res.value = sum * inv_hw;
    return res;
}

HsvParamGrads loss_hsv_param_grads(const ProbMask& mask, const HsvImage& hsv,
                                   const HsvPriorParams& params) {
    require_same_shape(mask.m, hsv.h, "loss_hsv_param_grads");
    const ProbMask prior = hsv_water_likelihood(hsv, params);
    const Grid2D weights = hsv_confidence_weights(hsv, params);
    const double inv_hw = 1.0 / static_cast<double>(mask.m.size());

    HsvParamGrads grads;
    for (std::size_t k = 0; k < mask.m.size(); ++k) {
        const double p = prior.m.values[k];
        // dL/d(score) = -2 (m - P) w P (1 - P) / HW
        const double dscore = -2.0 * inv_hw * (mask.m.values[k] - p) * weights.values[k] * p * (1.0 - p);
        grads.alpha_h += dscore * hsv.h.values[k];
        grads.alpha_s += dscore * hsv.s.values[k];
        grads.alpha_v += dscore * hsv.v.values[k];
        grads.beta += dscore;
    }
    return grads;
}

TermResult loss_coast(const ProbMask& mask, const CoastConfig& cfg) {
    return loss_coast_with_set(mask, coastline_set(mask, cfg.kernel, cfg.threshold));
}

TermResult loss_coast_with_set(const ProbMask& mask, const CoastlineSet& coast) {
    const int h = mask.height();
    const int w = mask.width();
    TermResult res;
    res.grad = Grid2D(h, w, 0.0);
    if (coast.pixels.empty()) return res;

    const auto [gx, gy] = spatial_gradient(mask);
    const double inv_c = 1.0 / coast.cardinality();
    double sum = 0.0;
    for (const auto& [i, j] : coast.pixels) {
        const double dx = gx.at(i, j);
        const double dy = gy.at(i, j);
        sum += dx * dx + dy * dy;
        if (j + 1 < w) {
            res.grad.at(i, j + 1) += 2.0 * inv_c * dx;
            res.grad.at(i, j) -= 2.0 * inv_c * dx;
        }
        if (i + 1 < h) {
            res.grad.at(i + 1, j) += 2.0 * inv_c * dy;
            res.grad.at(i, j) -= 2.0 * inv_c * dy;
        }
    }
    res.value = sum * inv_c;
    return res;
}

ConnResult loss_conn(const ProbMask& mask, const ConnConfig& cfg) {
    validate(cfg);
    const int h = mask.height();
    const int w = mask.width();
    const double inv_max = 1.0 / cfg.max_regions;
    const double inv_tau = 1.0 / cfg.tau_soft;

    ConnResult res;
    res.grad = Grid2D(h, w, 0.0);
    std::vector<double> soft(static_cast<std::size_t>(h));
    for (int j = 0; j < w; ++j) {
        // hard count: maximal runs of m >= threshold
        int runs = 0;
        bool inside = false;
        for (int i = 0; i < h; ++i) {
            const bool water = mask.m.at(i, j) >= cfg.threshold;
            if (water && !inside) ++runs;
            inside = water;
        }
        res.hard_value += std::max(0.0, (runs - 1) * inv_max);

        // soft count: positive rises of the sigmoid-binarized column
        for (int i = 0; i < h; ++i) {
            soft[i] = sigmoid((mask.m.at(i, j) - cfg.threshold) * inv_tau);
        }
        double soft_count = 0.0;
        for (int i = 0; i < h; ++i) {
            const double prev = i == 0 ? 0.0 : soft[i - 1];
            if (soft[i] > prev) soft_count += soft[i] - prev;
        }
        const double column_soft = (soft_count - 1.0) * inv_max;
        res.soft_value += std::max(0.0, column_soft);

        if (column_soft > 0.0) {
            for (int i = 0; i < h; ++i) {
                const double prev = i == 0 ? 0.0 : soft[i - 1];
                double dcount = 0.0;
                if (soft[i] > prev) dcount += 1.0;                       // own rise
                if (i + 1 < h && soft[i + 1] > soft[i]) dcount -= 1.0;   // next rise
                if (dcount != 0.0) {
                    const double db = soft[i] * (1.0 - soft[i]) * inv_tau;
                    res.grad.at(i, j) += inv_max * dcount * db;
                }
            }
        }
    }
    return res;
}

double loss_conn_soft_value(const ProbMask& mask, const ConnConfig& cfg) {
    return loss_conn(mask, cfg).soft_value;
}

BinaryMask sea_region(const ProbMask& mask, const SeaConfig& cfg) {
    const BinaryMask water = binarize(mask, cfg.threshold);
    const ComponentLabeling comps = connected_components_2d(water, cfg.connectivity);
    BinaryMask sea{Grid2D(mask.height(), mask.width(), 0.0)};
    for (std::size_t k = 0; k < sea.b.size(); ++k) {
        const int label = static_cast<int>(comps.labels.values[k]);
        if (label > 0 && comps.areas[label - 1] >= cfg.min_area) {
            sea.b.values[k] = 1.0;
        }
    }
    return sea;
}

TermResult loss_sea(const ProbMask& mask, const SeaConfig& cfg) {
    return loss_sea_with_region(mask, sea_region(mask, cfg), cfg.window);
}

TermResult loss_sea_with_region(const ProbMask& mask, const BinaryMask& sea, int window) {
    require_same_shape(mask.m, sea.b, "loss_sea");
    if (window < 1 || window % 2 == 0) {
        throw std::invalid_argument("sea window must be odd and positive");
    }
    const int h = mask.height();
    const int w = mask.width();
    const int r = window / 2;

    TermResult res;
    res.grad = Grid2D(h, w, 0.0);
    int region_size = 0;
    for (double v : sea.b.values) {
        if (v != 0.0) ++region_size;
    }
    if (region_size == 0) return res;

    const Grid2D variance = neighborhood_variance(mask, window);
    const Grid2D mean = neighborhood_mean(mask.m, window);
    const double inv_s = 1.0 / region_size;

    double sum = 0.0;
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            if (sea.b.at(i, j) == 0.0) continue;
            sum += variance.at(i, j);
            // dVar(p)/dm(q) = (2/n)(m(q) - mean(p)) for q in the clipped window
            const int i0 = std::max(0, i - r), i1 = std::min(h - 1, i + r);
            const int j0 = std::max(0, j - r), j1 = std::min(w - 1, j + r);
            const int n = (i1 - i0 + 1) * (j1 - j0 + 1);
            const double scale = 2.0 * inv_s / n;
            for (int ii = i0; ii <= i1; ++ii) {
                for (int jj = j0; jj <= j1; ++jj) {
                    res.grad.at(ii, jj) += scale * (mask.m.at(ii, jj) - mean.at(i, j));
                }
            }
        }
    }
    res.value = sum * inv_s;
    return res;
}

TermResult loss_ce(const ProbMask& mask, const LabelMask& labels, double clamp_eps) {
    require_same_shape(mask.m, labels.y, "loss_ce");
    if (!(clamp_eps > 0.0 && clamp_eps < 0.5)) {
        throw std::invalid_argument("clamp_eps must lie in (0, 0.5)");
    }
    const double inv_hw = 1.0 / static_cast<double>(mask.m.size());
    TermResult res;
    res.grad = Grid2D(mask.height(), mask.width(), 0.0);
    double sum = 0.0;
    for (std::size_t k = 0; k < mask.m.size(); ++k) {
        const double m = mask.m.values[k];
        const double mc = std::clamp(m, clamp_eps, 1.0 - clamp_eps);
        const double y = labels.y.values[k];
        sum -= y * std::log(mc) + (1.0 - y) * std::log(1.0 - mc);
        if (m >= clamp_eps && m <= 1.0 - clamp_eps) {
            res.grad.values[k] = inv_hw * (mc - y) / (mc * (1.0 - mc));
        }
    }
    res.value = sum * inv_hw;
    return res;
}

LossBundle loss_robust(const ProbMask& mask, const LabelMask& labels, const HsvImage& hsv,
                       const LossConfig& cfg) {
    validate(cfg);
    const TermResult ce = loss_ce(mask, labels, cfg.clamp_eps);
    const TermResult hsv_term = loss_hsv(mask, hsv, cfg.hsv);
    const TermResult coast = loss_coast(mask, cfg.coast);
    const ConnResult conn = loss_conn(mask, cfg.conn);
    const TermResult sea = loss_sea(mask, cfg.sea);

    LossBundle bundle;
    bundle.l_ce = ce.value;
    bundle.l_hsv = hsv_term.value;
    bundle.l_coast = coast.value;
    bundle.l_conn = conn.hard_value;
    bundle.l_sea = sea.value;
    const LossWeights& w = cfg.weights;
    bundle.l_robust = w.lambda_ce * bundle.l_ce + w.lambda_hsv * bundle.l_hsv +
                      w.lambda_coast * bundle.l_coast + w.lambda_conn * bundle.l_conn +
                      w.lambda_sea * bundle.l_sea;

    bundle.grad = Grid2D(mask.height(), mask.width(), 0.0);
    for (std::size_t k = 0; k < bundle.grad.size(); ++k) {
        bundle.grad.values[k] = w.lambda_ce * ce.grad.values[k] +
                                w.lambda_hsv * hsv_term.grad.values[k] +
                                w.lambda_coast * coast.grad.values[k] +
                                w.lambda_conn * conn.grad.values[k] +
                                w.lambda_sea * sea.grad.values[k];
    }
    return bundle;
}

FrozenSets freeze_sets(const ProbMask& mask, const LossConfig& cfg) {
    return FrozenSets{coastline_set(mask, cfg.coast.kernel, cfg.coast.threshold),
                      sea_region(mask, cfg.sea)};
}

double robust_frozen_value(const ProbMask& mask, const LabelMask& labels, const HsvImage& hsv,
                           const LossConfig& cfg, const FrozenSets& sets) {
    const LossWeights& w = cfg.weights;
    double value = 0.0;
    value += w.lambda_ce * loss_ce(mask, labels, cfg.clamp_eps).value;
    value += w.lambda_hsv * loss_hsv(mask, hsv, cfg.hsv).value;
    value += w.lambda_coast * loss_coast_with_set(mask, sets.coast).value;
    value += w.lambda_conn * loss_conn_soft_value(mask, cfg.conn);
    value += w.lambda_sea * loss_sea_with_region(mask, sets.sea, cfg.sea.window).value;
    return value;
}

}  // namespace coastseg
