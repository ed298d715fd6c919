#pragma once

#include <string>

#include "coastseg/color.hpp"
#include "coastseg/grid.hpp"
#include "coastseg/morphology.hpp"

namespace coastseg {

// Coefficients of the HSV water-likelihood score and the confidence
// weighting. alpha/beta are the learnable linear coefficients; ref_hsv is the
// reference water point the confidence weights measure distance to, sigma_bw
// the bandwidth of that weighting.
struct HsvPriorParams {
    double alpha_h = 0.0;
    double alpha_s = 0.0;
    double alpha_v = 0.0;
    double beta = 0.0;
    double sigma_bw = 0.2;
    HsvPixel ref_hsv{0.55, 0.45, 0.35};
};

struct LossWeights {
    double lambda_ce = 1.0;
    double lambda_hsv = 0.5;
    double lambda_coast = 0.1;
    double lambda_conn = 0.1;
    double lambda_sea = 0.1;
};

// Per-column connectivity penalty settings. The reported loss uses the hard
// run count; the gradient differentiates a soft rising-edge surrogate with
// temperature tau_soft.
struct ConnConfig {
    int max_regions = 10;
    double tau_soft = 0.1;
    double threshold = 0.5;
};

struct CoastConfig {
    int kernel = 3;
    double threshold = 0.5;
};

// Sea pixels are thresholded water components with area >= min_area.
struct SeaConfig {
    int window = 5;
    int min_area = 16;
    double threshold = 0.5;
    int connectivity = 4;
};

struct LossConfig {
    LossWeights weights;
    HsvPriorParams hsv;
    CoastConfig coast;
    ConnConfig conn;
    SeaConfig sea;
    double clamp_eps = 1e-7;
};

void validate(const HsvPriorParams& params);
void validate(const LossWeights& weights);   // rejects negative coefficients
void validate(const ConnConfig& cfg);
void validate(const LossConfig& cfg);

// A loss value together with its analytic gradient with respect to the mask.
struct TermResult {
    double value = 0.0;
    Grid2D grad;
};

struct LossBundle {
    double l_ce = 0.0;
    double l_hsv = 0.0;
    double l_coast = 0.0;
    double l_conn = 0.0;
    double l_sea = 0.0;
    double l_robust = 0.0;
    Grid2D grad;  // d l_robust / dM
};

// --- HSV supervision -------------------------------------------------------

// P(i,j) = sigmoid(alpha_h*H + alpha_s*S + alpha_v*V + beta)
ProbMask hsv_water_likelihood(const HsvImage& hsv, const HsvPriorParams& params);

// w(i,j) = exp(-d^2 / (2 sigma^2)), d the HSV distance to ref_hsv with the
// hue component taken on the circle.
Grid2D hsv_confidence_weights(const HsvImage& hsv, const HsvPriorParams& params);

// L = (1/HW) sum |m - P|^2 w, gradient (2/HW)(m - P) w. P and w are
// constants with respect to M.
TermResult loss_hsv(const ProbMask& mask, const HsvImage& hsv, const HsvPriorParams& params);

// Gradients of loss_hsv with respect to the learnable (alpha, beta). The
// confidence weights do not receive gradients.
struct HsvParamGrads {
    double alpha_h = 0.0;
    double alpha_s = 0.0;
    double alpha_v = 0.0;
    double beta = 0.0;
};
HsvParamGrads loss_hsv_param_grads(const ProbMask& mask, const HsvImage& hsv,
                                   const HsvPriorParams& params);

// --- coastline smoothness --------------------------------------------------

// L = (1/|C|) sum_{C} ||grad M||^2 over the coastline set; 0 when C is empty.
// C is recomputed from the mask each call and held constant in the gradient.
TermResult loss_coast(const ProbMask& mask, const CoastConfig& cfg);
TermResult loss_coast_with_set(const ProbMask& mask, const CoastlineSet& coast);

// --- column connectivity ---------------------------------------------------

struct ConnResult {
    double hard_value = 0.0;  // reported loss, integer run counts
    double soft_value = 0.0;  // surrogate the gradient differentiates
    Grid2D grad;
};
ConnResult loss_conn(const ProbMask& mask, const ConnConfig& cfg);

// Soft surrogate alone: per column, region count approximated by the sum of
// positive rises of b_i = sigmoid((m_i - threshold)/tau), b_0 rising from 0.
double loss_conn_soft_value(const ProbMask& mask, const ConnConfig& cfg);

// --- sea cleanup -----------------------------------------------------------

// Sea region S used by the cleanup term (union of large-enough thresholded
// water components), as a 0/1 mask.
BinaryMask sea_region(const ProbMask& mask, const SeaConfig& cfg);

// L = (1/|S|) mean neighborhood variance over S; 0 when S is empty. S is
// held constant in the gradient.
TermResult loss_sea(const ProbMask& mask, const SeaConfig& cfg);
TermResult loss_sea_with_region(const ProbMask& mask, const BinaryMask& sea, int window);

// --- cross-entropy ---------------------------------------------------------

// Pixel-wise cross-entropy with m clamped to [eps, 1-eps]. Gradient is zero
// where the clamp is active.
TermResult loss_ce(const ProbMask& mask, const LabelMask& labels, double clamp_eps);

// --- composite -------------------------------------------------------------

LossBundle loss_robust(const ProbMask& mask, const LabelMask& labels, const HsvImage& hsv,
                       const LossConfig& cfg);

// Set memberships captured from a forward pass, for gradient verification
// with frozen sets.
struct FrozenSets {
    CoastlineSet coast;
    BinaryMask sea;
};
FrozenSets freeze_sets(const ProbMask& mask, const LossConfig& cfg);

// Composite value with C and S fixed and the connectivity term replaced by
// its soft surrogate: the scalar function whose gradient loss_robust's grad
// field is. This is what finite differences must be taken against.
double robust_frozen_value(const ProbMask& mask, const LabelMask& labels, const HsvImage& hsv,
                           const LossConfig& cfg, const FrozenSets& sets);

}  // namespace coastseg
