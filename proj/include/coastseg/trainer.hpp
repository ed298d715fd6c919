#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "coastseg/dataset.hpp"
#include "coastseg/losses.hpp"
#include "coastseg/model.hpp"

namespace coastseg {

struct TrainConfig {
    LossConfig loss;
    double learning_rate = 1.0;
    int epochs = 200;
    int batch_size = 8;  // 0 = full batch
    std::uint64_t seed = 0;
    int variance_window = 20;       // trailing epochs for the stability metric
    double eval_threshold = 0.5;
    double divergence_limit = 1e6;
    bool ce_only = false;           // zero every auxiliary weight
    bool auto_reference_hsv = true; // ref_hsv from labeled train water pixels
    int lipschitz_trials = 1000;
};

void validate(const TrainConfig& cfg);

struct EpochRecord {
    int epoch = 0;
    double loss_robust = 0.0;
    double loss_ce = 0.0;
    double loss_hsv = 0.0;
    double loss_coast = 0.0;
    double loss_conn = 0.0;
    double loss_sea = 0.0;
    double grad_norm = 0.0;
    double val_iou = 0.0;
    double val_f1 = 0.0;
    double val_accuracy = 0.0;
};

struct TrainSummary {
    double final_iou = 0.0;
    double final_f1 = 0.0;
    double final_accuracy = 0.0;
    double late_iou_variance = 0.0;
    double lipschitz_estimate = 0.0;
    double rho = 0.0;
    bool rho_degenerate = false;
};

struct TrainReport {
    std::vector<EpochRecord> epochs;
    TrainSummary summary;
};

struct TrainResult {
    ToySegmenter model;
    TrainReport report;
};

// Raised when the objective becomes non-finite or exceeds the divergence
// limit; names the offending term and the last finite epoch.
class TrainDivergenceError : public std::runtime_error {
public:
    TrainDivergenceError(const std::string& term, int last_finite_epoch, const std::string& msg)
        : std::runtime_error(msg), term_(term), last_finite_epoch_(last_finite_epoch) {}
    const std::string& term() const { return term_; }
    int last_finite_epoch() const { return last_finite_epoch_; }

private:
    std::string term_;
    int last_finite_epoch_;
};

// Gradient descent on the composite objective, full-batch when batch_size is
// 0, otherwise mini-batches reshuffled each epoch. Deterministic per seed.
TrainResult train(const Dataset& dataset, const TrainConfig& cfg);

// Halves the learning rate until full-batch training shows non-increasing
// loss across epochs (1e-12 slack). Throws when max_halvings is exhausted.
double find_stable_learning_rate(const Dataset& dataset, TrainConfig cfg, int max_halvings = 20);

// --- metrics ---------------------------------------------------------------

struct Metrics {
    double iou = 0.0;
    double f1 = 0.0;
    double accuracy = 0.0;
};

// Binarize at threshold, then confusion-matrix metrics. Empty-union IoU and
// empty-denominator F1 are both 1 by convention.
Metrics evaluate(const ProbMask& mask, const LabelMask& labels, double threshold);

// --- gradient checking -----------------------------------------------------

struct GradCheckTerm {
    std::string name;
    double error = 0.0;  // relative, or absolute when both sides are ~0
};

struct GradCheckReport {
    std::vector<GradCheckTerm> terms;
    double tolerance = 0.0;
    bool passed() const;
    double worst() const;
    std::string failing_terms() const;
};

// Compares every analytic gradient (per-term dL/dM, composite dL/dM, and the
// full parameter gradient) against central finite differences, with set
// memberships frozen during perturbation. fd_step defaults to 1e-5.
GradCheckReport gradcheck(const ToySegmenter& model, const Scene& scene, const LossConfig& cfg,
                          double tolerance, double fd_step = 1e-5,
                          const std::vector<std::string>& only_terms = {});

// Seeded instance builders for gradient checking and diagnostics.
Scene make_check_scene(int height, int width, std::uint64_t seed);
ToySegmenter make_random_model(std::uint64_t seed);

// --- convergence / hypothesis-space diagnostics ----------------------------

struct LipschitzEstimate {
    double value = 0.0;
    std::vector<double> running_max;  // one entry per trial
};

// Max of |L(M1)-L(M2)| / ||M1-M2||_2 over seeded random mask pairs on fixed
// auxiliary inputs.
LipschitzEstimate estimate_lipschitz(const LabelMask& labels, const HsvImage& hsv,
                                     const LossConfig& cfg, int trials, std::uint64_t seed);

// Convenience variant on a synthesized 16x16 auxiliary scene.
LipschitzEstimate estimate_lipschitz_default(const LossConfig& cfg, int trials,
                                             std::uint64_t seed);

struct RhoResult {
    double rho = 0.0;
    bool degenerate = false;  // either variable constant; rho reported as 0
};

// Pearson correlation between the HSV water likelihood and the true labels
// over every pixel of the dataset.
RhoResult rho_correlation(const Dataset& dataset, const HsvPriorParams& params);

// --- ablation --------------------------------------------------------------

struct AblationRow {
    std::string config_name;
    std::uint64_t seed = 0;
    LossWeights weights;
    double final_iou = 0.0;
    double late_iou_variance = 0.0;
    double delta_vs_full = 0.0;  // full-row IoU minus this row's IoU
};

// Leave-one-component-out protocol: {full, -hsv, -coast, -conn, -sea,
// ce-only}, all trained with identical seeds.
std::vector<AblationRow> ablate(const Dataset& dataset, const TrainConfig& cfg);

}  // namespace coastseg
