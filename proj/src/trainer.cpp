#include "coastseg/trainer.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numeric>

#include "coastseg/rng.hpp"
#include "coastseg/synth.hpp"

namespace coastseg {

namespace {

constexpr int kParamCount = kFeatureCount + 4;  // theta + (alpha_h, alpha_s, alpha_v, beta)

struct ParamGrad {
    std::array<double, kParamCount> g{};

    void add_scaled(const ParamGrad& other, double scale) {
        for (int c = 0; c < kParamCount; ++c) g[c] += scale * other.g[c];
    }
    double norm() const {
        double acc = 0.0;
        for (double v : g) acc += v * v;
        return std::sqrt(acc);
    }
};

LossConfig effective_loss_config(const TrainConfig& cfg, const HsvPriorParams& params) {
    LossConfig loss = cfg.loss;
    loss.hsv = params;
    if (cfg.ce_only) {
        loss.weights.lambda_hsv = 0.0;
        loss.weights.lambda_coast = 0.0;
        loss.weights.lambda_conn = 0.0;
        loss.weights.lambda_sea = 0.0;
    }
    return loss;
}

// Composite loss and full parameter gradient for one scene.
LossBundle scene_loss_and_grad(const ToySegmenter& model, const Scene& scene,
                               const LossConfig& loss, ParamGrad& grad_out) {
    const ProbMask mask = predict(model, scene.features);
    LossBundle bundle = loss_robust(mask, scene.labels, scene.hsv, loss);

    for (int i = 0; i < mask.height(); ++i) {
        for (int j = 0; j < mask.width(); ++j) {
            const double m = mask.m.at(i, j);
            const double chain = bundle.grad.at(i, j) * m * (1.0 - m);
            if (chain == 0.0) continue;
            const double* px = scene.features.pixel(i, j);
            for (int c = 0; c < kFeatureCount; ++c) grad_out.g[c] += chain * px[c];
        }
    }
    const HsvParamGrads hsv_grads = loss_hsv_param_grads(mask, scene.hsv, loss.hsv);
    grad_out.g[kFeatureCount + 0] += loss.weights.lambda_hsv * hsv_grads.alpha_h;
    grad_out.g[kFeatureCount + 1] += loss.weights.lambda_hsv * hsv_grads.alpha_s;
    grad_out.g[kFeatureCount + 2] += loss.weights.lambda_hsv * hsv_grads.alpha_v;
    grad_out.g[kFeatureCount + 3] += loss.weights.lambda_hsv * hsv_grads.beta;
    return bundle;
}

struct BatchEval {
    double l_robust = 0.0, l_ce = 0.0, l_hsv = 0.0, l_coast = 0.0, l_conn = 0.0, l_sea = 0.0;
    ParamGrad grad;
};

BatchEval batch_loss_and_grad(const ToySegmenter& model, const Dataset& ds,
                              const std::vector<int>& indices, const LossConfig& loss) {
    BatchEval eval;
    const double inv_n = 1.0 / static_cast<double>(indices.size());
    for (int idx : indices) {
        ParamGrad scene_grad;
        const LossBundle bundle = scene_loss_and_grad(model, ds.scenes[idx], loss, scene_grad);
        eval.l_robust += bundle.l_robust * inv_n;
        eval.l_ce += bundle.l_ce * inv_n;
        eval.l_hsv += bundle.l_hsv * inv_n;
        eval.l_coast += bundle.l_coast * inv_n;
        eval.l_conn += bundle.l_conn * inv_n;
        eval.l_sea += bundle.l_sea * inv_n;
        eval.grad.add_scaled(scene_grad, inv_n);
    }
    return eval;
}

void check_finite(const BatchEval& eval, double limit, int epoch) {
    struct Named {
        const char* name;
        double value;
    };
    const Named comps[] = {{"ce", eval.l_ce},     {"hsv", eval.l_hsv}, {"coast", eval.l_coast},
                           {"conn", eval.l_conn}, {"sea", eval.l_sea}, {"robust", eval.l_robust}};
    for (const Named& c : comps) {
        if (!std::isfinite(c.value)) {
            throw TrainDivergenceError(c.name, epoch - 1,
                                       "non-finite loss term '" + std::string(c.name) +
                                           "' at epoch " + std::to_string(epoch));
        }
    }
    if (eval.l_robust > limit) {
        throw TrainDivergenceError("robust", epoch - 1,
                                   "loss exceeded divergence limit at epoch " +
                                       std::to_string(epoch));
    }
}

void apply_update(ToySegmenter& model, const ParamGrad& grad, double lr) {
    for (int c = 0; c < kFeatureCount; ++c) model.theta[c] -= lr * grad.g[c];
    model.hsv_params.alpha_h -= lr * grad.g[kFeatureCount + 0];
    model.hsv_params.alpha_s -= lr * grad.g[kFeatureCount + 1];
    model.hsv_params.alpha_v -= lr * grad.g[kFeatureCount + 2];
    model.hsv_params.beta -= lr * grad.g[kFeatureCount + 3];
}

Metrics mean_val_metrics(const ToySegmenter& model, const Dataset& ds, double threshold) {
    Metrics mean;
    if (ds.val_indices.empty()) return mean;
    for (int idx : ds.val_indices) {
        const ProbMask mask = predict(model, ds.scenes[idx].features);
        const Metrics m = evaluate(mask, ds.scenes[idx].labels, threshold);
        mean.iou += m.iou;
        mean.f1 += m.f1;
        mean.accuracy += m.accuracy;
    }
    const double inv = 1.0 / static_cast<double>(ds.val_indices.size());
    mean.iou *= inv;
    mean.f1 *= inv;
    mean.accuracy *= inv;
    return mean;
}

double trailing_variance(const std::vector<EpochRecord>& rows, int window) {
    const int n = std::min<int>(window, static_cast<int>(rows.size()));
    if (n == 0) return 0.0;
    const std::size_t start = rows.size() - n;
    double mean = 0.0;
    for (std::size_t k = start; k < rows.size(); ++k) mean += rows[k].val_iou;
    mean /= n;
    double acc = 0.0;
    for (std::size_t k = start; k < rows.size(); ++k) {
        const double d = rows[k].val_iou - mean;
        acc += d * d;
    }
    return acc / n;
}

// Circular mean for hue, arithmetic for s/v, over labeled water pixels of the
// training split. Falls back to the configured reference if no water exists.
HsvPixel water_reference(const Dataset& ds, const HsvPixel& fallback) {
    double sin_sum = 0.0, cos_sum = 0.0, s_sum = 0.0, v_sum = 0.0;
    long count = 0;
    constexpr double kTwoPi = 2.0 * 3.14159265358979323846;
    for (int idx : ds.train_indices) {
        const Scene& scene = ds.scenes[idx];
        for (std::size_t k = 0; k < scene.labels.y.size(); ++k) {
            if (scene.labels.y.values[k] == 0.0) continue;
            sin_sum += std::sin(kTwoPi * scene.hsv.h.values[k]);
            cos_sum += std::cos(kTwoPi * scene.hsv.h.values[k]);
            s_sum += scene.hsv.s.values[k];
            v_sum += scene.hsv.v.values[k];
            ++count;
        }
    }
    if (count == 0) return fallback;
    double h = std::atan2(sin_sum, cos_sum) / kTwoPi;
    if (h < 0.0) h += 1.0;
    if (h >= 1.0) h = 0.0;
    return HsvPixel{h, s_sum / count, v_sum / count};
}

}  // namespace

void validate(const TrainConfig& cfg) {
    validate(cfg.loss);
    if (!(cfg.learning_rate > 0.0)) throw std::invalid_argument("learning_rate must be positive");
    if (cfg.epochs < 1) throw std::invalid_argument("epochs must be >= 1");
    if (cfg.batch_size < 0) throw std::invalid_argument("batch_size must be >= 0");
    if (cfg.variance_window < 1) throw std::invalid_argument("variance_window must be >= 1");
    const LossWeights& w = cfg.loss.weights;
    if (!cfg.ce_only && w.lambda_ce == 0.0 && w.lambda_hsv == 0.0 && w.lambda_coast == 0.0 &&
        w.lambda_conn == 0.0 && w.lambda_sea == 0.0) {
        throw std::invalid_argument("at least one loss weight must be positive");
    }
    if (cfg.ce_only && w.lambda_ce == 0.0) {
        throw std::invalid_argument("ce_only training requires lambda_ce > 0");
    }
}

TrainResult train(const Dataset& dataset, const TrainConfig& cfg) {
    validate(cfg);
    if (dataset.train_indices.empty()) {
        throw std::invalid_argument("train: dataset has no training scenes");
    }

    ToySegmenter model;
    model.hsv_params = cfg.loss.hsv;
    if (cfg.auto_reference_hsv) {
        model.hsv_params.ref_hsv = water_reference(dataset, cfg.loss.hsv.ref_hsv);
    }

    Rng shuffle_rng(mix_seed(cfg.seed, 0x7261ULL));
    TrainResult result;
    result.report.epochs.reserve(static_cast<std::size_t>(cfg.epochs));

    for (int epoch = 0; epoch < cfg.epochs; ++epoch) {
        const LossConfig loss = effective_loss_config(cfg, model.hsv_params);
        EpochRecord row;
        row.epoch = epoch;

        if (cfg.batch_size == 0) {
            // full batch: loss and gradient at the pre-update parameters
            const BatchEval eval = batch_loss_and_grad(model, dataset, dataset.train_indices, loss);
            check_finite(eval, cfg.divergence_limit, epoch);
            row.loss_robust = eval.l_robust;
            row.loss_ce = eval.l_ce;
            row.loss_hsv = eval.l_hsv;
            row.loss_coast = eval.l_coast;
            row.loss_conn = eval.l_conn;
            row.loss_sea = eval.l_sea;
            row.grad_norm = eval.grad.norm();
            apply_update(model, eval.grad, cfg.learning_rate);
        } else {
            std::vector<int> order = dataset.train_indices;
            shuffle_rng.shuffle(order);
            for (std::size_t begin = 0; begin < order.size(); begin += cfg.batch_size) {
                const std::size_t end = std::min(order.size(), begin + cfg.batch_size);
                const std::vector<int> batch(order.begin() + begin, order.begin() + end);
                const LossConfig batch_loss = effective_loss_config(cfg, model.hsv_params);
                const BatchEval eval = batch_loss_and_grad(model, dataset, batch, batch_loss);
                check_finite(eval, cfg.divergence_limit, epoch);
                apply_update(model, eval.grad, cfg.learning_rate);
            }
            // post-epoch full-train pass for the reported loss and gradient norm
            const LossConfig post_loss = effective_loss_config(cfg, model.hsv_params);
            const BatchEval eval =
                batch_loss_and_grad(model, dataset, dataset.train_indices, post_loss);
            check_finite(eval, cfg.divergence_limit, epoch);
            row.loss_robust = eval.l_robust;
            row.loss_ce = eval.l_ce;
            row.loss_hsv = eval.l_hsv;
            row.loss_coast = eval.l_coast;
            row.loss_conn = eval.l_conn;
            row.loss_sea = eval.l_sea;
            row.grad_norm = eval.grad.norm();
        }

        const Metrics val = mean_val_metrics(model, dataset, cfg.eval_threshold);
        row.val_iou = val.iou;
        row.val_f1 = val.f1;
        row.val_accuracy = val.accuracy;
        result.report.epochs.push_back(row);
    }

    const EpochRecord& last = result.report.epochs.back();
    TrainSummary& summary = result.report.summary;
    summary.final_iou = last.val_iou;
    summary.final_f1 = last.val_f1;
    summary.final_accuracy = last.val_accuracy;
    summary.late_iou_variance = trailing_variance(result.report.epochs, cfg.variance_window);

    const LossConfig final_loss = effective_loss_config(cfg, model.hsv_params);
    summary.lipschitz_estimate =
        estimate_lipschitz_default(final_loss, cfg.lipschitz_trials, cfg.seed).value;
    const RhoResult rho = rho_correlation(dataset, model.hsv_params);
    summary.rho = rho.rho;
    summary.rho_degenerate = rho.degenerate;

    result.model = model;
    return result;
}

double find_stable_learning_rate(const Dataset& dataset, TrainConfig cfg, int max_halvings) {
    cfg.batch_size = 0;
    for (int attempt = 0; attempt <= max_halvings; ++attempt) {
        bool monotone = true;
        try {
            const TrainResult result = train(dataset, cfg);
            for (std::size_t k = 1; k < result.report.epochs.size(); ++k) {
                if (result.report.epochs[k].loss_robust >
                    result.report.epochs[k - 1].loss_robust + 1e-12) {
                    monotone = false;
                    break;
                }
            }
        } catch (const TrainDivergenceError&) {
            monotone = false;
        }
        if (monotone) return cfg.learning_rate;
        cfg.learning_rate *= 0.5;
    }
    throw std::runtime_error("find_stable_learning_rate: no stable rate found");
}

Metrics evaluate(const ProbMask& mask, const LabelMask& labels, double threshold) {
    if (!mask.m.same_shape(labels.y)) {
        throw std::invalid_argument("evaluate: dimension mismatch");
    }
    long tp = 0, fp = 0, fn = 0, tn = 0;
    for (std::size_t k = 0; k < mask.m.size(); ++k) {
        const bool pred = mask.m.values[k] >= threshold;
        const bool truth = labels.y.values[k] != 0.0;
        if (pred && truth) ++tp;
        else if (pred && !truth) ++fp;
        else if (!pred && truth) ++fn;
        else ++tn;
    }
    Metrics out;
    const long iou_denom = tp + fp + fn;
    out.iou = iou_denom == 0 ? 1.0 : static_cast<double>(tp) / iou_denom;
    const long f1_denom = 2 * tp + fp + fn;
    out.f1 = f1_denom == 0 ? 1.0 : 2.0 * tp / f1_denom;
    out.accuracy = static_cast<double>(tp + tn) / static_cast<double>(mask.m.size());
    return out;
}

// --- gradient checking -----------------------------------------------------

namespace {

double compare_error(double analytic, double fd) {
    const double mag = std::max(std::fabs(analytic), std::fabs(fd));
    const double diff = std::fabs(analytic - fd);
    return mag < 1e-8 ? diff : diff / mag;
}

// max error between an analytic mask-gradient and central finite differences
// of value_fn over every pixel
template <typename ValueFn>
double max_mask_grad_error(const ProbMask& mask, const Grid2D& analytic, double fd_step,
                           ValueFn&& value_fn) {
    ProbMask probe = mask;
    double worst = 0.0;
    for (std::size_t k = 0; k < mask.m.size(); ++k) {
        const double saved = probe.m.values[k];
        probe.m.values[k] = saved + fd_step;
        const double up = value_fn(probe);
        probe.m.values[k] = saved - fd_step;
        const double down = value_fn(probe);
        probe.m.values[k] = saved;
        const double fd = (up - down) / (2.0 * fd_step);
        worst = std::max(worst, compare_error(analytic.values[k], fd));
    }
    return worst;
}

bool term_selected(const std::vector<std::string>& only, const std::string& name) {
    if (only.empty()) return true;
    return std::find(only.begin(), only.end(), name) != only.end();
}

}  // namespace

bool GradCheckReport::passed() const {
    for (const GradCheckTerm& t : terms) {
        if (t.error > tolerance) return false;
    }
    return true;
}

double GradCheckReport::worst() const {
    double w = 0.0;
    for (const GradCheckTerm& t : terms) w = std::max(w, t.error);
    return w;
}

std::string GradCheckReport::failing_terms() const {
    std::string out;
    for (const GradCheckTerm& t : terms) {
        if (t.error > tolerance) {
            if (!out.empty()) out += ", ";
            out += t.name;
        }
    }
    return out;
}

GradCheckReport gradcheck(const ToySegmenter& model, const Scene& scene, const LossConfig& cfg,
                          double tolerance, double fd_step,
                          const std::vector<std::string>& only_terms) {
    GradCheckReport report;
    report.tolerance = tolerance;

    const ProbMask mask = predict(model, scene.features);
    const FrozenSets sets = freeze_sets(mask, cfg);
    const LabelMask& labels = scene.labels;
    const HsvImage& hsv = scene.hsv;

    if (term_selected(only_terms, "ce")) {
        const TermResult term = loss_ce(mask, labels, cfg.clamp_eps);
        report.terms.push_back({"ce", max_mask_grad_error(mask, term.grad, fd_step,
            [&](const ProbMask& m) { return loss_ce(m, labels, cfg.clamp_eps).value; })});
    }
    if (term_selected(only_terms, "hsv")) {
        const TermResult term = loss_hsv(mask, hsv, cfg.hsv);
        report.terms.push_back({"hsv", max_mask_grad_error(mask, term.grad, fd_step,
            [&](const ProbMask& m) { return loss_hsv(m, hsv, cfg.hsv).value; })});
    }
    if (term_selected(only_terms, "coast")) {
        const TermResult term = loss_coast_with_set(mask, sets.coast);
        report.terms.push_back({"coast", max_mask_grad_error(mask, term.grad, fd_step,
            [&](const ProbMask& m) { return loss_coast_with_set(m, sets.coast).value; })});
    }
    if (term_selected(only_terms, "conn")) {
        const ConnResult term = loss_conn(mask, cfg.conn);
        report.terms.push_back({"conn", max_mask_grad_error(mask, term.grad, fd_step,
            [&](const ProbMask& m) { return loss_conn_soft_value(m, cfg.conn); })});
    }
    if (term_selected(only_terms, "sea")) {
        const TermResult term = loss_sea_with_region(mask, sets.sea, cfg.sea.window);
        report.terms.push_back({"sea", max_mask_grad_error(mask, term.grad, fd_step,
            [&](const ProbMask& m) {
                return loss_sea_with_region(m, sets.sea, cfg.sea.window).value;
            })});
    }
    if (term_selected(only_terms, "composite")) {
        const LossBundle bundle = loss_robust(mask, labels, hsv, cfg);
        report.terms.push_back({"composite", max_mask_grad_error(mask, bundle.grad, fd_step,
            [&](const ProbMask& m) {
                return robust_frozen_value(m, labels, hsv, cfg, sets);
            })});
    }
    if (term_selected(only_terms, "params")) {
        // analytic full-parameter gradient via the chain rule
        ParamGrad analytic;
        {
            LossConfig local = cfg;
            local.hsv = model.hsv_params;
            scene_loss_and_grad(model, scene, local, analytic);
        }
        double worst = 0.0;
        for (int c = 0; c < kParamCount; ++c) {
            ToySegmenter probe = model;
            double* slot = nullptr;
            if (c < kFeatureCount) slot = &probe.theta[c];
            else if (c == kFeatureCount + 0) slot = &probe.hsv_params.alpha_h;
            else if (c == kFeatureCount + 1) slot = &probe.hsv_params.alpha_s;
            else if (c == kFeatureCount + 2) slot = &probe.hsv_params.alpha_v;
            else slot = &probe.hsv_params.beta;

            const double saved = *slot;
            auto frozen_value = [&](double v) {
                *slot = v;
                LossConfig local = cfg;
                local.hsv = probe.hsv_params;
                const ProbMask m = predict(probe, scene.features);
                return robust_frozen_value(m, labels, hsv, local, sets);
            };
            const double up = frozen_value(saved + fd_step);
            const double down = frozen_value(saved - fd_step);
            *slot = saved;
            const double fd = (up - down) / (2.0 * fd_step);
            worst = std::max(worst, compare_error(analytic.g[c], fd));
        }
        report.terms.push_back({"params", worst});
    }
    return report;
}

Scene make_check_scene(int height, int width, std::uint64_t seed) {
    SceneSpec spec;
    spec.height = height;
    spec.width = width;
    spec.seed = seed;
    spec.num_sinusoids = static_cast<int>(seed % 4);
    spec.hsv_jitter = 0.08;
    spec.noise_level = 0.03;
    const GeneratedScene gen = generate(spec);
    Scene scene;
    scene.id = "check";
    scene.image = gen.image;
    scene.labels = gen.labels;
    scene.seed = seed;
    scene.family = spec.num_sinusoids;
    attach_derived_channels(scene);
    return scene;
}

ToySegmenter make_random_model(std::uint64_t seed) {
    Rng rng(mix_seed(seed, 0x3A0DULL));
    ToySegmenter model;
    for (int c = 0; c < kFeatureCount; ++c) model.theta[c] = rng.uniform(-1.0, 1.0);
    model.hsv_params.alpha_h = rng.uniform(-1.0, 1.0);
    model.hsv_params.alpha_s = rng.uniform(-1.0, 1.0);
    model.hsv_params.alpha_v = rng.uniform(-1.0, 1.0);
    model.hsv_params.beta = rng.uniform(-0.5, 0.5);
    model.hsv_params.ref_hsv = HsvPixel{rng.uniform(0.0, 0.999), rng.uniform(), rng.uniform()};
    return model;
}

// --- diagnostics -----------------------------------------------------------

LipschitzEstimate estimate_lipschitz(const LabelMask& labels, const HsvImage& hsv,
                                     const LossConfig& cfg, int trials, std::uint64_t seed) {
    if (trials < 1) throw std::invalid_argument("estimate_lipschitz: trials must be >= 1");
    const int h = labels.height();
    const int w = labels.width();
    Rng rng(mix_seed(seed, 0x11B5ULL));

    LipschitzEstimate est;
    est.running_max.reserve(static_cast<std::size_t>(trials));
    ProbMask m1{Grid2D(h, w)};
    ProbMask m2{Grid2D(h, w)};
    for (int t = 0; t < trials; ++t) {
        double norm_sq = 0.0;
        for (std::size_t k = 0; k < m1.m.size(); ++k) {
            m1.m.values[k] = rng.uniform();
            m2.m.values[k] = rng.uniform();
            const double d = m1.m.values[k] - m2.m.values[k];
            norm_sq += d * d;
        }
        if (norm_sq > 1e-24) {
            const double l1 = loss_robust(m1, labels, hsv, cfg).l_robust;
            const double l2 = loss_robust(m2, labels, hsv, cfg).l_robust;
            const double ratio = std::fabs(l1 - l2) / std::sqrt(norm_sq);
            est.value = std::max(est.value, ratio);
        }
        est.running_max.push_back(est.value);
    }
    return est;
}

LipschitzEstimate estimate_lipschitz_default(const LossConfig& cfg, int trials,
                                             std::uint64_t seed) {
    const Scene aux = make_check_scene(16, 16, mix_seed(seed, 0xA0CULL));
    return estimate_lipschitz(aux.labels, aux.hsv, cfg, trials, seed);
}

RhoResult rho_correlation(const Dataset& dataset, const HsvPriorParams& params) {
    double sum_p = 0.0, sum_y = 0.0, sum_pp = 0.0, sum_yy = 0.0, sum_py = 0.0;
    long n = 0;
    for (const Scene& scene : dataset.scenes) {
        const ProbMask prior = hsv_water_likelihood(scene.hsv, params);
        for (std::size_t k = 0; k < prior.m.size(); ++k) {
            const double p = prior.m.values[k];
            const double y = scene.labels.y.values[k];
            sum_p += p;
            sum_y += y;
            sum_pp += p * p;
            sum_yy += y * y;
            sum_py += p * y;
            ++n;
        }
    }
    RhoResult out;
    if (n == 0) {
        out.degenerate = true;
        return out;
    }
    const double var_p = sum_pp - sum_p * sum_p / n;
    const double var_y = sum_yy - sum_y * sum_y / n;
    if (var_p <= 1e-24 || var_y <= 1e-24) {
        out.degenerate = true;
        return out;
    }
    out.rho = (sum_py - sum_p * sum_y / n) / std::sqrt(var_p * var_y);
    return out;
}

std::vector<AblationRow> ablate(const Dataset& dataset, const TrainConfig& cfg) {
    struct Variant {
        const char* name;
        double LossWeights::* zeroed;  // nullptr = unmodified, all = ce_only
        bool ce_only;
    };
    const Variant variants[] = {
        {"full", nullptr, false},
        {"no_hsv", &LossWeights::lambda_hsv, false},
        {"no_coast", &LossWeights::lambda_coast, false},
        {"no_conn", &LossWeights::lambda_conn, false},
        {"no_sea", &LossWeights::lambda_sea, false},
        {"ce_only", nullptr, true},
    };

    std::vector<AblationRow> rows;
    double full_iou = 0.0;
    for (const Variant& variant : variants) {
        TrainConfig run_cfg = cfg;
        run_cfg.ce_only = variant.ce_only;
        if (variant.zeroed) run_cfg.loss.weights.*(variant.zeroed) = 0.0;

        const TrainResult result = train(dataset, run_cfg);
        AblationRow row;
        row.config_name = variant.name;
        row.seed = run_cfg.seed;
        row.weights = run_cfg.loss.weights;
        if (variant.ce_only) {
            row.weights.lambda_hsv = 0.0;
            row.weights.lambda_coast = 0.0;
            row.weights.lambda_conn = 0.0;
            row.weights.lambda_sea = 0.0;
        }
        row.final_iou = result.report.summary.final_iou;
        row.late_iou_variance = result.report.summary.late_iou_variance;
        if (rows.empty()) full_iou = row.final_iou;
        row.delta_vs_full = full_iou - row.final_iou;
        rows.push_back(row);
    }
    return rows;
}

}  // namespace coastseg
