#include <algorithm>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "coastseg/config.hpp"
#include "coastseg/dataset_io.hpp"
#include "coastseg/manifest.hpp"
#include "coastseg/netpbm.hpp"
#include "coastseg/postprocess.hpp"
#include "coastseg/reports.hpp"
#include "coastseg/rng.hpp"
#include "coastseg/synth.hpp"
#include "coastseg/textio.hpp"
#include "coastseg/trainer.hpp"

namespace {

using namespace coastseg;

constexpr int kExitOk = 0;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;
constexpr int kExitNumeric = 4;

int run_cli(const std::vector<std::string>& tokens);

// Effective options: defaults, then the config file, then --set overrides.
// Dedicated flags are applied by each command afterwards, so flags win.
struct Options {
    TrainConfig train;
    SceneSpec scene;
    PostprocConfig postproc;

    std::string config_path;
    std::vector<std::string> overrides;

    void merge() {
        ConfigMap merged;
        if (!config_path.empty()) merged = load_config(config_path);
        for (const std::string& kv : overrides) {
            const std::size_t eq = kv.find('=');
            if (eq == std::string::npos || eq == 0) {
                throw std::invalid_argument("--set expects key=value, got '" + kv + "'");
            }
            merged.set(kv.substr(0, eq), kv.substr(eq + 1));
        }
        apply_config(merged, train, scene, postproc);
    }
};

void add_common_options(CLI::App* cmd, Options& opts) {
    cmd->add_option("--config", opts.config_path, "key=value configuration file");
    cmd->add_option("--set", opts.overrides,
                    "configuration override key=value (repeatable, wins over --config)");
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void finish_manifest(RunManifest& manifest, const Options& opts, const std::string& out_dir,
                     const Stopwatch& watch, const std::vector<std::string>& tokens) {
    manifest.args = tokens;
    manifest.config = snapshot(opts.train, opts.scene, opts.postproc);
    manifest.duration_seconds = watch.seconds();
    write_manifest(out_dir + "/run_manifest.txt", manifest);
}

// --- synth ------------------------------------------------------------------

struct SynthArgs {
    Options opts;
    std::string out_dir;
    int count = 40;
    double split = 0.8;
    std::uint64_t seed = 0;
};

int cmd_synth(const SynthArgs& args, const std::vector<std::string>& tokens) {
    const Stopwatch watch;
    validate(args.opts.scene);
    if (args.count < 5) throw std::invalid_argument("--count must be >= 5");
    if (!(args.split > 0.0 && args.split < 1.0)) {
        throw std::invalid_argument("--split must lie in (0,1)");
    }

    const Dataset dataset = make_benchmark(args.opts.scene, args.count, args.split, args.seed);
    save_dataset(args.out_dir, dataset);

    RunManifest manifest;
    manifest.command = "synth";
    manifest.seed = args.seed;
    if (!args.opts.config_path.empty()) manifest.inputs.push_back(args.opts.config_path);
    for (int i = 0; i < dataset.size(); ++i) {
        char buf[32];
        std::snprintf(buf, sizeof(buf), "scene_%03d", i);
        manifest.outputs.push_back(std::string(buf) + ".ppm");
        manifest.outputs.push_back(std::string(buf) + "_labels.pgm");
    }
    manifest.outputs.push_back(kDatasetManifestName);
    finish_manifest(manifest, args.opts, args.out_dir, watch, tokens);

    std::printf("synth: wrote %d scenes (%zu train / %zu val) to %s\n", dataset.size(),
                dataset.train_indices.size(), dataset.val_indices.size(), args.out_dir.c_str());
    return kExitOk;
}

// --- train ------------------------------------------------------------------

struct TrainArgs {
    Options opts;
    std::string data_dir;
    std::string out_dir;
};

int cmd_train(const TrainArgs& args, const std::vector<std::string>& tokens) {
    const Stopwatch watch;
    validate(args.opts.train);
    const Dataset dataset = load_dataset(args.data_dir);

    TrainResult result;
    try {
        result = train(dataset, args.opts.train);
    } catch (const TrainDivergenceError& e) {
        std::fprintf(stderr, "train: diverged in term '%s', last finite epoch %d\n",
                     e.term().c_str(), e.last_finite_epoch());
        throw;
    }

    std::filesystem::create_directories(args.out_dir);
    save_model(args.out_dir + "/model.txt", result.model);
    write_train_report_csv(args.out_dir + "/report.csv", result.report);
    write_train_summary(args.out_dir + "/summary.txt", result.report.summary);

    RunManifest manifest;
    manifest.command = "train";
    manifest.seed = args.opts.train.seed;
    manifest.inputs.push_back(args.data_dir);
    if (!args.opts.config_path.empty()) manifest.inputs.push_back(args.opts.config_path);
    manifest.outputs = {"model.txt", "report.csv", "summary.txt"};
    finish_manifest(manifest, args.opts, args.out_dir, watch, tokens);

    const TrainSummary& s = result.report.summary;
    std::printf("train: %zu epochs, final val IoU %.4f, late IoU variance %.3g\n",
                result.report.epochs.size(), s.final_iou, s.late_iou_variance);
    return kExitOk;
}

// --- eval -------------------------------------------------------------------

struct EvalArgs {
    Options opts;
    std::string data_dir;
    std::string out_dir;
    std::string model_path;
    std::string pred_dir;
    std::string split = "all";
    double threshold = 0.5;
    bool postprocess = false;
};

int cmd_eval(const EvalArgs& args, const std::vector<std::string>& tokens) {
    const Stopwatch watch;
    if (args.model_path.empty() == args.pred_dir.empty()) {
        throw std::invalid_argument("eval: provide exactly one of --model / --pred-dir");
    }
    if (args.split != "all" && args.split != "train" && args.split != "val") {
        throw std::invalid_argument("eval: --split must be one of all/train/val");
    }
    validate(args.opts.postproc);

    const Dataset dataset = load_dataset(args.data_dir);
    ToySegmenter model;
    if (!args.model_path.empty()) model = load_model(args.model_path);

    std::vector<int> selected;
    if (args.split == "train") {
        selected = dataset.train_indices;
    } else if (args.split == "val") {
        selected = dataset.val_indices;
    } else {
        for (int i = 0; i < dataset.size(); ++i) selected.push_back(i);
    }

    std::filesystem::create_directories(args.out_dir);
    std::vector<EvalRow> rows;
    std::vector<std::string> outputs;
    for (int idx : selected) {
        const Scene& scene = dataset.scenes[idx];
        ProbMask mask;
        if (!args.model_path.empty()) {
            mask = predict(model, scene.features);
        } else {
            mask = read_prob_mask(args.pred_dir + "/" + scene.id + "_pred.pgm");
        }

        EvalRow row;
        row.scene_id = scene.id;
        if (args.postprocess) {
            const BinaryMask refined = refine(mask, args.opts.postproc);
            const ProbMask refined_mask{refined.b};
            row.metrics = evaluate(refined_mask, scene.labels, 0.5);
            const std::string name = scene.id + "_refined.pgm";
            write_label_mask(args.out_dir + "/" + name, LabelMask{refined.b});
            outputs.push_back(name);
        } else {
            row.metrics = evaluate(mask, scene.labels, args.threshold);
        }
        rows.push_back(row);
    }
    write_eval_csv(args.out_dir + "/metrics.csv", rows);
    outputs.insert(outputs.begin(), "metrics.csv");

    RunManifest manifest;
    manifest.command = "eval";
    manifest.seed = args.opts.train.seed;
    manifest.inputs.push_back(args.data_dir);
    if (!args.model_path.empty()) manifest.inputs.push_back(args.model_path);
    if (!args.pred_dir.empty()) manifest.inputs.push_back(args.pred_dir);
    if (!args.opts.config_path.empty()) manifest.inputs.push_back(args.opts.config_path);
    manifest.outputs = outputs;
    finish_manifest(manifest, args.opts, args.out_dir, watch, tokens);

    std::printf("eval: %zu scenes, wrote %s/metrics.csv\n", rows.size(), args.out_dir.c_str());
    return kExitOk;
}

// --- ablate -----------------------------------------------------------------

struct AblateArgs {
    Options opts;
    std::string data_dir;
    std::string out_dir;
};

int cmd_ablate(const AblateArgs& args, const std::vector<std::string>& tokens) {
    const Stopwatch watch;
    validate(args.opts.train);
    const Dataset dataset = load_dataset(args.data_dir);
    const std::vector<AblationRow> rows = ablate(dataset, args.opts.train);

    std::filesystem::create_directories(args.out_dir);
    write_ablation_csv(args.out_dir + "/ablation.csv", rows);

    RunManifest manifest;
    manifest.command = "ablate";
    manifest.seed = args.opts.train.seed;
    manifest.inputs.push_back(args.data_dir);
    if (!args.opts.config_path.empty()) manifest.inputs.push_back(args.opts.config_path);
    manifest.outputs = {"ablation.csv"};
    finish_manifest(manifest, args.opts, args.out_dir, watch, tokens);

    std::printf("ablate: %zu configurations, wrote %s/ablation.csv\n", rows.size(),
                args.out_dir.c_str());
    return kExitOk;
}

// --- gradcheck --------------------------------------------------------------

struct GradcheckArgs {
    Options opts;
    std::string out_dir;
    int count = 20;
    int size = 12;
    double tolerance = 1e-5;
    std::uint64_t seed = 0;
    std::vector<std::string> terms;
};

int cmd_gradcheck(const GradcheckArgs& args, const std::vector<std::string>& tokens) {
    const Stopwatch watch;
    if (args.count < 1) throw std::invalid_argument("--count must be >= 1");
    if (args.size < 6) throw std::invalid_argument("--size must be >= 6");
    if (!(args.tolerance > 0.0)) throw std::invalid_argument("--tolerance must be positive");

    // worst error per term across all instances
    std::vector<GradCheckTerm> worst;
    for (int i = 0; i < args.count; ++i) {
        const int h = args.size - (i % 5);
        const int w = args.size - ((i + 2) % 5);
        const Scene scene = make_check_scene(h, w, mix_seed(args.seed, i));
        const ToySegmenter model = make_random_model(mix_seed(args.seed, 1000 + i));
        const GradCheckReport report =
            gradcheck(model, scene, args.opts.train.loss, args.tolerance, 1e-5, args.terms);
        for (const GradCheckTerm& term : report.terms) {
            bool found = false;
            for (GradCheckTerm& agg : worst) {
                if (agg.name == term.name) {
                    agg.error = std::max(agg.error, term.error);
                    found = true;
                }
            }
            if (!found) worst.push_back(term);
        }
    }

    std::string report_text;
    bool all_pass = true;
    for (const GradCheckTerm& term : worst) {
        const bool pass = term.error <= args.tolerance;
        all_pass = all_pass && pass;
        char line[128];
        std::snprintf(line, sizeof(line), "term=%s max_error=%.3e status=%s\n", term.name.c_str(),
                      term.error, pass ? "pass" : "fail");
        report_text += line;
        std::fputs(line, stdout);
    }

    if (!args.out_dir.empty()) {
        std::filesystem::create_directories(args.out_dir);
        write_text_atomic(args.out_dir + "/gradcheck.txt", report_text);
        RunManifest manifest;
        manifest.command = "gradcheck";
        manifest.seed = args.seed;
        manifest.outputs = {"gradcheck.txt"};
        finish_manifest(manifest, args.opts, args.out_dir, watch, tokens);
    }
    return all_pass ? kExitOk : kExitNumeric;
}

// --- rerun ------------------------------------------------------------------

std::vector<std::string> substitute_out(std::vector<std::string> args, const std::string& out) {
    bool replaced = false;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--out" && i + 1 < args.size()) {
            args[i + 1] = out;
            replaced = true;
            ++i;
        } else if (args[i].rfind("--out=", 0) == 0) {
            args[i] = "--out=" + out;
            replaced = true;
        }
    }
    if (!replaced) {
        args.push_back("--out");
        args.push_back(out);
    }
    return args;
}

int cmd_rerun(const std::string& manifest_path, const std::string& out_dir) {
    const RunManifest manifest = read_manifest(manifest_path);
    if (manifest.args.empty()) {
        throw std::invalid_argument(manifest_path + ": manifest records no arguments");
    }
    if (manifest.args.front() == "rerun") {
        throw std::invalid_argument(manifest_path + ": refusing to rerun a rerun");
    }
    return run_cli(substitute_out(manifest.args, out_dir));
}

// --- dispatch ---------------------------------------------------------------

int run_cli(const std::vector<std::string>& tokens) {
    CLI::App app{"coastal-water segmentation toolkit"};
    app.require_subcommand(1);

    SynthArgs synth_args;
    CLI::App* synth_cmd = app.add_subcommand("synth", "generate a synthetic benchmark dataset");
    add_common_options(synth_cmd, synth_args.opts);
    synth_cmd->add_option("--out", synth_args.out_dir, "output directory")->required();
    synth_cmd->add_option("--count", synth_args.count, "number of scenes");
    synth_cmd->add_option("--split", synth_args.split, "training fraction");
    synth_cmd->add_option("--seed", synth_args.seed, "master seed");

    TrainArgs train_args;
    double lr_flag = 0.0;
    int epochs_flag = 0, batch_flag = 0;
    std::uint64_t train_seed_flag = 0;
    bool ce_only_flag = false;
    CLI::App* train_cmd = app.add_subcommand("train", "fit the segmenter on a dataset");
    add_common_options(train_cmd, train_args.opts);
    train_cmd->add_option("--data", train_args.data_dir, "dataset directory")->required();
    train_cmd->add_option("--out", train_args.out_dir, "output directory")->required();
    CLI::Option* opt_lr = train_cmd->add_option("--lr", lr_flag, "learning rate");
    CLI::Option* opt_epochs = train_cmd->add_option("--epochs", epochs_flag, "epoch count");
    CLI::Option* opt_batch =
        train_cmd->add_option("--batch", batch_flag, "mini-batch size (0 = full batch)");
    CLI::Option* opt_train_seed = train_cmd->add_option("--seed", train_seed_flag, "training seed");
    train_cmd->add_flag("--ce-only", ce_only_flag, "train the cross-entropy-only baseline");

    EvalArgs eval_args;
    CLI::App* eval_cmd = app.add_subcommand("eval", "evaluate predictions against labels");
    add_common_options(eval_cmd, eval_args.opts);
    eval_cmd->add_option("--data", eval_args.data_dir, "dataset directory")->required();
    eval_cmd->add_option("--out", eval_args.out_dir, "output directory")->required();
    eval_cmd->add_option("--model", eval_args.model_path, "trained model file");
    eval_cmd->add_option("--pred-dir", eval_args.pred_dir,
                         "directory of <scene>_pred.pgm probability masks");
    eval_cmd->add_option("--split", eval_args.split, "scene subset: all/train/val");
    eval_cmd->add_option("--threshold", eval_args.threshold, "binarization threshold");
    eval_cmd->add_flag("--postprocess", eval_args.postprocess,
                       "refine masks before scoring and save them");

    AblateArgs ablate_args;
    std::uint64_t ablate_seed_flag = 0;
    int ablate_epochs_flag = 0;
    CLI::App* ablate_cmd =
        app.add_subcommand("ablate", "leave-one-loss-term-out comparison table");
    add_common_options(ablate_cmd, ablate_args.opts);
    ablate_cmd->add_option("--data", ablate_args.data_dir, "dataset directory")->required();
    ablate_cmd->add_option("--out", ablate_args.out_dir, "output directory")->required();
    CLI::Option* opt_ablate_seed =
        ablate_cmd->add_option("--seed", ablate_seed_flag, "training seed for every row");
    CLI::Option* opt_ablate_epochs =
        ablate_cmd->add_option("--epochs", ablate_epochs_flag, "epoch count for every row");

    GradcheckArgs gradcheck_args;
    CLI::App* gradcheck_cmd =
        app.add_subcommand("gradcheck", "finite-difference verification of analytic gradients");
    add_common_options(gradcheck_cmd, gradcheck_args.opts);
    gradcheck_cmd->add_option("--out", gradcheck_args.out_dir, "optional report directory");
    gradcheck_cmd->add_option("--count", gradcheck_args.count, "number of seeded instances");
    gradcheck_cmd->add_option("--size", gradcheck_args.size, "maximum instance side length");
    gradcheck_cmd->add_option("--tolerance", gradcheck_args.tolerance, "max relative error");
    gradcheck_cmd->add_option("--seed", gradcheck_args.seed, "instance seed");
    gradcheck_cmd->add_option("--term", gradcheck_args.terms,
                              "check only these terms (repeatable)");

    std::string rerun_manifest, rerun_out;
    CLI::App* rerun_cmd = app.add_subcommand("rerun", "repeat a run from its manifest");
    rerun_cmd->add_option("--manifest", rerun_manifest, "run_manifest.txt path")->required();
    rerun_cmd->add_option("--out", rerun_out, "output directory")->required();

    std::vector<const char*> argv;
    argv.reserve(tokens.size() + 1);
    argv.push_back("coastseg");
    for (const std::string& t : tokens) argv.push_back(t.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitConfig;
    }

    if (app.got_subcommand(synth_cmd)) {
        synth_args.opts.merge();
        return cmd_synth(synth_args, tokens);
    }
    if (app.got_subcommand(train_cmd)) {
        train_args.opts.merge();
        TrainConfig& cfg = train_args.opts.train;
        if (opt_lr->count()) cfg.learning_rate = lr_flag;
        if (opt_epochs->count()) cfg.epochs = epochs_flag;
        if (opt_batch->count()) cfg.batch_size = batch_flag;
        if (opt_train_seed->count()) cfg.seed = train_seed_flag;
        if (ce_only_flag) cfg.ce_only = true;
        return cmd_train(train_args, tokens);
    }
    if (app.got_subcommand(eval_cmd)) {
        eval_args.opts.merge();
        return cmd_eval(eval_args, tokens);
    }
    if (app.got_subcommand(ablate_cmd)) {
        ablate_args.opts.merge();
        TrainConfig& cfg = ablate_args.opts.train;
        if (opt_ablate_seed->count()) cfg.seed = ablate_seed_flag;
        if (opt_ablate_epochs->count()) cfg.epochs = ablate_epochs_flag;
        return cmd_ablate(ablate_args, tokens);
    }
    if (app.got_subcommand(gradcheck_cmd)) {
        gradcheck_args.opts.merge();
        return cmd_gradcheck(gradcheck_args, tokens);
    }
    if (app.got_subcommand(rerun_cmd)) {
        return cmd_rerun(rerun_manifest, rerun_out);
    }
    return kExitConfig;
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<std::string> tokens(argv + 1, argv + argc);
    try {
        return run_cli(tokens);
    } catch (const TrainDivergenceError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitConfig;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitIo;
    }
}
