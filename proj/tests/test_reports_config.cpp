#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

#include "coastseg/config.hpp"
#include "coastseg/dataset_io.hpp"
#include "coastseg/manifest.hpp"
#include "coastseg/reports.hpp"
#include "coastseg/synth.hpp"
#include "coastseg/textio.hpp"

using namespace coastseg;

namespace {

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::filesystem::path temp_dir(const std::string& name) {
    const std::filesystem::path dir = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    return dir;
}

}  // namespace

TEST_CASE("config text parsing handles comments, blanks, and overrides") {
    const ConfigMap cfg = parse_config_text(
        "# leading comment\n"
        "\n"
        "train.epochs = 50\n"
        "  loss.lambda_hsv=0.25  # trailing comment\n"
        "train.epochs=60\n");
    CHECK(cfg.entries.size() == 2);
    CHECK(cfg.get_int("train.epochs", 0) == 60);
    CHECK(cfg.get_double("loss.lambda_hsv", 0.0) == 0.25);
    CHECK(cfg.get_double("absent.key", 1.5) == 1.5);
}

TEST_CASE("config parse errors carry the line number") {
    try {
        parse_config_text("a=1\nnot a pair\n");
        FAIL("expected a parse error");
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("line 2") != std::string::npos);
    }
    CHECK_THROWS_AS(parse_config_text("=value\n"), std::invalid_argument);
}

TEST_CASE("typed getters validate their values") {
    ConfigMap cfg;
    cfg.set("k", "abc");
    CHECK_THROWS_AS(cfg.get_double("k", 0.0), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get_int("k", 0), std::invalid_argument);
    CHECK_THROWS_AS(cfg.get_bool("k", false), std::invalid_argument);

    cfg.set("k", "1.5x");
    CHECK_THROWS_AS(cfg.get_double("k", 0.0), std::invalid_argument);

    cfg.set("k", "true");
    CHECK(cfg.get_bool("k", false));
    cfg.set("k", "0");
    CHECK_FALSE(cfg.get_bool("k", true));
}

TEST_CASE("snapshot and apply round-trip the full option set") {
    TrainConfig train;
    train.learning_rate = 0.03125;
    train.epochs = 123;
    train.batch_size = 0;
    train.seed = 987654321042ULL;
    train.ce_only = true;
    train.loss.weights.lambda_coast = 0.17;
    train.loss.hsv.ref_hsv = {0.61, 0.37, 0.29};
    train.loss.conn.tau_soft = 0.05;
    SceneSpec scene;
    scene.height = 24;
    scene.noise_level = 0.013;
    scene.raggedness = 2.5;
    scene.require_nondegenerate = false;
    PostprocConfig postproc;
    postproc.open_close_k = 5;
    postproc.enforce_column_connectivity = false;

    const ConfigMap snap = snapshot(train, scene, postproc);
    TrainConfig train2;
    SceneSpec scene2;
    PostprocConfig postproc2;
    apply_config(snap, train2, scene2, postproc2);

    CHECK(train2.learning_rate == train.learning_rate);
    CHECK(train2.epochs == train.epochs);
    CHECK(train2.batch_size == train.batch_size);
    CHECK(train2.seed == train.seed);
    CHECK(train2.ce_only == train.ce_only);
    CHECK(train2.loss.weights.lambda_coast == train.loss.weights.lambda_coast);
    CHECK(train2.loss.hsv.ref_hsv.h == train.loss.hsv.ref_hsv.h);
    CHECK(train2.loss.conn.tau_soft == train.loss.conn.tau_soft);
    CHECK(scene2.height == scene.height);
    CHECK(scene2.noise_level == scene.noise_level);
    CHECK(scene2.raggedness == scene.raggedness);
    CHECK(scene2.require_nondegenerate == scene.require_nondegenerate);
    CHECK(postproc2.open_close_k == postproc.open_close_k);
    CHECK(postproc2.enforce_column_connectivity == postproc.enforce_column_connectivity);

    // a second snapshot of the reconstruction is textually identical
    CHECK(render_config(snapshot(train2, scene2, postproc2)) == render_config(snap));
}

TEST_CASE("unknown configuration keys are rejected by name") {
    ConfigMap cfg;
    cfg.set("train.warp_factor", "9");
    TrainConfig train;
    SceneSpec scene;
    PostprocConfig postproc;
    try {
        apply_config(cfg, train, scene, postproc);
        FAIL("expected rejection");
    } catch (const std::invalid_argument& err) {
        CHECK(std::string(err.what()).find("train.warp_factor") != std::string::npos);
    }
}

TEST_CASE("config files survive a save and load cycle") {
    const std::filesystem::path dir = temp_dir("coastseg_cfg_test");
    ConfigMap cfg;
    cfg.set("train.epochs", "77");
    cfg.set("scene.noise_level", "0.125");
    const std::string path = (dir / "run.cfg").string();
    save_config(path, cfg);
    const ConfigMap back = load_config(path);
    CHECK(back.entries == cfg.entries);
    std::filesystem::remove_all(dir);
}

TEST_CASE("manifests round-trip through text") {
    RunManifest m;
    m.command = "train";
    m.seed = 31337;
    m.duration_seconds = 1.2345;
    m.args = {"train", "--data", "runs/data", "--set", "train.epochs=5"};
    m.inputs = {"runs/data/dataset_manifest.txt"};
    m.outputs = {"model.txt", "report.csv"};
    m.config.set("train.epochs", "5");
    m.config.set("loss.lambda_sea", "0.1");

    const RunManifest back = parse_manifest_text(render_manifest(m));
    CHECK(back.command == m.command);
    CHECK(back.version == kToolkitVersion);
    CHECK(back.seed == m.seed);
    CHECK(back.duration_seconds == doctest::Approx(1.234).epsilon(1e-9));
    CHECK(back.args == m.args);
    CHECK(back.inputs == m.inputs);
    CHECK(back.outputs == m.outputs);
    CHECK(back.config.entries == m.config.entries);
}

TEST_CASE("a manifest without a command is invalid") {
    CHECK_THROWS_AS(parse_manifest_text("version=0.1.0\n"), std::invalid_argument);
}

TEST_CASE("numeric cells use shortest-faithful formatting") {
    CHECK(format_cell(0.5) == "0.5");
    CHECK(format_cell(1.0 / 3.0) == "0.333333333333");
    CHECK(format_cell(0.0) == "0");
    CHECK(format_cell(1e-13) == "1e-13");
    CHECK(format_mean_std(0.87654321, 0.00123456) == "0.8765 ± 0.0012");
}

TEST_CASE("mean and deviation agree with a direct computation") {
    const std::vector<double> values = {0.2, 0.4, 0.4, 0.8};
    const MeanStd ms = mean_std(values);
    CHECK(ms.mean == doctest::Approx(0.45).epsilon(1e-14));
    const double var = ((0.25 * 0.25) + (0.05 * 0.05) * 2 + (0.35 * 0.35)) / 4.0;
    CHECK(ms.std_dev == doctest::Approx(std::sqrt(var)).epsilon(1e-12));

    const MeanStd empty = mean_std({});
    CHECK(empty.mean == 0.0);
    CHECK(empty.std_dev == 0.0);
}

TEST_CASE("training report rows mirror the epoch records") {
    TrainReport report;
    EpochRecord row;
    row.epoch = 0;
    row.loss_robust = 0.75;
    row.loss_ce = 0.5;
    row.val_iou = 0.25;
    report.epochs.push_back(row);
    row.epoch = 1;
    row.loss_robust = 0.5;
    report.epochs.push_back(row);

    const std::vector<std::string> lines = lines_of(render_train_report_csv(report));
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] ==
          "epoch,loss_robust,loss_ce,loss_hsv,loss_coast,loss_conn,loss_sea,"
          "grad_norm,val_iou,val_f1,val_accuracy");
    CHECK(lines[1] == "0,0.75,0.5,0,0,0,0,0,0.25,0,0");
    CHECK(lines[2] == "1,0.5,0.5,0,0,0,0,0,0.25,0,0");
}

TEST_CASE("the summary renders one key per line") {
    TrainSummary s;
    s.final_iou = 0.875;
    s.rho = -0.5;
    s.rho_degenerate = false;
    const std::vector<std::string> lines = lines_of(render_train_summary(s));
    REQUIRE(lines.size() == 7);
    CHECK(lines[0] == "final_iou=0.875");
    CHECK(lines[5] == "rho=-0.5");
    CHECK(lines[6] == "rho_degenerate=false");
}

TEST_CASE("ablation rows serialize weights and deltas in order") {
    AblationRow row;
    row.config_name = "no_sea";
    row.seed = 7;
    row.weights = {1.0, 0.5, 0.1, 0.1, 0.0};
    row.final_iou = 0.9;
    row.late_iou_variance = 1e-5;
    row.delta_vs_full = -0.025;

    const std::vector<std::string> lines = lines_of(render_ablation_csv({row}));
    REQUIRE(lines.size() == 2);
    CHECK(lines[0] ==
          "config,seed,lambda_ce,lambda_hsv,lambda_coast,lambda_conn,lambda_sea,"
          "final_iou,late_iou_variance,delta_iou_vs_full");
    CHECK(lines[1] == "no_sea,7,1,0.5,0.1,0.1,0,0.9,1e-05,-0.025");
}

TEST_CASE("evaluation tables end with the aggregate row") {
    std::vector<EvalRow> rows(2);
    rows[0].scene_id = "scene_0000";
    rows[0].metrics = {0.8, 0.9, 0.95};
    rows[1].scene_id = "scene_0001";
    rows[1].metrics = {0.6, 0.7, 0.85};

    const std::vector<std::string> lines = lines_of(render_eval_csv(rows));
    REQUIRE(lines.size() == 4);
    CHECK(lines[0] == "scene,iou,f1,accuracy");
    CHECK(lines[1] == "scene_0000,0.8,0.9,0.95");
    CHECK(lines[2] == "scene_0001,0.6,0.7,0.85");
    CHECK(lines[3] == "aggregate,0.7000 ± 0.1000,0.8000 ± 0.1000,0.9000 ± 0.0500");
}

TEST_CASE("datasets round-trip through a directory") {
    SceneSpec spec;
    spec.height = 12;
    spec.width = 10;
    const Dataset ds = make_benchmark(spec, 6, 0.75, 21);

    const std::filesystem::path dir1 = temp_dir("coastseg_ds_test1");
    const std::filesystem::path dir2 = temp_dir("coastseg_ds_test2");
    save_dataset(dir1.string(), ds);
    CHECK(std::filesystem::exists(dir1 / "scene_000.ppm"));
    CHECK(std::filesystem::exists(dir1 / "scene_005_labels.pgm"));

    const Dataset back = load_dataset(dir1.string());
    REQUIRE(back.size() == ds.size());
    CHECK(back.train_indices == ds.train_indices);
    CHECK(back.val_indices == ds.val_indices);
    for (int i = 0; i < ds.size(); ++i) {
        const Scene& orig = ds.scenes[static_cast<std::size_t>(i)];
        const Scene& got = back.scenes[static_cast<std::size_t>(i)];
        CHECK(got.seed == orig.seed);
        CHECK(got.family == orig.family);
        CHECK(got.labels.y.values == orig.labels.y.values);
        // image channels come back within 8-bit quantization
        for (std::size_t k = 0; k < orig.image.r.size(); ++k) {
            CHECK(std::fabs(got.image.r.values[k] - orig.image.r.values[k]) <= 0.5 / 255.0);
        }
        // derived channels are rebuilt, not stored
        CHECK(got.features.values.size() == orig.features.values.size());
    }

    // quantization is idempotent: a second save/load cycle is bit-identical
    save_dataset(dir2.string(), back);
    const Dataset again = load_dataset(dir2.string());
    for (int i = 0; i < ds.size(); ++i) {
        CHECK(again.scenes[static_cast<std::size_t>(i)].image.r.values ==
              back.scenes[static_cast<std::size_t>(i)].image.r.values);
    }
    CHECK(read_text_file((dir2 / kDatasetManifestName).string()) ==
          read_text_file((dir1 / kDatasetManifestName).string()));

    std::filesystem::remove_all(dir1);
    std::filesystem::remove_all(dir2);
}

TEST_CASE("loading a dataset from a bad directory fails cleanly") {
    CHECK_THROWS_AS(load_dataset("/nonexistent/dataset/dir"), std::runtime_error);

    const std::filesystem::path dir = temp_dir("coastseg_ds_bad");
    write_text_atomic((dir / kDatasetManifestName).string(), "wrong,header\n");
    CHECK_THROWS_AS(load_dataset(dir.string()), std::runtime_error);
    std::filesystem::remove_all(dir);
}

TEST_CASE("text file helpers report the offending path") {
    try {
        read_text_file("/nonexistent/file.txt");
        FAIL("expected an I/O error");
    } catch (const std::runtime_error& err) {
        CHECK(std::string(err.what()).find("/nonexistent/file.txt") != std::string::npos);
    }
    CHECK_THROWS_AS(write_text_atomic("/nonexistent/dir/file.txt", "x"), std::runtime_error);

    const std::filesystem::path dir = temp_dir("coastseg_textio");
    const std::string path = (dir / "out.txt").string();
    write_text_atomic(path, "payload\n");
    CHECK(read_text_file(path) == "payload\n");
    std::filesystem::remove_all(dir);
}
