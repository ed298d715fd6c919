#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "coastseg/textio.hpp"

namespace fs = std::filesystem;

namespace {

const fs::path kRoot = fs::temp_directory_path() / "coastseg_cli_test";

// runs the tool with the given arguments, captures combined output
int run_tool(const std::string& args, std::string* output = nullptr) {
    const fs::path log = kRoot / "last_output.txt";
    const std::string cmd =
        std::string(COASTSEG_CLI_PATH) + " " + args + " > " + log.string() + " 2>&1";
    const int status = std::system(cmd.c_str());
    if (output) *output = coastseg::read_text_file(log.string());
    return WEXITSTATUS(status);
}

std::string read_bytes(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

std::vector<std::string> lines_of(const std::string& text) {
    std::vector<std::string> lines;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

// small dataset shared by the driver tests
std::string synth_small(const std::string& dir, int seed) {
    return "synth --out " + dir + " --count 6 --seed " + std::to_string(seed) +
           " --set scene.height=12 --set scene.width=12";
}

constexpr const char* kFastTrain = " --set train.lipschitz_trials=5";

}  // namespace

TEST_CASE("synth writes a complete deterministic dataset") {
    fs::remove_all(kRoot);
    fs::create_directories(kRoot);

    const std::string d1 = (kRoot / "data1").string();
    const std::string d2 = (kRoot / "data2").string();
    const std::string d3 = (kRoot / "data3").string();

    CHECK(run_tool(synth_small(d1, 3)) == 0);
    CHECK(fs::exists(fs::path(d1) / "scene_000.ppm"));
    CHECK(fs::exists(fs::path(d1) / "scene_005_labels.pgm"));
    CHECK(fs::exists(fs::path(d1) / "dataset_manifest.txt"));
    CHECK(fs::exists(fs::path(d1) / "run_manifest.txt"));

    CHECK(run_tool(synth_small(d2, 3)) == 0);
    CHECK(read_bytes(fs::path(d2) / "scene_000.ppm") == read_bytes(fs::path(d1) / "scene_000.ppm"));
    CHECK(coastseg::read_text_file(d2 + "/dataset_manifest.txt") ==
          coastseg::read_text_file(d1 + "/dataset_manifest.txt"));

    CHECK(run_tool(synth_small(d3, 4)) == 0);
    CHECK(read_bytes(fs::path(d3) / "scene_000.ppm") != read_bytes(fs::path(d1) / "scene_000.ppm"));
}

TEST_CASE("train produces the model, report, and summary") {
    const std::string data = (kRoot / "data1").string();
    const std::string out = (kRoot / "train1").string();
    std::string output;
    const int code = run_tool("train --data " + data + " --out " + out +
                                  " --epochs 1 --batch 0" + kFastTrain,
                              &output);
    CHECK(code == 0);
    CHECK(output.find("final val IoU") != std::string::npos);

    CHECK(fs::exists(fs::path(out) / "model.txt"));
    const std::vector<std::string> report =
        lines_of(coastseg::read_text_file(out + "/report.csv"));
    REQUIRE(report.size() == 2);
    CHECK(report[0].rfind("epoch,loss_robust,", 0) == 0);
    CHECK(report[1].rfind("0,", 0) == 0);

    const std::string summary = coastseg::read_text_file(out + "/summary.txt");
    CHECK(summary.find("final_iou=") != std::string::npos);
    CHECK(summary.find("lipschitz_estimate=") != std::string::npos);
}

TEST_CASE("the cross-entropy baseline reports matching loss columns") {
    const std::string data = (kRoot / "data1").string();
    const std::string out = (kRoot / "train_ce").string();
    CHECK(run_tool("train --data " + data + " --out " + out + " --epochs 2 --ce-only" +
                   kFastTrain) == 0);

    const std::vector<std::string> report =
        lines_of(coastseg::read_text_file(out + "/report.csv"));
    REQUIRE(report.size() == 3);
    for (std::size_t r = 1; r < report.size(); ++r) {
        std::vector<std::string> cells;
        std::istringstream in(report[r]);
        std::string cell;
        while (std::getline(in, cell, ',')) cells.push_back(cell);
        REQUIRE(cells.size() == 11);
        CHECK(cells[1] == cells[2]);  // loss_robust equals loss_ce
    }
}

TEST_CASE("eval scores provided prediction masks") {
    const std::string data = (kRoot / "data1").string();
    const fs::path preds = kRoot / "preds";
    fs::create_directories(preds);
    for (int i = 0; i < 6; ++i) {
        char stem[32];
        std::snprintf(stem, sizeof(stem), "scene_%03d", i);
        fs::copy_file(fs::path(data) / (std::string(stem) + "_labels.pgm"),
                      preds / (std::string(stem) + "_pred.pgm"),
                      fs::copy_options::overwrite_existing);
    }

    const std::string out = (kRoot / "eval_pred").string();
    CHECK(run_tool("eval --data " + data + " --out " + out + " --pred-dir " + preds.string()) ==
          0);
    const std::vector<std::string> metrics =
        lines_of(coastseg::read_text_file(out + "/metrics.csv"));
    REQUIRE(metrics.size() == 8);  // header + 6 scenes + aggregate
    CHECK(metrics.back() == "aggregate,1.0000 ± 0.0000,1.0000 ± 0.0000,1.0000 ± 0.0000");
}

TEST_CASE("eval scores a trained model with optional refinement") {
    const std::string data = (kRoot / "data1").string();
    const std::string model = (kRoot / "train1" / "model.txt").string();

    const std::string out = (kRoot / "eval_model").string();
    CHECK(run_tool("eval --data " + data + " --out " + out + " --model " + model +
                   " --split val") == 0);
    const std::vector<std::string> metrics =
        lines_of(coastseg::read_text_file(out + "/metrics.csv"));
    CHECK(metrics.size() == 3);  // header + 1 validation scene + aggregate

    const std::string refined = (kRoot / "eval_refined").string();
    CHECK(run_tool("eval --data " + data + " --out " + refined + " --model " + model +
                   " --postprocess") == 0);
    CHECK(fs::exists(fs::path(refined) / "scene_000_refined.pgm"));

    // the two sources are mutually exclusive
    CHECK(run_tool("eval --data " + data + " --out " + out + " --model " + model +
                   " --pred-dir " + (kRoot / "preds").string()) == 2);
    CHECK(run_tool("eval --data " + data + " --out " + out + " --model " + model +
                   " --split bogus") == 2);
}

TEST_CASE("ablate writes the six-variant table") {
    const std::string data = (kRoot / "data1").string();
    const std::string out = (kRoot / "ablate1").string();
    CHECK(run_tool("ablate --data " + data + " --out " + out + " --epochs 2 --seed 5" +
                   kFastTrain) == 0);
    const std::vector<std::string> table =
        lines_of(coastseg::read_text_file(out + "/ablation.csv"));
    REQUIRE(table.size() == 7);
    CHECK(table[1].rfind("full,5,", 0) == 0);
    CHECK(table[6].rfind("ce_only,5,", 0) == 0);
}

TEST_CASE("gradcheck reports per-term status lines") {
    std::string output;
    CHECK(run_tool("gradcheck --count 2 --size 8 --seed 1", &output) == 0);
    const std::vector<std::string> lines = lines_of(output);
    REQUIRE(lines.size() == 7);
    CHECK(lines[0].rfind("term=ce max_error=", 0) == 0);
    for (const std::string& line : lines) {
        CHECK(line.find("status=pass") != std::string::npos);
    }

    CHECK(run_tool("gradcheck --count 2 --size 8 --term ce", &output) == 0);
    CHECK(lines_of(output).size() == 1);

    // an unattainable tolerance fails with the numerical exit code
    CHECK(run_tool("gradcheck --count 1 --size 8 --tolerance 1e-15", &output) == 4);
    CHECK(output.find("status=fail") != std::string::npos);

    const std::string out = (kRoot / "gradcheck1").string();
    CHECK(run_tool("gradcheck --count 2 --size 8 --out " + out) == 0);
    CHECK(fs::exists(fs::path(out) / "gradcheck.txt"));
}

TEST_CASE("configuration errors exit with code 2") {
    const std::string data = (kRoot / "data1").string();
    const std::string out = (kRoot / "bad").string();
    CHECK(run_tool("train --data " + data + " --out " + out + " --set bogus.key=1") == 2);
    CHECK(run_tool("train --data " + data + " --out " + out + " --set train.epochs=abc") == 2);
    CHECK(run_tool("synth --out " + out + " --count 2") == 2);
    CHECK(run_tool("train --data " + data) == 2);  // missing required --out
    CHECK(run_tool("--help") == 0);
}

TEST_CASE("input errors exit with code 3") {
    const std::string out = (kRoot / "bad_io").string();
    CHECK(run_tool("train --data /nonexistent/dataset --out " + out + kFastTrain) == 3);
    CHECK(run_tool("eval --data /nonexistent/dataset --out " + out +
                   " --model /nonexistent/model.txt") == 3);
}

TEST_CASE("rerun reproduces a recorded run in a fresh directory") {
    const std::string first = (kRoot / "train1").string();
    const std::string second = (kRoot / "rerun1").string();
    CHECK(run_tool("rerun --manifest " + first + "/run_manifest.txt --out " + second) == 0);

    CHECK(coastseg::read_text_file(second + "/model.txt") ==
          coastseg::read_text_file(first + "/model.txt"));
    CHECK(coastseg::read_text_file(second + "/report.csv") ==
          coastseg::read_text_file(first + "/report.csv"));
    CHECK(coastseg::read_text_file(second + "/summary.txt") ==
          coastseg::read_text_file(first + "/summary.txt"));

    // the rerun's manifest records the original command, so chaining works
    CHECK(run_tool("rerun --manifest " + second + "/run_manifest.txt --out " +
                   (kRoot / "rerun2").string()) == 0);

    fs::remove_all(kRoot);
}
