#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "coastseg/config.hpp"

namespace coastseg {

inline constexpr const char* kToolkitVersion = "0.1.0";

// Record of one CLI run, written next to the outputs. Stores the verb, the
// raw argument vector (for bit-identical re-runs), the effective
// configuration snapshot, and the files read and written.
struct RunManifest {
    std::string command;
    std::string version = kToolkitVersion;
    std::uint64_t seed = 0;
    double duration_seconds = 0.0;
    std::vector<std::string> args;
    std::vector<std::string> inputs;
    std::vector<std::string> outputs;
    ConfigMap config;
};

std::string render_manifest(const RunManifest& m);
RunManifest parse_manifest_text(const std::string& text);

void write_manifest(const std::string& path, const RunManifest& m);
RunManifest read_manifest(const std::string& path);

}  // namespace coastseg
