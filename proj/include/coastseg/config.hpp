#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "coastseg/postprocess.hpp"
#include "coastseg/synth.hpp"
#include "coastseg/trainer.hpp"

namespace coastseg {

// Ordered key=value store backing config files and manifest snapshots.
// Syntax: one `key=value` per line, '#' starts a comment, blank lines
// ignored. Keys and values are trimmed; later assignments overwrite.
struct ConfigMap {
    std::vector<std::pair<std::string, std::string>> entries;

    bool contains(const std::string& key) const;
    const std::string* find(const std::string& key) const;
    void set(const std::string& key, const std::string& value);

    // Typed getters; throw std::invalid_argument on unparsable values,
    // return fallback when the key is absent.
    std::string get_string(const std::string& key, const std::string& fallback) const;
    double get_double(const std::string& key, double fallback) const;
    int get_int(const std::string& key, int fallback) const;
    std::uint64_t get_uint64(const std::string& key, std::uint64_t fallback) const;
    bool get_bool(const std::string& key, bool fallback) const;
};

ConfigMap parse_config_text(const std::string& text);
ConfigMap load_config(const std::string& path);
std::string render_config(const ConfigMap& cfg);
void save_config(const std::string& path, const ConfigMap& cfg);

// Applies every recognized key onto the three option structs; an
// unrecognized key throws std::invalid_argument naming it. The full key
// schema is the union of the snapshot outputs below.
void apply_config(const ConfigMap& cfg, TrainConfig& train, SceneSpec& scene,
                  PostprocConfig& postproc);

// Round-trippable snapshots: apply_config(snapshot(x), ...) reproduces x.
ConfigMap snapshot(const TrainConfig& train, const SceneSpec& scene,
                   const PostprocConfig& postproc);

}  // namespace coastseg
