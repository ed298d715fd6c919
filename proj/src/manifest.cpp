#include "coastseg/manifest.hpp"

#include <cstdio>

#include "coastseg/textio.hpp"

namespace coastseg {

namespace {

void append_indexed(ConfigMap& cfg, const std::string& prefix,
                    const std::vector<std::string>& items) {
    for (std::size_t i = 0; i < items.size(); ++i) {
        cfg.set(prefix + "." + std::to_string(i), items[i]);
    }
}

std::vector<std::string> collect_indexed(const ConfigMap& cfg, const std::string& prefix) {
    std::vector<std::string> items;
    for (std::size_t i = 0;; ++i) {
        const std::string* v = cfg.find(prefix + "." + std::to_string(i));
        if (!v) break;
        items.push_back(*v);
    }
    return items;
}

}  // namespace

std::string render_manifest(const RunManifest& m) {
    ConfigMap cfg;
    cfg.set("command", m.command);
    cfg.set("version", m.version);
    cfg.set("seed", std::to_string(m.seed));
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.3f", m.duration_seconds);
    cfg.set("duration_seconds", buf);
    append_indexed(cfg, "arg", m.args);
    append_indexed(cfg, "input", m.inputs);
    append_indexed(cfg, "output", m.outputs);
    for (const auto& [k, v] : m.config.entries) cfg.set("config." + k, v);
    return render_config(cfg);
}

RunManifest parse_manifest_text(const std::string& text) {
    const ConfigMap cfg = parse_config_text(text);
    RunManifest m;
    m.command = cfg.get_string("command", "");
    m.version = cfg.get_string("version", "");
    m.seed = cfg.get_uint64("seed", 0);
    m.duration_seconds = cfg.get_double("duration_seconds", 0.0);
    m.args = collect_indexed(cfg, "arg");
    m.inputs = collect_indexed(cfg, "input");
    m.outputs = collect_indexed(cfg, "output");
    for (const auto& [k, v] : cfg.entries) {
        if (k.rfind("config.", 0) == 0) m.config.set(k.substr(7), v);
    }
    if (m.command.empty()) throw std::invalid_argument("manifest: missing command field");
    return m;
}

void write_manifest(const std::string& path, const RunManifest& m) {
    write_text_atomic(path, render_manifest(m));
}

RunManifest read_manifest(const std::string& path) {
    return parse_manifest_text(read_text_file(path));
}

}  // namespace coastseg
