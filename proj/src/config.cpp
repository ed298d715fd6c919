#include "coastseg/config.hpp"

#include <cctype>
#include <cstdio>
#include <stdexcept>

#include "coastseg/textio.hpp"

namespace coastseg {

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

double parse_double(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const double v = std::stod(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not a number: '" + value + "'");
    }
}

long long parse_integer(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const long long v = std::stoll(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an integer: '" + value + "'");
    }
}

std::uint64_t parse_unsigned(const std::string& key, const std::string& value) {
    try {
        std::size_t pos = 0;
        const unsigned long long v = std::stoull(value, &pos);
        if (pos != value.size()) throw std::invalid_argument("trailing characters");
        return v;
    } catch (const std::exception&) {
        throw std::invalid_argument("config key '" + key + "': not an unsigned integer: '" +
                                    value + "'");
    }
}

bool parse_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1") return true;
    if (value == "false" || value == "0") return false;
    throw std::invalid_argument("config key '" + key + "': not a boolean: '" + value + "'");
}

}  // namespace

bool ConfigMap::contains(const std::string& key) const { return find(key) != nullptr; }

const std::string* ConfigMap::find(const std::string& key) const {
    for (const auto& [k, v] : entries) {
        if (k == key) return &v;
    }
    return nullptr;
}

void ConfigMap::set(const std::string& key, const std::string& value) {
    for (auto& [k, v] : entries) {
        if (k == key) {
            v = value;
            return;
        }
    }
    entries.emplace_back(key, value);
}

std::string ConfigMap::get_string(const std::string& key, const std::string& fallback) const {
    const std::string* v = find(key);
    return v ? *v : fallback;
}

double ConfigMap::get_double(const std::string& key, double fallback) const {
    const std::string* v = find(key);
    return v ? parse_double(key, *v) : fallback;
}

int ConfigMap::get_int(const std::string& key, int fallback) const {
    const std::string* v = find(key);
    return v ? static_cast<int>(parse_integer(key, *v)) : fallback;
}

std::uint64_t ConfigMap::get_uint64(const std::string& key, std::uint64_t fallback) const {
    const std::string* v = find(key);
    return v ? parse_unsigned(key, *v) : fallback;
}

bool ConfigMap::get_bool(const std::string& key, bool fallback) const {
    const std::string* v = find(key);
    return v ? parse_bool(key, *v) : fallback;
}

ConfigMap parse_config_text(const std::string& text) {
    ConfigMap cfg;
    std::size_t line_start = 0;
    int line_no = 0;
    while (line_start <= text.size()) {
        std::size_t line_end = text.find('\n', line_start);
        if (line_end == std::string::npos) line_end = text.size();
        std::string line = text.substr(line_start, line_end - line_start);
        line_start = line_end + 1;
        ++line_no;

        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::invalid_argument("config line " + std::to_string(line_no) +
                                        ": expected key=value, got '" + line + "'");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::invalid_argument("config line " + std::to_string(line_no) + ": empty key");
        }
        cfg.set(key, value);
    }
    return cfg;
}

ConfigMap load_config(const std::string& path) {
    return parse_config_text(read_text_file(path));
}

std::string render_config(const ConfigMap& cfg) {
    std::string out;
    for (const auto& [k, v] : cfg.entries) {
        out += k;
        out += '=';
        out += v;
        out += '\n';
    }
    return out;
}

void save_config(const std::string& path, const ConfigMap& cfg) {
    write_text_atomic(path, render_config(cfg));
}

namespace {

// One row per recognized key: dispatch table shared by apply and snapshot so
// the schema cannot drift between the two directions.
struct KeyBinding {
    const char* key;
    enum Kind { kDouble, kInt, kUint64, kBool } kind;
    void* slot;
};

std::vector<KeyBinding> bindings(TrainConfig& t, SceneSpec& s, PostprocConfig& p) {
    using KB = KeyBinding;
    return {
        {"train.learning_rate", KB::kDouble, &t.learning_rate},
        {"train.epochs", KB::kInt, &t.epochs},
        {"train.batch_size", KB::kInt, &t.batch_size},
        {"train.seed", KB::kUint64, &t.seed},
        {"train.variance_window", KB::kInt, &t.variance_window},
        {"train.eval_threshold", KB::kDouble, &t.eval_threshold},
        {"train.divergence_limit", KB::kDouble, &t.divergence_limit},
        {"train.ce_only", KB::kBool, &t.ce_only},
        {"train.auto_reference_hsv", KB::kBool, &t.auto_reference_hsv},
        {"train.lipschitz_trials", KB::kInt, &t.lipschitz_trials},

        {"loss.lambda_ce", KB::kDouble, &t.loss.weights.lambda_ce},
        {"loss.lambda_hsv", KB::kDouble, &t.loss.weights.lambda_hsv},
        {"loss.lambda_coast", KB::kDouble, &t.loss.weights.lambda_coast},
        {"loss.lambda_conn", KB::kDouble, &t.loss.weights.lambda_conn},
        {"loss.lambda_sea", KB::kDouble, &t.loss.weights.lambda_sea},
        {"loss.clamp_eps", KB::kDouble, &t.loss.clamp_eps},

        {"hsv.alpha_h", KB::kDouble, &t.loss.hsv.alpha_h},
        {"hsv.alpha_s", KB::kDouble, &t.loss.hsv.alpha_s},
        {"hsv.alpha_v", KB::kDouble, &t.loss.hsv.alpha_v},
        {"hsv.beta", KB::kDouble, &t.loss.hsv.beta},
        {"hsv.sigma_bw", KB::kDouble, &t.loss.hsv.sigma_bw},
        {"hsv.ref_h", KB::kDouble, &t.loss.hsv.ref_hsv.h},
        {"hsv.ref_s", KB::kDouble, &t.loss.hsv.ref_hsv.s},
        {"hsv.ref_v", KB::kDouble, &t.loss.hsv.ref_hsv.v},

        {"coast.kernel", KB::kInt, &t.loss.coast.kernel},
        {"coast.threshold", KB::kDouble, &t.loss.coast.threshold},

        {"conn.max_regions", KB::kInt, &t.loss.conn.max_regions},
        {"conn.tau_soft", KB::kDouble, &t.loss.conn.tau_soft},
        {"conn.threshold", KB::kDouble, &t.loss.conn.threshold},

        {"sea.window", KB::kInt, &t.loss.sea.window},
        {"sea.min_area", KB::kInt, &t.loss.sea.min_area},
        {"sea.threshold", KB::kDouble, &t.loss.sea.threshold},
        {"sea.connectivity", KB::kInt, &t.loss.sea.connectivity},

        {"scene.height", KB::kInt, &s.height},
        {"scene.width", KB::kInt, &s.width},
        {"scene.base_waterline", KB::kDouble, &s.base_waterline},
        {"scene.num_sinusoids", KB::kInt, &s.num_sinusoids},
        {"scene.amplitude", KB::kDouble, &s.amplitude},
        {"scene.water_h", KB::kDouble, &s.water_hsv.h},
        {"scene.water_s", KB::kDouble, &s.water_hsv.s},
        {"scene.water_v", KB::kDouble, &s.water_hsv.v},
        {"scene.land_h", KB::kDouble, &s.land_hsv.h},
        {"scene.land_s", KB::kDouble, &s.land_hsv.s},
        {"scene.land_v", KB::kDouble, &s.land_hsv.v},
        {"scene.hsv_separation_margin", KB::kDouble, &s.hsv_separation_margin},
        {"scene.hsv_jitter", KB::kDouble, &s.hsv_jitter},
        {"scene.noise_level", KB::kDouble, &s.noise_level},
        {"scene.speckle_blobs", KB::kInt, &s.speckle_blobs},
        {"scene.false_water_patches", KB::kInt, &s.false_water_patches},
        {"scene.raggedness", KB::kDouble, &s.raggedness},
        {"scene.require_nondegenerate", KB::kBool, &s.require_nondegenerate},
        {"scene.seed", KB::kUint64, &s.seed},

        {"postproc.threshold", KB::kDouble, &p.threshold},
        {"postproc.open_close_k", KB::kInt, &p.open_close_k},
        {"postproc.min_sea_area", KB::kInt, &p.min_sea_area},
        {"postproc.min_land_area", KB::kInt, &p.min_land_area},
        {"postproc.enforce_column_connectivity", KB::kBool, &p.enforce_column_connectivity},
        {"postproc.connectivity", KB::kInt, &p.connectivity},
    };
}

}  // namespace

void apply_config(const ConfigMap& cfg, TrainConfig& train, SceneSpec& scene,
                  PostprocConfig& postproc) {
    const std::vector<KeyBinding> table = bindings(train, scene, postproc);
    for (const auto& [key, value] : cfg.entries) {
        const KeyBinding* hit = nullptr;
        for (const KeyBinding& b : table) {
            if (key == b.key) {
                hit = &b;
                break;
            }
        }
        if (!hit) throw std::invalid_argument("unknown config key '" + key + "'");
        switch (hit->kind) {
            case KeyBinding::kDouble:
                *static_cast<double*>(hit->slot) = parse_double(key, value);
                break;
            case KeyBinding::kInt:
                *static_cast<int*>(hit->slot) = static_cast<int>(parse_integer(key, value));
                break;
            case KeyBinding::kUint64:
                *static_cast<std::uint64_t*>(hit->slot) = parse_unsigned(key, value);
                break;
            case KeyBinding::kBool:
                *static_cast<bool*>(hit->slot) = parse_bool(key, value);
                break;
        }
    }
}

ConfigMap snapshot(const TrainConfig& train, const SceneSpec& scene,
                   const PostprocConfig& postproc) {
    TrainConfig t = train;
    SceneSpec s = scene;
    PostprocConfig p = postproc;
    ConfigMap out;
    for (const KeyBinding& b : bindings(t, s, p)) {
        switch (b.kind) {
            case KeyBinding::kDouble:
                out.set(b.key, fmt_double(*static_cast<const double*>(b.slot)));
                break;
            case KeyBinding::kInt:
                out.set(b.key, std::to_string(*static_cast<const int*>(b.slot)));
                break;
            case KeyBinding::kUint64:
                out.set(b.key, std::to_string(*static_cast<const std::uint64_t*>(b.slot)));
                break;
            case KeyBinding::kBool:
                out.set(b.key, *static_cast<const bool*>(b.slot) ? "true" : "false");
                break;
        }
    }
    return out;
}

}  // namespace coastseg
