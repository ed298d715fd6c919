#include "coastseg/netpbm.hpp"

#include <cctype>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "coastseg/textio.hpp"

namespace coastseg {

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
    throw std::runtime_error("netpbm: " + path + ": " + what);
}

// Skips whitespace and '#' comments between header tokens.
int next_header_int(std::istream& in, const std::string& path) {
    for (;;) {
        int c = in.peek();
        if (c == EOF) fail(path, "truncated header");
        if (std::isspace(c)) {
            in.get();
        } else if (c == '#') {
            std::string line;
            std::getline(in, line);
        } else {
            break;
        }
    }
    int value = 0;
    if (!(in >> value)) fail(path, "malformed header integer");
    return value;
}

struct PnmHeader {
    int type = 0;  // 2,3,5,6
    int width = 0;
    int height = 0;
    int maxval = 0;
};

PnmHeader read_header(std::istream& in, const std::string& path) {
    char p = 0;
    in.get(p);
    if (p != 'P') fail(path, "missing Netpbm magic");
    char t = 0;
    in.get(t);
    PnmHeader h;
    h.type = t - '0';
    if (h.type != 2 && h.type != 3 && h.type != 5 && h.type != 6) {
        fail(path, "unsupported Netpbm type P" + std::string(1, t));
    }
    h.width = next_header_int(in, path);
    h.height = next_header_int(in, path);
    h.maxval = next_header_int(in, path);
    if (h.width < 1 || h.height < 1) fail(path, "non-positive dimensions");
    if (h.maxval < 1 || h.maxval > 65535) fail(path, "maxval out of range");
    if (h.type == 5 || h.type == 6) {
        // single whitespace byte separates header from raster
        in.get();
    }
    return h;
}

std::vector<int> read_samples(std::istream& in, const PnmHeader& h, int per_pixel,
                              const std::string& path) {
    const std::size_t n = static_cast<std::size_t>(h.width) * h.height * per_pixel;
    std::vector<int> samples(n);
    const bool binary = (h.type == 5 || h.type == 6);
    if (binary) {
        const bool two_byte = h.maxval > 255;
        for (std::size_t k = 0; k < n; ++k) {
            int c0 = in.get();
            if (c0 == EOF) fail(path, "truncated raster");
            if (two_byte) {
                int c1 = in.get();
                if (c1 == EOF) fail(path, "truncated raster");
                samples[k] = (c0 << 8) | c1;  // big-endian per spec
            } else {
                samples[k] = c0;
            }
        }
    } else {
        for (std::size_t k = 0; k < n; ++k) {
            if (!(in >> samples[k])) fail(path, "truncated ascii raster");
        }
    }
    for (int s : samples) {
        if (s < 0 || s > h.maxval) fail(path, "sample exceeds maxval");
    }
    return samples;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(path, "cannot open for reading");
    return in;
}

void atomic_write(const std::string& path, const std::string& bytes) {
    write_text_atomic(path, bytes);
}

int quantize(double v, int maxval) {
    double q = std::lround(v * maxval);
    if (q < 0) q = 0;
    if (q > maxval) q = maxval;
    return static_cast<int>(q);
}

void append_sample(std::string& out, int s, int maxval, bool binary) {
    if (binary) {
        if (maxval > 255) {
            out.push_back(static_cast<char>((s >> 8) & 0xff));
            out.push_back(static_cast<char>(s & 0xff));
        } else {
            out.push_back(static_cast<char>(s & 0xff));
        }
    } else {
        out += std::to_string(s);
        out.push_back('\n');
    }
}

std::string header_string(int type, int w, int h, int maxval) {
    std::ostringstream os;
    os << 'P' << type << '\n' << w << ' ' << h << '\n' << maxval << '\n';
    return os.str();
}

}  // namespace

RgbImage read_ppm(const std::string& path) {
    std::ifstream in = open_in(path);
    const PnmHeader h = read_header(in, path);
    if (h.type != 3 && h.type != 6) fail(path, "expected PPM (P3/P6)");
    const std::vector<int> samples = read_samples(in, h, 3, path);
    RgbImage img{Grid2D(h.height, h.width), Grid2D(h.height, h.width), Grid2D(h.height, h.width)};
    const double inv = 1.0 / h.maxval;
    for (std::size_t k = 0; k < img.r.size(); ++k) {
        img.r.values[k] = samples[3 * k + 0] * inv;
        img.g.values[k] = samples[3 * k + 1] * inv;
        img.b.values[k] = samples[3 * k + 2] * inv;
    }
    return img;
}

void write_ppm(const std::string& path, const RgbImage& img, bool binary) {
    const int maxval = 255;
    std::string bytes = header_string(binary ? 6 : 3, img.width(), img.height(), maxval);
    for (std::size_t k = 0; k < img.r.size(); ++k) {
        append_sample(bytes, quantize(img.r.values[k], maxval), maxval, binary);
        append_sample(bytes, quantize(img.g.values[k], maxval), maxval, binary);
        append_sample(bytes, quantize(img.b.values[k], maxval), maxval, binary);
    }
    atomic_write(path, bytes);
}

Grid2D read_pgm(const std::string& path, int* maxval_out) {
    std::ifstream in = open_in(path);
    const PnmHeader h = read_header(in, path);
    if (h.type != 2 && h.type != 5) fail(path, "expected PGM (P2/P5)");
    const std::vector<int> samples = read_samples(in, h, 1, path);
    Grid2D g(h.height, h.width);
    const double inv = 1.0 / h.maxval;
    for (std::size_t k = 0; k < g.size(); ++k) g.values[k] = samples[k] * inv;
    if (maxval_out) *maxval_out = h.maxval;
    return g;
}

ProbMask read_prob_mask(const std::string& path) {
    ProbMask mask{read_pgm(path)};
    return mask;
}

void write_prob_mask(const std::string& path, const ProbMask& mask, bool binary) {
    const int maxval = 65535;
    std::string bytes = header_string(binary ? 5 : 2, mask.width(), mask.height(), maxval);
    for (double v : mask.m.values) {
        append_sample(bytes, quantize(v, maxval), maxval, binary);
    }
    atomic_write(path, bytes);
}

LabelMask read_label_mask(const std::string& path) {
    int maxval = 0;
    Grid2D g = read_pgm(path, &maxval);
    for (double& v : g.values) {
        if (v == 0.0) continue;
        if (v == 1.0) continue;
        fail(path, "label PGM must contain only {0, maxval} samples");
    }
    return LabelMask{std::move(g)};
}

void write_label_mask(const std::string& path, const LabelMask& labels, bool binary) {
    const int maxval = 255;
    std::string bytes = header_string(binary ? 5 : 2, labels.width(), labels.height(), maxval);
    for (double v : labels.y.values) {
        append_sample(bytes, v != 0.0 ? maxval : 0, maxval, binary);
    }
    atomic_write(path, bytes);
}

}  // namespace coastseg
