#pragma once

#include <string>

#include "coastseg/grid.hpp"

namespace coastseg {

// Netpbm image I/O.
//
// Conventions used throughout the toolkit:
//   - RGB images:         PPM, 8-bit (maxval 255), P6 binary or P3 ascii
//   - probability masks:  PGM, 16-bit (maxval 65535), values scaled by 65535
//   - label masks:        PGM, 8-bit, values {0, 255}
//
// Readers accept both binary and ascii variants and arbitrary maxval; sample
// values map to [0,1] by division with maxval. Writers emit a canonical
// header ("P6\n<w> <h>\n<maxval>\n") so write -> read -> write round-trips
// are byte-identical. All writes go through a temp file + rename.

RgbImage read_ppm(const std::string& path);
void write_ppm(const std::string& path, const RgbImage& img, bool binary = true);

// Raw PGM access; returns samples scaled to [0,1] and reports the maxval.
Grid2D read_pgm(const std::string& path, int* maxval_out = nullptr);

ProbMask read_prob_mask(const std::string& path);
void write_prob_mask(const std::string& path, const ProbMask& mask, bool binary = true);

// Rejects files whose samples are not exactly {0, maxval}.
LabelMask read_label_mask(const std::string& path);
void write_label_mask(const std::string& path, const LabelMask& labels, bool binary = true);

}  // namespace coastseg
