#include "coastseg/color.hpp"

#include <algorithm>
#include <cmath>

namespace coastseg {

HsvPixel rgb_to_hsv_pixel(double r, double g, double b) {
    HsvPixel out;
    const double maxc = std::max({r, g, b});
    const double minc = std::min({r, g, b});
    const double delta = maxc - minc;

    out.v = maxc;
    if (maxc <= 0.0 || delta <= 0.0) {
        // black or gray: saturation 0, canonical hue 0
        out.s = 0.0;
        out.h = 0.0;
        return out;
    }
    out.s = delta / maxc;

    double h6;  // hue in sector units, [0,6)
    if (r >= maxc) {
        h6 = (g - b) / delta;
    } else if (g >= maxc) {
        h6 = 2.0 + (b - r) / delta;
    } else {
        h6 = 4.0 + (r - g) / delta;
    }
    if (h6 < 0.0) h6 += 6.0;
    out.h = h6 / 6.0;
    if (out.h >= 1.0) out.h -= 1.0;
    return out;
}

void hsv_to_rgb_pixel(const HsvPixel& hsv, double& r, double& g, double& b) {
    if (hsv.s <= 0.0) {
        r = g = b = hsv.v;
        return;
    }
    double h6 = hsv.h * 6.0;
    if (h6 >= 6.0) h6 = 0.0;
    const int sector = static_cast<int>(h6);
    const double f = h6 - sector;
    const double p = hsv.v * (1.0 - hsv.s);
    const double q = hsv.v * (1.0 - hsv.s * f);
    const double t = hsv.v * (1.0 - hsv.s * (1.0 - f));

    switch (sector) {
        case 0: r = hsv.v; g = t; b = p; break;
        case 1: r = q; g = hsv.v; b = p; break;
        case 2: r = p; g = hsv.v; b = t; break;
        case 3: r = p; g = q; b = hsv.v; break;
        case 4: r = t; g = p; b = hsv.v; break;
        default: r = hsv.v; g = p; b = q; break;
    }
}

HsvImage rgb_to_hsv(const RgbImage& img) {
    const int h = img.height();
    const int w = img.width();
    HsvImage out{Grid2D(h, w), Grid2D(h, w), Grid2D(h, w)};
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            const HsvPixel px = rgb_to_hsv_pixel(img.r.at(i, j), img.g.at(i, j), img.b.at(i, j));
            out.h.at(i, j) = px.h;
            out.s.at(i, j) = px.s;
            out.v.at(i, j) = px.v;
        }
    }
    return out;
}

RgbImage hsv_to_rgb(const HsvImage& img) {
    const int h = img.height();
    const int w = img.width();
    RgbImage out{Grid2D(h, w), Grid2D(h, w), Grid2D(h, w)};
    for (int i = 0; i < h; ++i) {
        for (int j = 0; j < w; ++j) {
            hsv_to_rgb_pixel({img.h.at(i, j), img.s.at(i, j), img.v.at(i, j)},
                             out.r.at(i, j), out.g.at(i, j), out.b.at(i, j));
        }
    }
    return out;
}

double hue_circular_distance(double h0, double h1) {
    double d = std::fabs(h0 - h1);
    return std::min(d, 1.0 - d);
}

double hsv_distance(const HsvPixel& a, const HsvPixel& b) {
    const double dh = hue_circular_distance(a.h, b.h);
    const double ds = a.s - b.s;
    const double dv = a.v - b.v;
    return std::sqrt(dh * dh + ds * ds + dv * dv);
}

}  // namespace coastseg
