// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/core/color.hpp"

#include <algorithm>
#include <cmath>

namespace attrgen {

Hsv rgb_to_hsv(double r, double g, double b) {
    const double hi = std::max({r, g, b});
    const double lo = std::min({r, g, b});
    const double chroma = hi - lo;
    Hsv out;
    out.v = hi;
    out.s = hi > 0.0 ? chroma / hi : 0.0;
    if (chroma <= 0.0) return out;
    double h;
    if (hi == r) {
        h = std::fmod((g - b) / chroma, 6.0);
    } else if (hi == g) {
        h = (b - r) / chroma + 2.0;
    } else {
        h = (r - g) / chroma + 4.0;
    }
    h *= 60.0;
    if (h < 0.0) h += 360.0;
    if (h >= 360.0) h -= 360.0;
    out.h = h;
    return out;
}

void hsv_to_rgb(const Hsv& hsv, double& r, double& g, double& b) {
    const double c = hsv.v * hsv.s;
    const double hp = hsv.h / 60.0;
    const double x = c * (1.0 - std::abs(std::fmod(hp, 2.0) - 1.0));
    double r1 = 0, g1 = 0, b1 = 0;
    if (hp < 1) {
        r1 = c, g1 = x;
    } else if (hp < 2) {
        r1 = x, g1 = c;
    } else if (hp < 3) {
        g1 = c, b1 = x;
    } else if (hp < 4) {
        g1 = x, b1 = c;
    } else if (hp < 5) {
        r1 = x, b1 = c;
    } else {
        r1 = c, b1 = x;
    }
    const double m = hsv.v - c;
    r = r1 + m;
    g = g1 + m;
    b = b1 + m;
}

double circular_hue_distance(double h1, double h2) {
    double d = std::fmod(std::abs(h1 - h2), 360.0);
    return std::min(d, 360.0 - d);
}

}  // namespace attrgen
