// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/metrics/color.hpp"

#include <cmath>

#include "attrgen/core/errors.hpp"
#include "attrgen/data/vocabulary.hpp"

namespace attrgen::metrics {

Image rgb_to_hsv(const Image& rgb) {
    if (rgb.channels != 3) throw ShapeError("rgb_to_hsv expects 3 channels");
    Image out(3, rgb.height, rgb.width);
    const std::size_t n = rgb.plane_size();
    for (std::size_t i = 0; i < n; ++i) {
        const Hsv p = attrgen::rgb_to_hsv(rgb.data[i], rgb.data[n + i], rgb.data[2 * n + i]);
        out.data[i] = static_cast<float>(p.h);
        out.data[n + i] = static_cast<float>(p.s);
        out.data[2 * n + i] = static_cast<float>(p.v);
    }
    return out;
}

Image hsv_to_rgb(const Image& hsv) {
    if (hsv.channels != 3) throw ShapeError("hsv_to_rgb expects 3 channels");
    Image out(3, hsv.height, hsv.width);
    const std::size_t n = hsv.plane_size();
    for (std::size_t i = 0; i < n; ++i) {
        double r, g, b;
        attrgen::hsv_to_rgb(Hsv{hsv.data[i], hsv.data[n + i], hsv.data[2 * n + i]}, r, g, b);
        out.data[i] = static_cast<float>(r);
        out.data[n + i] = static_cast<float>(g);
        out.data[2 * n + i] = static_cast<float>(b);
    }
    return out;
}

Image pure_color_image(std::string_view color_name, int width, int height) {
    const auto c = data::color_rgb(color_name);
    Image out(3, height, width);
    const std::size_t n = out.plane_size();
    const float v[3] = {c.r / 255.0f, c.g / 255.0f, c.b / 255.0f};
    for (int ch = 0; ch < 3; ++ch) std::fill_n(out.data.begin() + ch * n, n, v[ch]);
    return out;
}

double hue_l1_pixel(const Hsv& a, const Hsv& b) {
    const double dh = circular_hue_distance(a.h, b.h) * 255.0 / 360.0;
    const double ds = std::abs(a.s - b.s) * 255.0;
    const double dv = std::abs(a.v - b.v) * 255.0;
    return (dh + ds + dv) / 3.0;
}

double hue_l1(const Image& target, const Mask& object_mask, std::string_view color_name) {
    if (target.channels != 3) throw ShapeError("hue_l1 expects an RGB target");
    if (object_mask.height != target.height || object_mask.width != target.width) {
        throw ShapeError("hue_l1: mask size differs from target");
    }
    if (object_mask.count() == 0) throw DomainError("hue_l1: empty object mask");
    // Same float values a pure_color_image would hold, so a pure image
    // scores exactly zero against its own name.
    const auto c = data::color_rgb(color_name);
    const Hsv ref = attrgen::rgb_to_hsv(c.r / 255.0f, c.g / 255.0f, c.b / 255.0f);
    double total = 0.0;
    std::size_t count = 0;
    for (int y = 0; y < target.height; ++y) {
        for (int x = 0; x < target.width; ++x) {
            if (!object_mask.at(y, x)) continue;
            const Hsv p = attrgen::rgb_to_hsv(target.at(0, y, x), target.at(1, y, x), target.at(2, y, x));
            total += hue_l1_pixel(p, ref);
            ++count;
        }
    }
    return total / static_cast<double>(count);
}

}  // namespace attrgen::metrics
