// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/core/image.hpp"

#include <algorithm>
#include <cmath>

namespace attrgen {

std::size_t Mask::count() const {
    return static_cast<std::size_t>(std::count_if(data.begin(), data.end(), [](std::uint8_t v) { return v != 0; }));
}

Mask Mask::inverted() const {
    Mask out = *this;
    for (auto& v : out.data) v = v ? 0 : 1;
    return out;
}

namespace {

struct Tap {
    int lo;
    int hi;
    float frac;  // weight of `hi`
};

std::vector<Tap> bilinear_taps(int in, int out) {
    std::vector<Tap> taps(out);
    const double scale = static_cast<double>(in) / out;
    for (int i = 0; i < out; ++i) {
        double src = (i + 0.5) * scale - 0.5;
        src = std::clamp(src, 0.0, static_cast<double>(in - 1));
        int lo = static_cast<int>(std::floor(src));
        int hi = std::min(lo + 1, in - 1);
        taps[i] = {lo, hi, static_cast<float>(src - lo)};
    }
    return taps;
}

std::vector<int> nearest_taps(int in, int out) {
    std::vector<int> taps(out);
    const double scale = static_cast<double>(in) / out;
    for (int i = 0; i < out; ++i) {
        taps[i] = std::min(static_cast<int>(std::floor((i + 0.5) * scale)), in - 1);
    }
    return taps;
}

}  // namespace

Image resize(const Image& src, int out_h, int out_w, Interpolation mode) {
    Image out(src.channels, out_h, out_w);
    if (mode == Interpolation::nearest) {
        const auto ty = nearest_taps(src.height, out_h);
        const auto tx = nearest_taps(src.width, out_w);
        for (int c = 0; c < src.channels; ++c)
            for (int y = 0; y < out_h; ++y)
                for (int x = 0; x < out_w; ++x) out.at(c, y, x) = src.at(c, ty[y], tx[x]);
        return out;
    }
    const auto ty = bilinear_taps(src.height, out_h);
    const auto tx = bilinear_taps(src.width, out_w);
    for (int c = 0; c < src.channels; ++c) {
        for (int y = 0; y < out_h; ++y) {
            const Tap& vy = ty[y];
            for (int x = 0; x < out_w; ++x) {
                const Tap& vx = tx[x];
                const float top = src.at(c, vy.lo, vx.lo) * (1.0f - vx.frac) + src.at(c, vy.lo, vx.hi) * vx.frac;
                const float bot = src.at(c, vy.hi, vx.lo) * (1.0f - vx.frac) + src.at(c, vy.hi, vx.hi) * vx.frac;
                out.at(c, y, x) = top * (1.0f - vy.frac) + bot * vy.frac;
            }
        }
    }
    return out;
}

Image to_grayscale(const Image& src) {
    if (src.channels == 1) return src;
    Image out(1, src.height, src.width);
    const std::size_t n = src.plane_size();
    for (std::size_t i = 0; i < n; ++i) {
        const double g = 0.299 * src.data[i] + 0.587 * src.data[n + i] + 0.114 * src.data[2 * n + i];
        out.data[i] = static_cast<float>(g);
    }
    return out;
}

std::uint8_t to_u8(float v) {
    const float c = std::clamp(v, 0.0f, 1.0f);
    return static_cast<std::uint8_t>(std::lround(c * 255.0f));
}

Image quantized(const Image& src) {
    Image out = src;
    for (auto& v : out.data) v = to_u8(v) / 255.0f;
    return out;
}

}  // namespace attrgen
