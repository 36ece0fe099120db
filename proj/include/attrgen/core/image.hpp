// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace attrgen {

/// Planar (channel-major) float tensor. The tag keeps images and latents
/// from being mixed up at call sites.
template <class Tag>
struct Planar {
    int channels = 0;
    int height = 0;
    int width = 0;
    std::vector<float> data;

    Planar() = default;
    Planar(int c, int h, int w, float fill = 0.0f)
        : channels(c), height(h), width(w), data(static_cast<std::size_t>(c) * h * w, fill) {}

    std::size_t plane_size() const { return static_cast<std::size_t>(height) * width; }
    float& at(int c, int y, int x) { return data[c * plane_size() + static_cast<std::size_t>(y) * width + x]; }
    float at(int c, int y, int x) const { return data[c * plane_size() + static_cast<std::size_t>(y) * width + x]; }
    bool same_shape(const Planar& o) const {
        return channels == o.channels && height == o.height && width == o.width;
    }
    bool operator==(const Planar&) const = default;
};

struct ImageTag {};
struct LatentTag {};

/// Values nominally in [0, 1].
using Image = Planar<ImageTag>;
using Latent = Planar<LatentTag>;

/// Binary mask; nonzero means set.
struct Mask {
    int height = 0;
    int width = 0;
    std::vector<std::uint8_t> data;

    Mask() = default;
    Mask(int h, int w, bool fill = false) : height(h), width(w), data(static_cast<std::size_t>(h) * w, fill ? 1 : 0) {}

    bool at(int y, int x) const { return data[static_cast<std::size_t>(y) * width + x] != 0; }
    void set(int y, int x, bool v) { data[static_cast<std::size_t>(y) * width + x] = v ? 1 : 0; }
    std::size_t count() const;
    Mask inverted() const;
    bool operator==(const Mask&) const = default;
};

enum class Interpolation { nearest, bilinear };

/// Resize every channel to (out_h, out_w). Pixel centers are at half-integer
/// coordinates; bilinear clamps at the border.
Image resize(const Image& src, int out_h, int out_w, Interpolation mode = Interpolation::bilinear);

/// Luma (0.299, 0.587, 0.114) for 3-channel input; single-channel input is copied.
Image to_grayscale(const Image& src);

/// Round-to-nearest 8-bit value of a [0,1] float, clamped.
std::uint8_t to_u8(float v);

/// Quantize then dequantize, i.e. what a PNG round trip would yield.
Image quantized(const Image& src);

}  // namespace attrgen
