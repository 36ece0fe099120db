// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/core/png_io.hpp"

#include <png.h>

#include <cstring>

#include "attrgen/core/errors.hpp"

namespace attrgen::io {

namespace {

void write_raw(const std::filesystem::path& path, int width, int height, png_uint_32 format,
               const std::vector<std::uint8_t>& buffer) {
    png_image img;
    std::memset(&img, 0, sizeof(img));
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(width);
    img.height = static_cast<png_uint_32>(height);
    img.format = format;
    if (!png_image_write_to_file(&img, path.c_str(), 0, buffer.data(), 0, nullptr)) {
        throw IoError("cannot write PNG " + path.string() + ": " + img.message);
    }
}

std::vector<std::uint8_t> read_raw(const std::filesystem::path& path, png_uint_32 format, int& width, int& height) {
    png_image img;
    std::memset(&img, 0, sizeof(img));
    img.version = PNG_IMAGE_VERSION;
    if (!png_image_begin_read_from_file(&img, path.c_str())) {
        throw IoError("cannot read PNG " + path.string() + ": " + img.message);
    }
    img.format = format;
    std::vector<std::uint8_t> buffer(PNG_IMAGE_SIZE(img));
    if (!png_image_finish_read(&img, nullptr, buffer.data(), 0, nullptr)) {
        png_image_free(&img);
        throw IoError("cannot decode PNG " + path.string() + ": " + img.message);
    }
    width = static_cast<int>(img.width);
    height = static_cast<int>(img.height);
    return buffer;
}

std::vector<std::uint8_t> interleave(const Image& image) {
    if (image.channels != 1 && image.channels != 3) {
        throw ShapeError("PNG output needs 1 or 3 channels, got " + std::to_string(image.channels));
    }
    const std::size_t n = image.plane_size();
    std::vector<std::uint8_t> buffer(n * image.channels);
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < image.channels; ++c) buffer[i * image.channels + c] = to_u8(image.data[c * n + i]);
    return buffer;
}

}  // namespace

std::string encode_png(const Image& image) {
    const auto buffer = interleave(image);
    png_image img;
    std::memset(&img, 0, sizeof(img));
    img.version = PNG_IMAGE_VERSION;
    img.width = static_cast<png_uint_32>(image.width);
    img.height = static_cast<png_uint_32>(image.height);
    img.format = image.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB;
    png_alloc_size_t size = 0;
    if (!png_image_write_to_memory(&img, nullptr, &size, 0, buffer.data(), 0, nullptr)) {
        throw IoError(std::string("cannot size PNG: ") + img.message);
    }
    std::string out(size, '\0');
    if (!png_image_write_to_memory(&img, out.data(), &size, 0, buffer.data(), 0, nullptr)) {
        throw IoError(std::string("cannot encode PNG: ") + img.message);
    }
    out.resize(size);
    return out;
}

void write_png(const std::filesystem::path& path, const Image& image) {
    const auto buffer = interleave(image);
    write_raw(path, image.width, image.height, image.channels == 1 ? PNG_FORMAT_GRAY : PNG_FORMAT_RGB, buffer);
}

Image read_png(const std::filesystem::path& path) {
    int w = 0, h = 0;
    auto buffer = read_raw(path, PNG_FORMAT_RGB, w, h);
    Image out(3, h, w);
    const std::size_t n = out.plane_size();
    for (std::size_t i = 0; i < n; ++i)
        for (int c = 0; c < 3; ++c) out.data[c * n + i] = buffer[i * 3 + c] / 255.0f;
    return out;
}

void write_mask_png(const std::filesystem::path& path, const Mask& mask) {
    std::vector<std::uint8_t> buffer(mask.data.size());
    for (std::size_t i = 0; i < buffer.size(); ++i) buffer[i] = mask.data[i] ? 255 : 0;
    write_raw(path, mask.width, mask.height, PNG_FORMAT_GRAY, buffer);
}

Mask read_mask_png(const std::filesystem::path& path) {
    int w = 0, h = 0;
    auto buffer = read_raw(path, PNG_FORMAT_GRAY, w, h);
    Mask out(h, w);
    for (std::size_t i = 0; i < buffer.size(); ++i) out.data[i] = buffer[i] ? 1 : 0;
    return out;
}

}  // namespace attrgen::io
