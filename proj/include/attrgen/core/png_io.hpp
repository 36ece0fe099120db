// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <string>

#include "attrgen/core/image.hpp"

namespace attrgen::io {

/// 8-bit PNG; 1 channel → gray, 3 → RGB. Throws IoError.
void write_png(const std::filesystem::path& path, const Image& image);
Image read_png(const std::filesystem::path& path);
/// PNG file bytes for an RGB or gray image.
std::string encode_png(const Image& image);

void write_mask_png(const std::filesystem::path& path, const Mask& mask);
/// Any nonzero gray value is "set".
Mask read_mask_png(const std::filesystem::path& path);

}  // namespace attrgen::io
