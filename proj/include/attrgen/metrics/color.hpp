// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string_view>

#include "attrgen/core/color.hpp"
#include "attrgen/core/image.hpp"

namespace attrgen::metrics {

/// 3-channel RGB in [0, 1] to planes (H in degrees, S, V).
Image rgb_to_hsv(const Image& rgb);
Image hsv_to_rgb(const Image& hsv);

/// Constant RGB image of a color-table entry. VocabularyError if unknown.
Image pure_color_image(std::string_view color_name, int width, int height);

/// Per-pixel hue L1: mean of circular hue distance scaled by 255/360 and
/// |dS|, |dV| scaled by 255.
double hue_l1_pixel(const Hsv& a, const Hsv& b);

/// Mean hue_l1_pixel over the mask between the target and the pure color.
/// DomainError on an empty mask; ShapeError on a size mismatch.
double hue_l1(const Image& target, const Mask& object_mask, std::string_view color_name);

}  // namespace attrgen::metrics
