// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "attrgen/core/image.hpp"

namespace attrgen::metrics {

struct SsimOptions {
    int window = 11;
    double sigma = 1.5;
    double k1 = 0.01;
    double k2 = 0.03;
    double dynamic_range = 1.0;
};

/// Single-scale SSIM on luma, Gaussian-weighted, averaged over the window
/// positions that fit entirely inside the image. ShapeError when sizes
/// differ or the image is smaller than the window.
double ssim(const Image& a, const Image& b, const SsimOptions& options = {});

}  // namespace attrgen::metrics
