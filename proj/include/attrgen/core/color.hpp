// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace attrgen {

/// h in degrees [0, 360), s and v in [0, 1]. Hue is 0 when s is 0.
struct Hsv {
    double h = 0.0;
    double s = 0.0;
    double v = 0.0;
};

/// Inputs in [0, 1].
Hsv rgb_to_hsv(double r, double g, double b);
void hsv_to_rgb(const Hsv& hsv, double& r, double& g, double& b);

/// Shortest angular distance in degrees, in [0, 180].
double circular_hue_distance(double h1, double h2);

}  // namespace attrgen
