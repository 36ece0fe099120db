// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "attrgen/attention/attention.hpp"
#include "attrgen/core/image.hpp"

namespace attrgen::analysis {

/// Full SVD of a square map, map = U diag(s) Vᵀ, computed in double.
struct Decomposition {
    Eigen::MatrixXd u;
    Eigen::VectorXd singular_values;  // nonincreasing
    Eigen::MatrixXd v;

    /// Sum of the first `rank` rank-one terms (all of them when rank < 0).
    Eigen::MatrixXd reconstruct(int rank = -1) const;
};

/// ShapeError unless the map is square.
Decomposition decompose(const Matrix& map);

/// Which singular vectors to visualize. Both are indexed by spatial position
/// for self-attention maps: U over queries, V over keys.
enum class SingularSide { left, right };

struct ComponentHeatmap {
    attention::LayerId layer_id;
    int rank = 0;
    double singular_value = 0.0;
    /// |singular vector| reshaped to resolution x resolution, max-normalized to [0, 1].
    Matrix heatmap;
};

/// Top-k components of a resolution² x resolution² map. ShapeError for a
/// non-square map or a side that is not a perfect square; DomainError unless
/// 1 <= k <= N.
std::vector<ComponentHeatmap> principal_components(const Matrix& map, int k,
                                                   SingularSide side = SingularSide::left,
                                                   attention::LayerId layer_id = {});

/// Single-channel out_size x out_size image of a heatmap.
Image render_heatmap(const ComponentHeatmap& component, int out_size = 512,
                     Interpolation mode = Interpolation::bilinear);
std::vector<Image> render_heatmaps(const std::vector<ComponentHeatmap>& components, int out_size = 512,
                                   Interpolation mode = Interpolation::bilinear);

/// Images side by side in one row. ShapeError if heights differ.
Image contact_sheet(const std::vector<Image>& images);

}  // namespace attrgen::analysis
