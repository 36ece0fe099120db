// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/analysis/components.hpp"

#include <Eigen/SVD>

#include <cmath>

#include "attrgen/core/errors.hpp"

namespace attrgen::analysis {

Eigen::MatrixXd Decomposition::reconstruct(int rank) const {
    const Eigen::Index r = rank < 0 ? singular_values.size() : std::min<Eigen::Index>(rank, singular_values.size());
    return u.leftCols(r) * singular_values.head(r).asDiagonal() * v.leftCols(r).transpose();
}

Decomposition decompose(const Matrix& map) {
    if (map.rows() != map.cols() || map.rows() == 0) {
        throw ShapeError("SVD analysis needs a square map, got " + std::to_string(map.rows()) + "x" +
                         std::to_string(map.cols()));
    }
    const Eigen::MatrixXd m = map.cast<double>();
    Eigen::BDCSVD<Eigen::MatrixXd> svd(m, Eigen::ComputeThinU | Eigen::ComputeThinV);
    return {svd.matrixU(), svd.singularValues(), svd.matrixV()};
}

std::vector<ComponentHeatmap> principal_components(const Matrix& map, int k, SingularSide side,
                                                   attention::LayerId layer_id) {
    if (map.rows() != map.cols()) {
        throw ShapeError("SVD analysis needs a square map, got " + std::to_string(map.rows()) + "x" +
                         std::to_string(map.cols()));
    }
    const auto n = map.rows();
    const auto resolution = static_cast<Eigen::Index>(std::llround(std::sqrt(static_cast<double>(n))));
    if (resolution * resolution != n) {
        throw ShapeError("map side " + std::to_string(n) + " is not a square number of positions");
    }
    if (k < 1 || k > n) throw DomainError("k must be in [1, " + std::to_string(n) + "], got " + std::to_string(k));

    const Decomposition d = decompose(map);
    const Eigen::MatrixXd& vectors = side == SingularSide::left ? d.u : d.v;
    std::vector<ComponentHeatmap> out;
    out.reserve(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        ComponentHeatmap c;
        c.layer_id = layer_id;
        c.rank = i;
        c.singular_value = d.singular_values(i);
        const Eigen::VectorXd mag = vectors.col(i).cwiseAbs();
        const double peak = mag.maxCoeff();
        c.heatmap.resize(resolution, resolution);
        for (Eigen::Index p = 0; p < n; ++p) {
            c.heatmap(p / resolution, p % resolution) = peak > 0.0 ? static_cast<float>(mag(p) / peak) : 0.0f;
        }
        out.push_back(std::move(c));
    }
    return out;
}

Image render_heatmap(const ComponentHeatmap& component, int out_size, Interpolation mode) {
    const Matrix& h = component.heatmap;
    Image small(1, static_cast<int>(h.rows()), static_cast<int>(h.cols()));
    for (Eigen::Index y = 0; y < h.rows(); ++y)
        for (Eigen::Index x = 0; x < h.cols(); ++x) small.at(0, static_cast<int>(y), static_cast<int>(x)) = h(y, x);
    return resize(small, out_size, out_size, mode);
}

std::vector<Image> render_heatmaps(const std::vector<ComponentHeatmap>& components, int out_size, Interpolation mode) {
    if (components.empty()) throw DomainError("no components to render");
    std::vector<Image> out;
    out.reserve(components.size());
    for (const auto& c : components) out.push_back(render_heatmap(c, out_size, mode));
    return out;
}

Image contact_sheet(const std::vector<Image>& images) {
    if (images.empty()) throw DomainError("contact sheet needs at least one image");
    const int h = images.front().height;
    const int channels = images.front().channels;
    int w = 0;
    for (const Image& im : images) {
        if (im.height != h || im.channels != channels) throw ShapeError("contact sheet images must share height and channels");
        w += im.width;
    }
    Image sheet(channels, h, w);
    int x0 = 0;
    for (const Image& im : images) {
        for (int c = 0; c < channels; ++c)
            for (int y = 0; y < h; ++y)
                for (int x = 0; x < im.width; ++x) sheet.at(c, y, x0 + x) = im.at(c, y, x);
        x0 += im.width;
    }
    return sheet;
}

}  // namespace attrgen::analysis
