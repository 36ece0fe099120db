// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

// Shared helpers and scalar reference implementations for the tests. The
// oracles here are deliberately naive loops, independent of the library code.

#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "attrgen/core/image.hpp"
#include "attrgen/core/tensor.hpp"

namespace testing {

/// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static std::mt19937_64 rng(std::random_device{}());
        path_ = std::filesystem::temp_directory_path() /
                ("attrgen-" + tag + "-" + std::to_string(rng() % 1000000000ULL));
        std::filesystem::remove_all(path_);
        std::filesystem::create_directories(path_);
    }
    ~TempDir() {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
    const std::filesystem::path& path() const { return path_; }

private:
    std::filesystem::path path_;
};

inline attrgen::Image random_image(std::mt19937_64& rng, int channels, int h, int w) {
    std::uniform_real_distribution<float> u(0.0f, 1.0f);
    attrgen::Image img(channels, h, w);
    for (auto& v : img.data) v = u(rng);
    return img;
}

inline attrgen::Matrix random_matrix(std::mt19937_64& rng, int rows, int cols, float lo = -1.0f, float hi = 1.0f) {
    std::uniform_real_distribution<float> u(lo, hi);
    attrgen::Matrix m(rows, cols);
    for (int i = 0; i < rows; ++i)
        for (int j = 0; j < cols; ++j) m(i, j) = u(rng);
    return m;
}

/// Row-stochastic matrix with positive entries.
inline attrgen::Matrix random_stochastic(std::mt19937_64& rng, int n) {
    attrgen::Matrix m = random_matrix(rng, n, n, 0.01f, 1.0f);
    for (int i = 0; i < n; ++i) {
        double s = 0.0;
        for (int j = 0; j < n; ++j) s += m(i, j);
        for (int j = 0; j < n; ++j) m(i, j) = static_cast<float>(m(i, j) / s);
    }
    return m;
}

/// softmax(q k^T / sqrt(d)) with plain loops in double.
inline std::vector<std::vector<double>> attention_oracle(const attrgen::Matrix& q, const attrgen::Matrix& k) {
    const int n = static_cast<int>(q.rows());
    const int m = static_cast<int>(k.rows());
    const int d = static_cast<int>(q.cols());
    std::vector<std::vector<double>> out(n, std::vector<double>(m));
    for (int i = 0; i < n; ++i) {
        double mx = -INFINITY;
        for (int j = 0; j < m; ++j) {
            double dot = 0.0;
            for (int c = 0; c < d; ++c) dot += double(q(i, c)) * double(k(j, c));
            out[i][j] = dot / std::sqrt(double(d));
            mx = std::max(mx, out[i][j]);
        }
        double sum = 0.0;
        for (int j = 0; j < m; ++j) sum += (out[i][j] = std::exp(out[i][j] - mx));
        for (int j = 0; j < m; ++j) out[i][j] /= sum;
    }
    return out;
}

/// SSIM straight from its definition: for every valid 11x11 window position
/// compute the Gaussian-weighted means, variances and covariance directly.
inline double ssim_oracle(const std::vector<double>& x, const std::vector<double>& y, int h, int w) {
    const int n = 11;
    const double sigma = 1.5;
    double g[11][11];
    double total_w = 0.0;
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const double da = a - 5, db = b - 5;
            g[a][b] = std::exp(-(da * da + db * db) / (2 * sigma * sigma));
            total_w += g[a][b];
        }
    const double c1 = 0.01 * 0.01, c2 = 0.03 * 0.03;
    double acc = 0.0;
    int windows = 0;
    for (int y0 = 0; y0 + n <= h; ++y0) {
        for (int x0 = 0; x0 + n <= w; ++x0) {
            double mx = 0, my = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const double wt = g[a][b] / total_w;
                    mx += wt * x[(y0 + a) * w + x0 + b];
                    my += wt * y[(y0 + a) * w + x0 + b];
                }
            double vx = 0, vy = 0, cxy = 0;
            for (int a = 0; a < n; ++a)
                for (int b = 0; b < n; ++b) {
                    const double wt = g[a][b] / total_w;
                    const double dx = x[(y0 + a) * w + x0 + b] - mx;
                    const double dy = y[(y0 + a) * w + x0 + b] - my;
                    vx += wt * dx * dx;
                    vy += wt * dy * dy;
                    cxy += wt * dx * dy;
                }
            acc += ((2 * mx * my + c1) * (2 * cxy + c2)) / ((mx * mx + my * my + c1) * (vx + vy + c2));
            ++windows;
        }
    }
    return acc / windows;
}

/// Luma of an RGB image as doubles, from the float channel values.
inline std::vector<double> luma_oracle(const attrgen::Image& img) {
    std::vector<double> out(img.plane_size());
    for (int yy = 0; yy < img.height; ++yy)
        for (int xx = 0; xx < img.width; ++xx) {
            const double r = img.at(0, yy, xx), g = img.at(1, yy, xx), b = img.at(2, yy, xx);
            out[yy * img.width + xx] = 0.299 * r + 0.587 * g + 0.114 * b;
        }
    return out;
}

}  // namespace testing
