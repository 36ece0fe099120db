// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "attrgen/analysis/components.hpp"
#include "attrgen/core/errors.hpp"
#include "support.hpp"

using namespace attrgen;
using namespace attrgen::analysis;

TEST_CASE("decomposition reconstructs row-stochastic maps") {
    std::mt19937_64 rng(21);
    for (int n : {16, 64, 256}) {
        const Matrix map = testing::random_stochastic(rng, n);
        const auto d = decompose(map);
        const Eigen::MatrixXd back = d.reconstruct();
        CHECK((back - map.cast<double>()).cwiseAbs().maxCoeff() < 1e-5);
        for (Eigen::Index i = 1; i < d.singular_values.size(); ++i) {
            CHECK(d.singular_values(i - 1) >= d.singular_values(i));
        }
        // Row-stochastic: the all-ones vector is a right eigenvector, so the
        // top singular value is at least 1.
        CHECK(d.singular_values(0) >= 1.0 - 1e-6);
    }
}

TEST_CASE("rank-one map puts its energy in the first component") {
    std::mt19937_64 rng(22);
    const int n = 64;
    Eigen::VectorXd p = testing::random_matrix(rng, 1, n, 0.1f, 1.0f).row(0).transpose().cast<double>();
    p /= p.sum();
    Matrix map(n, n);
    for (int i = 0; i < n; ++i) map.row(i) = p.transpose().cast<float>();
    const auto d = decompose(map);
    const double total = d.singular_values.squaredNorm();
    CHECK(d.singular_values(0) * d.singular_values(0) / total >= 0.9999);
    CHECK((d.reconstruct(1) - map.cast<double>()).cwiseAbs().maxCoeff() < 1e-6);
}

TEST_CASE("principal components give normalized heatmaps on the spatial grid") {
    std::mt19937_64 rng(23);
    const Matrix map = testing::random_stochastic(rng, 64);
    const auto comps = principal_components(map, 5, SingularSide::left, attention::LayerId{"down8.self"});
    REQUIRE(comps.size() == 5);
    for (std::size_t i = 0; i < comps.size(); ++i) {
        CHECK(comps[i].rank == static_cast<int>(i));
        CHECK(comps[i].heatmap.rows() == 8);
        CHECK(comps[i].heatmap.cols() == 8);
        CHECK(comps[i].heatmap.maxCoeff() == doctest::Approx(1.0));
        CHECK(comps[i].heatmap.minCoeff() >= 0.0f);
        CHECK(comps[i].layer_id.value == "down8.self");
        if (i > 0) CHECK(comps[i - 1].singular_value >= comps[i].singular_value);
    }
    // The heatmap is |u_i| reshaped row-major.
    const auto d = decompose(map);
    const Eigen::VectorXd u0 = d.u.col(0).cwiseAbs() / d.u.col(0).cwiseAbs().maxCoeff();
    for (int y = 0; y < 8; ++y)
        for (int x = 0; x < 8; ++x) CHECK(comps[0].heatmap(y, x) == doctest::Approx(u0(y * 8 + x)).epsilon(1e-5));

    const auto right = principal_components(map, 1, SingularSide::right);
    const Eigen::VectorXd v0 = d.v.col(0).cwiseAbs() / d.v.col(0).cwiseAbs().maxCoeff();
    CHECK(right[0].heatmap(3, 5) == doctest::Approx(v0(3 * 8 + 5)).epsilon(1e-5));

    CHECK_THROWS_AS(principal_components(map, 0), DomainError);
    CHECK_THROWS_AS(principal_components(map, 65), DomainError);
    CHECK_THROWS_AS(principal_components(testing::random_stochastic(rng, 10), 1), ShapeError);
    CHECK_THROWS_AS(principal_components(Matrix(4, 5), 1), ShapeError);
}

TEST_CASE("heatmap rendering and contact sheets") {
    std::mt19937_64 rng(24);
    const auto comps = principal_components(testing::random_stochastic(rng, 16), 3);
    const auto images = render_heatmaps(comps, 32, Interpolation::nearest);
    REQUIRE(images.size() == 3);
    CHECK(images[0].channels == 1);
    CHECK(images[0].height == 32);
    // Nearest upsampling by 8 repeats each cell.
    CHECK(images[0].at(0, 0, 0) == comps[0].heatmap(0, 0));
    CHECK(images[0].at(0, 31, 31) == comps[0].heatmap(3, 3));
    const Image sheet = contact_sheet(images);
    CHECK(sheet.width == 96);
    CHECK(sheet.height == 32);
    CHECK(sheet.at(0, 5, 64 + 7) == images[2].at(0, 5, 7));
    CHECK_THROWS_AS(contact_sheet({}), DomainError);
    CHECK_THROWS_AS(contact_sheet({Image(1, 4, 4), Image(1, 5, 4)}), ShapeError);
}
