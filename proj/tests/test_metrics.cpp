// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include "attrgen/core/errors.hpp"
#include "attrgen/data/vocabulary.hpp"
#include "attrgen/metrics/color.hpp"
#include "attrgen/metrics/scorers.hpp"
#include "attrgen/metrics/ssim.hpp"
#include "support.hpp"

using namespace attrgen;
using namespace attrgen::metrics;

TEST_CASE("ssim identity, symmetry and range") {
    std::mt19937_64 rng(11);
    for (int i = 0; i < 10; ++i) {
        const Image a = testing::random_image(rng, 3, 24 + i, 30);
        const Image b = testing::random_image(rng, 3, 24 + i, 30);
        CHECK(std::abs(ssim(a, a) - 1.0) <= 1e-9);
        const double ab = ssim(a, b);
        CHECK(ab == doctest::Approx(ssim(b, a)).epsilon(1e-12));
        CHECK(ab >= -1.0);
        CHECK(ab <= 1.0);
        CHECK(ab < 0.5);
    }
    CHECK_THROWS_AS(ssim(Image(3, 16, 16), Image(3, 16, 17)), ShapeError);
    CHECK_THROWS_AS(ssim(Image(3, 10, 16), Image(3, 10, 16)), ShapeError);
    // Constant images: all windows degenerate to the luminance term.
    CHECK(ssim(Image(3, 16, 16, 0.5f), Image(3, 16, 16, 0.5f)) == doctest::Approx(1.0));
}

TEST_CASE("ssim matches the direct per-window definition") {
    std::mt19937_64 rng(12);
    for (int i = 0; i < 5; ++i) {
        const Image a = testing::random_image(rng, 3, 32, 32);
        Image b = a;
        std::normal_distribution<float> noise(0.0f, 0.1f * (i + 1));
        for (auto& v : b.data) v = std::clamp(v + noise(rng), 0.0f, 1.0f);
        const double expected = testing::ssim_oracle(testing::luma_oracle(a), testing::luma_oracle(b), 32, 32);
        CHECK(std::abs(ssim(a, b) - expected) <= 1e-6);
    }
    // Single-channel input is used as luma directly.
    const Image g1 = testing::random_image(rng, 1, 20, 20);
    const Image g2 = testing::random_image(rng, 1, 20, 20);
    const std::vector<double> x(g1.data.begin(), g1.data.end()), y(g2.data.begin(), g2.data.end());
    CHECK(std::abs(ssim(g1, g2) - testing::ssim_oracle(x, y, 20, 20)) <= 1e-6);
}

TEST_CASE("hsv conversion examples and round trip") {
    auto check = [](double r, double g, double b, double h, double s, double v) {
        const Hsv p = attrgen::rgb_to_hsv(r, g, b);
        CHECK(p.h == doctest::Approx(h).epsilon(1e-9));
        CHECK(p.s == doctest::Approx(s).epsilon(1e-9));
        CHECK(p.v == doctest::Approx(v).epsilon(1e-9));
    };
    check(1, 0, 0, 0, 1, 1);
    check(0, 1, 0, 120, 1, 1);
    check(0, 0, 1, 240, 1, 1);
    check(1, 1, 0, 60, 1, 1);
    check(1, 0, 1, 300, 1, 1);
    check(0.5, 0.5, 0.5, 0, 0, 0.5);
    check(0, 0, 0, 0, 0, 0);
    check(0.2, 0.4, 0.6, 210, 2.0 / 3.0, 0.6);

    std::mt19937_64 rng(13);
    const Image rgb = testing::random_image(rng, 3, 16, 16);
    const Image hsv = metrics::rgb_to_hsv(rgb);
    for (std::size_t i = 0; i < hsv.plane_size(); ++i) {
        CHECK(hsv.data[i] >= 0.0f);
        CHECK(hsv.data[i] < 360.0f);
    }
    const Image back = metrics::hsv_to_rgb(hsv);
    for (std::size_t i = 0; i < rgb.data.size(); ++i) CHECK(std::abs(back.data[i] - rgb.data[i]) <= 1e-6);
}

TEST_CASE("hue_l1 on pure colors and by hand") {
    Mask all(8, 8, true);
    for (const auto& name : data::default_colors()) {
        CHECK(hue_l1(pure_color_image(name, 8, 8), all, name) == 0.0);
    }
    CHECK(hue_l1_pixel({359, 1, 1}, {1, 1, 1}) == doctest::Approx(2.0 * 255.0 / 360.0 / 3.0));
    CHECK(hue_l1_pixel({1, 1, 1}, {359, 1, 1}) == hue_l1_pixel({359, 1, 1}, {1, 1, 1}));

    // Pixels against red (h 0, s 1, v 1):
    //   red          0
    //   green        dh 120 -> 85, so 85/3
    //   dark red     dv 0.5 -> 127.5, so 42.5
    //   mid gray     ds 1 -> 255 and dv 0.5 -> 127.5, so 127.5
    Image t(3, 2, 2);
    const float px[4][3] = {{1, 0, 0}, {0, 1, 0}, {0.5f, 0, 0}, {0.5f, 0.5f, 0.5f}};
    for (int i = 0; i < 4; ++i)
        for (int c = 0; c < 3; ++c) t.at(c, i / 2, i % 2) = px[i][c];
    const double expected = (0.0 + 85.0 / 3.0 + 42.5 + 127.5) / 4.0;
    CHECK(hue_l1(t, Mask(2, 2, true), "red") == doctest::Approx(expected).epsilon(1e-12));
    Mask first_two(2, 2);
    first_two.set(0, 0, true);
    first_two.set(0, 1, true);
    CHECK(hue_l1(t, first_two, "red") == doctest::Approx(85.0 / 6.0).epsilon(1e-12));

    CHECK_THROWS_AS(hue_l1(t, Mask(2, 2), "red"), DomainError);
    CHECK_THROWS_AS(hue_l1(t, Mask(3, 2, true), "red"), ShapeError);
    CHECK_THROWS_AS(hue_l1(t, Mask(2, 2, true), "ultraviolet"), VocabularyError);
}

TEST_CASE("hue_l1 grows as value moves away from the reference") {
    Mask all(4, 4, true);
    double prev = -1.0;
    for (float v = 1.0f; v >= 0.2f; v -= 0.1f) {
        Image t(3, 4, 4);
        for (int y = 0; y < 4; ++y)
            for (int x = 0; x < 4; ++x) t.at(0, y, x) = v;
        const double d = hue_l1(t, all, "red");
        CHECK(d > prev);
        prev = d;
    }
}

TEST_CASE("metric stubs") {
    std::mt19937_64 rng(14);
    const Image a = testing::random_image(rng, 3, 32, 32);
    const Image b = testing::random_image(rng, 3, 32, 32);
    const Mask m(32, 32, true);

    GrayCosineMetricStub dino;
    CHECK(dino.score({&a, &a, nullptr, "", ""}) == doctest::Approx(1.0));
    CHECK(dino.score({&a, &b, nullptr, "", ""}) < 1.0);
    MaskedMseStub lpips;
    CHECK(lpips.score({&a, &a, &m, "", ""}) == 0.0);
    CHECK(lpips.score({&a, &b, &m, "", ""}) > 0.0);
    CHECK_THROWS_AS(lpips.score({&a, &b, nullptr, "", ""}), DomainError);

    BagOfWordsClipStub clip;
    CHECK(clip.score({&a, nullptr, nullptr, "a red lamp", "lamp red a"}) == 1.0);
    CHECK(clip.score({&a, nullptr, nullptr, "a red lamp", "a blue lamp"}) == doctest::Approx(0.5));

    CHECK(make_metric_scorer(MetricKind::clip, nullptr) == nullptr);
    CHECK(make_metric_scorer(MetricKind::lpips_bg, {{"type", "stub-masked-mse"}})->id() == "stub-masked-mse");
    CHECK_THROWS_AS(make_metric_scorer(MetricKind::clip, {{"type", "stub-masked-mse"}}), DomainError);
    CHECK_THROWS_AS(make_metric_scorer(MetricKind::clip, {{"type", "magic"}}), DomainError);
}

TEST_CASE("metric report omits absent fields") {
    std::mt19937_64 rng(15);
    const Image a = testing::random_image(rng, 3, 32, 32);
    MetricReport r;
    r.pair_id = "lamp-red-s0";
    r.ssim = 0.9;
    MaskedMseStub lpips;
    r.lpips_bg = score_with(&lpips, {&a, &a, nullptr, "", ""}, "lpips_bg", r);
    r.clip_score = score_with(nullptr, {}, "clip_score", r);
    GrayCosineMetricStub dino;
    r.dino_gray = score_with(&dino, {&a, &a, nullptr, "", ""}, "dino_gray", r);
    const auto j = to_json(r);
    CHECK_FALSE(j.contains("lpips_bg"));
    CHECK_FALSE(j.contains("clip_score"));
    CHECK_FALSE(j.contains("hue_l1"));
    CHECK(j.at("dino_gray").at("scorer_id") == "stub-gray-cosine");
    CHECK(j.at("omitted").contains("lpips_bg"));
    CHECK(j.at("omitted").at("clip_score") == "no adapter configured");
}
