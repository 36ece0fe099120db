// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/data/adapters.hpp"

#include <algorithm>
#include <cmath>

#include "attrgen/core/errors.hpp"

namespace attrgen::data {

std::string FailingJudge::ask(const ImageRef&, const std::string&) { throw IoError(message_); }

namespace {

std::vector<double> area_downsample(const Image& gray, int side) {
    if (gray.channels != 1) throw ShapeError("expected a single-channel image");
    std::vector<double> out(static_cast<std::size_t>(side) * side, 0.0);
    std::vector<double> weight(out.size(), 0.0);
    // Each source pixel lands in exactly one cell; for sizes not divisible
    // by `side` the cells differ by at most one row/column.
    for (int y = 0; y < gray.height; ++y) {
        const int cy = static_cast<int>(static_cast<long long>(y) * side / gray.height);
        for (int x = 0; x < gray.width; ++x) {
            const int cx = static_cast<int>(static_cast<long long>(x) * side / gray.width);
            out[cy * side + cx] += gray.at(0, y, x);
            weight[cy * side + cx] += 1.0;
        }
    }
    for (std::size_t i = 0; i < out.size(); ++i) {
        if (weight[i] > 0) out[i] /= weight[i];
    }
    return out;
}

}  // namespace

double GrayCosineScorer::similarity(const Image& gray_a, const Image& gray_b) {
    if (gray_a.height < side_ || gray_a.width < side_ || gray_b.height < side_ || gray_b.width < side_) {
        throw ShapeError("images smaller than the scorer grid");
    }
    const auto a = area_downsample(gray_a, side_);
    const auto b = area_downsample(gray_b, side_);
    double dot = 0, na = 0, nb = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        dot += a[i] * b[i];
        na += a[i] * a[i];
        nb += b[i] * b[i];
    }
    if (na == 0.0 && nb == 0.0) return 1.0;
    if (na == 0.0 || nb == 0.0) return 0.0;
    return std::clamp(dot / std::sqrt(na * nb), -1.0, 1.0);
}

std::vector<Box> CenterBoxDetector::detect(const ImageRef& image, const std::string&) {
    if (!image.pixels) throw DomainError("detector needs decoded pixels");
    const int h = image.pixels->height;
    const int w = image.pixels->width;
    const int side = static_cast<int>(std::lround(fraction_ * std::min(h, w)));
    if (side <= 0) return {};
    const int x0 = (w - side) / 2;
    const int y0 = (h - side) / 2;
    return {Box{x0, y0, x0 + side, y0 + side}};
}

std::vector<Box> FullFrameDetector::detect(const ImageRef& image, const std::string&) {
    if (!image.pixels) throw DomainError("detector needs decoded pixels");
    return {Box{0, 0, image.pixels->width, image.pixels->height}};
}

Mask BoxSegmenter::segment(const ImageRef& image, const Box& box) {
    if (!image.pixels) throw DomainError("segmenter needs decoded pixels");
    Mask mask(image.pixels->height, image.pixels->width, false);
    for (int y = std::max(0, box.y0); y < std::min(mask.height, box.y1); ++y)
        for (int x = std::max(0, box.x0); x < std::min(mask.width, box.x1); ++x) mask.set(y, x, true);
    return mask;
}

HttpEndpoint endpoint_from_json(const nlohmann::json& spec) {
    HttpEndpoint ep;
    ep.url = spec.at("url").get<std::string>();
    ep.auth_env = spec.value("auth_env", std::string());
    ep.timeout = std::chrono::seconds(spec.value("timeout_s", 60));
    return ep;
}

std::unique_ptr<VisualJudge> make_judge(const nlohmann::json& spec) {
    const auto type = spec.at("type").get<std::string>();
    if (type == "stub-constant") return std::make_unique<ConstantJudge>(spec.value("answer", std::string("yes")));
    if (type == "stub-failing") return std::make_unique<FailingJudge>(spec.value("message", std::string("judge unavailable")));
    if (type == "http") return std::make_unique<HttpJudge>(endpoint_from_json(spec));
    throw DomainError("unknown judge type '" + type + "'");
}

std::unique_ptr<SimilarityScorer> make_similarity_scorer(const nlohmann::json& spec) {
    const auto type = spec.at("type").get<std::string>();
    if (type == "stub-gray-cosine") return std::make_unique<GrayCosineScorer>(spec.value("side", 32));
    if (type == "stub-constant") return std::make_unique<ConstantScorer>(spec.at("value").get<double>());
    if (type == "http") return std::make_unique<HttpSimilarityScorer>(endpoint_from_json(spec));
    throw DomainError("unknown similarity scorer type '" + type + "'");
}

std::unique_ptr<ObjectDetector> make_detector(const nlohmann::json& spec) {
    const auto type = spec.at("type").get<std::string>();
    if (type == "stub-center-box") return std::make_unique<CenterBoxDetector>(spec.value("fraction", 0.5));
    if (type == "stub-full-frame") return std::make_unique<FullFrameDetector>();
    if (type == "stub-none") return std::make_unique<NullDetector>();
    throw DomainError("unknown detector type '" + type + "'");
}

std::unique_ptr<MaskGenerator> make_segmenter(const nlohmann::json& spec) {
    const auto type = spec.at("type").get<std::string>();
    if (type == "stub-box") return std::make_unique<BoxSegmenter>();
    throw DomainError("unknown segmenter type '" + type + "'");
}

}  // namespace attrgen::data
