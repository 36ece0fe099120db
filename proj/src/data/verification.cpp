// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/data/verification.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <thread>

#include <spdlog/spdlog.h>

#include "attrgen/core/errors.hpp"

namespace attrgen::data {

std::string to_string(VerdictStatus status) {
    switch (status) {
        case VerdictStatus::pass: return "pass";
        case VerdictStatus::fail: return "fail";
        case VerdictStatus::pending: return "pending";
        case VerdictStatus::detection_miss: return "detection_miss";
        case VerdictStatus::skipped: return "skipped";
    }
    return "skipped";
}

VerdictStatus verdict_status_from_string(std::string_view name) {
    for (auto s : {VerdictStatus::pass, VerdictStatus::fail, VerdictStatus::pending, VerdictStatus::detection_miss,
                   VerdictStatus::skipped}) {
        if (to_string(s) == name) return s;
    }
    throw DomainError("unknown verdict status '" + std::string(name) + "'");
}

std::string format_verification_query(std::string_view attribute_kind, std::string_view subject,
                                      std::string_view descriptor) {
    if (attribute_kind.empty() || subject.empty() || descriptor.empty()) {
        throw DomainError("verification query needs a nonempty kind, subject and descriptor");
    }
    std::string out;
    out.reserve(64 + attribute_kind.size() + subject.size() + descriptor.size());
    out += "What ";
    out += attribute_kind;
    out += " does the ";
    out += subject;
    out += " appear to be? ";
    out += descriptor;
    out += "? Answer yes or no.";
    return out;
}

std::string format_verification_query(AttributeKind kind, std::string_view subject, std::string_view descriptor) {
    return format_verification_query(to_string(kind), subject, descriptor);
}

std::string normalize_answer(std::string_view raw) {
    std::size_t b = 0, e = raw.size();
    auto strip = [](unsigned char c) { return std::isspace(c) || std::ispunct(c); };
    while (b < e && strip(static_cast<unsigned char>(raw[b]))) ++b;
    while (e > b && strip(static_cast<unsigned char>(raw[e - 1]))) --e;
    std::string out(raw.substr(b, e - b));
    for (auto& c : out) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    return out;
}

JudgeVerdict judge_target(VisualJudge& judge, const ImageRef& image, const std::string& query,
                          const RetryPolicy& retry) {
    JudgeVerdict verdict;
    verdict.query = query;
    const int attempts = std::max(1, retry.max_attempts);
    for (int i = 0; i < attempts; ++i) {
        verdict.attempts = i + 1;
        try {
            verdict.raw_answer = judge.ask(image, query);
            verdict.error.clear();
            verdict.status = normalize_answer(verdict.raw_answer) == "yes" ? VerdictStatus::pass : VerdictStatus::fail;
            return verdict;
        } catch (const std::exception& e) {
            verdict.error = e.what();
            spdlog::warn("judge {} attempt {}/{} failed: {}", judge.id(), i + 1, attempts, e.what());
        }
        if (i + 1 < attempts && retry.backoff.count() > 0) std::this_thread::sleep_for(retry.backoff * (1 << i));
    }
    verdict.status = VerdictStatus::pending;
    return verdict;
}

double SimilarityThresholds::for_kind(AttributeKind kind) const {
    switch (kind) {
        case AttributeKind::color: return color;
        case AttributeKind::material: return material;
        case AttributeKind::custom: return custom;
    }
    return custom;
}

SimilarityVerdict similarity_gate(SimilarityScorer& scorer, const Image& source, const Image& target,
                                  AttributeKind kind, const SimilarityThresholds& thresholds) {
    if (source.height != target.height || source.width != target.width) {
        throw ShapeError("similarity_gate: image sizes differ");
    }
    SimilarityVerdict verdict;
    verdict.threshold = thresholds.for_kind(kind);
    verdict.scorer_id = scorer.id();
    try {
        const double score = scorer.similarity(to_grayscale(source), to_grayscale(target));
        verdict.score = score;
        verdict.status = score >= verdict.threshold ? VerdictStatus::pass : VerdictStatus::fail;
    } catch (const std::exception& e) {
        verdict.status = VerdictStatus::pending;
        verdict.error = e.what();
    }
    return verdict;
}

BackgroundMaskResult background_mask(ObjectDetector& detector, MaskGenerator& segmenter, const ImageRef& image,
                                     const std::string& subject) {
    if (!image.pixels) throw DomainError("background_mask needs decoded pixels");
    const int h = image.pixels->height;
    const int w = image.pixels->width;
    BackgroundMaskResult result;
    result.object = Mask(h, w, false);
    result.boxes = detector.detect(image, subject);
    if (result.boxes.empty()) {
        result.status = VerdictStatus::detection_miss;
        result.background = Mask(h, w, false);
        return result;
    }
    for (const Box& raw : result.boxes) {
        const Box box{std::clamp(raw.x0, 0, w), std::clamp(raw.y0, 0, h), std::clamp(raw.x1, 0, w),
                      std::clamp(raw.y1, 0, h)};
        const Mask part = segmenter.segment(image, box);
        if (part.height != h || part.width != w) throw ShapeError("segmenter mask size differs from image");
        for (int y = box.y0; y < box.y1; ++y) {
            for (int x = box.x0; x < box.x1; ++x) {
                if (part.at(y, x)) result.object.set(y, x, true);
            }
        }
    }
    result.background = result.object.inverted();
    return result;
}

std::size_t leakage_count(const Image& source, const Image& target, const Mask& background, int pixel_tolerance) {
    if (!source.same_shape(target)) throw ShapeError("leakage_count: image shapes differ");
    if (background.height != source.height || background.width != source.width) {
        throw ShapeError("leakage_count: mask size differs from images");
    }
    if (pixel_tolerance < 0) throw DomainError("pixel_tolerance must be >= 0");
    std::size_t count = 0;
    for (int y = 0; y < source.height; ++y) {
        for (int x = 0; x < source.width; ++x) {
            if (!background.at(y, x)) continue;
            int worst = 0;
            for (int c = 0; c < source.channels; ++c) {
                worst = std::max(worst, std::abs(int(to_u8(source.at(c, y, x))) - int(to_u8(target.at(c, y, x)))));
            }
            if (worst > pixel_tolerance) ++count;
        }
    }
    return count;
}

std::size_t LeakageOptions::effective_threshold(int height, int width) const {
    if (!scale_with_resolution || reference_pixels == 0) return threshold;
    const double pixels = double(height) * double(width);
    return static_cast<std::size_t>(std::floor(double(threshold) * pixels / double(reference_pixels)));
}

LeakageVerdict leakage_gate(const Image& source, const Image& target, const Mask& background,
                            const LeakageOptions& options) {
    LeakageVerdict verdict;
    verdict.threshold = options.effective_threshold(source.height, source.width);
    const std::size_t count = leakage_count(source, target, background, options.pixel_tolerance);
    verdict.count = count;
    verdict.status = leakage_discard(count, verdict.threshold) ? VerdictStatus::fail : VerdictStatus::pass;
    return verdict;
}

}  // namespace attrgen::data
