// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <chrono>
#include <memory>
#include <string>

#include <json.hpp>

#include "attrgen/data/verification.hpp"

namespace attrgen::data {

// Deterministic stand-ins for the external judge, scorer, detector and
// segmenter. None of them says anything about real image quality.

class ConstantJudge final : public VisualJudge {
public:
    explicit ConstantJudge(std::string answer) : answer_(std::move(answer)) {}
    std::string id() const override { return "stub-constant:" + answer_; }
    std::string ask(const ImageRef&, const std::string&) override { return answer_; }

private:
    std::string answer_;
};

class FailingJudge final : public VisualJudge {
public:
    explicit FailingJudge(std::string message = "judge unavailable") : message_(std::move(message)) {}
    std::string id() const override { return "stub-failing"; }
    std::string ask(const ImageRef&, const std::string&) override;

private:
    std::string message_;
};

/// Cosine similarity of 32x32 area-downsampled intensity vectors.
class GrayCosineScorer final : public SimilarityScorer {
public:
    explicit GrayCosineScorer(int side = 32) : side_(side) {}
    std::string id() const override { return "stub-gray-cosine"; }
    double similarity(const Image& gray_a, const Image& gray_b) override;

private:
    int side_;
};

class ConstantScorer final : public SimilarityScorer {
public:
    explicit ConstantScorer(double value) : value_(value) {}
    std::string id() const override { return "stub-constant"; }
    double similarity(const Image&, const Image&) override { return value_; }

private:
    double value_;
};

/// Centered square box whose side is `fraction` of the shorter image side.
class CenterBoxDetector final : public ObjectDetector {
public:
    explicit CenterBoxDetector(double fraction = 0.5) : fraction_(fraction) {}
    std::string id() const override { return "stub-center-box"; }
    std::vector<Box> detect(const ImageRef& image, const std::string& phrase) override;

private:
    double fraction_;
};

class FixedBoxDetector final : public ObjectDetector {
public:
    explicit FixedBoxDetector(Box box) : box_(box) {}
    std::string id() const override { return "stub-fixed-box"; }
    std::vector<Box> detect(const ImageRef&, const std::string&) override { return {box_}; }

private:
    Box box_;
};

class FullFrameDetector final : public ObjectDetector {
public:
    std::string id() const override { return "stub-full-frame"; }
    std::vector<Box> detect(const ImageRef& image, const std::string& phrase) override;
};

class NullDetector final : public ObjectDetector {
public:
    std::string id() const override { return "stub-none"; }
    std::vector<Box> detect(const ImageRef&, const std::string&) override { return {}; }
};

/// Marks every pixel of the box as object.
class BoxSegmenter final : public MaskGenerator {
public:
    std::string id() const override { return "stub-box"; }
    Mask segment(const ImageRef& image, const Box& box) override;
};

/// Remote service endpoint. The auth token is read from the environment
/// variable named by auth_env at call time; it never appears in config.
struct HttpEndpoint {
    std::string url;
    std::string auth_env;
    std::chrono::seconds timeout{60};
};

/// POSTs multipart {question, image} and expects JSON {"answer": "..."}.
class HttpJudge final : public VisualJudge {
public:
    explicit HttpJudge(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
    std::string id() const override { return "http:" + endpoint_.url; }
    std::string ask(const ImageRef& image, const std::string& question) override;

private:
    HttpEndpoint endpoint_;
};

/// POSTs multipart {image_a, image_b} and expects JSON {"score": x}.
class HttpSimilarityScorer final : public SimilarityScorer {
public:
    explicit HttpSimilarityScorer(HttpEndpoint endpoint) : endpoint_(std::move(endpoint)) {}
    std::string id() const override { return "http:" + endpoint_.url; }
    double similarity(const Image& gray_a, const Image& gray_b) override;

private:
    HttpEndpoint endpoint_;
};

HttpEndpoint endpoint_from_json(const nlohmann::json& spec);

/// Factories keyed by the "type" field of an adapter spec. DomainError on an
/// unknown type.
std::unique_ptr<VisualJudge> make_judge(const nlohmann::json& spec);
std::unique_ptr<SimilarityScorer> make_similarity_scorer(const nlohmann::json& spec);
std::unique_ptr<ObjectDetector> make_detector(const nlohmann::json& spec);
std::unique_ptr<MaskGenerator> make_segmenter(const nlohmann::json& spec);

}  // namespace attrgen::data
