// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>

#include <json.hpp>

#include "attrgen/core/image.hpp"
#include "attrgen/data/adapters.hpp"

namespace attrgen::metrics {

enum class MetricKind { clip, dino_gray, lpips_bg };

std::string to_string(MetricKind kind);

/// Everything a model-based metric might read. clip uses image + text,
/// dino_gray uses image + reference, lpips_bg uses image + reference + mask.
struct MetricInputs {
    const Image* image = nullptr;
    const Image* reference = nullptr;
    const Mask* mask = nullptr;
    std::string text;
    /// Caption of `image` when known (the prompt it was generated from).
    std::string image_caption;
};

class MetricScorer {
public:
    virtual ~MetricScorer() = default;
    virtual std::string id() const = 0;
    virtual MetricKind kind() const = 0;
    virtual double score(const MetricInputs& inputs) = 0;
};

// Stubs below are for exercising the evaluation plumbing. Their numbers are
// not comparable to the model-based metrics they stand in for.

/// Jaccard overlap between the token sets of text and image_caption.
class BagOfWordsClipStub final : public MetricScorer {
public:
    std::string id() const override { return "stub-bag-of-words"; }
    MetricKind kind() const override { return MetricKind::clip; }
    double score(const MetricInputs& inputs) override;
};

/// Gray-cosine similarity between image and reference.
class GrayCosineMetricStub final : public MetricScorer {
public:
    std::string id() const override { return "stub-gray-cosine"; }
    MetricKind kind() const override { return MetricKind::dino_gray; }
    double score(const MetricInputs& inputs) override;

private:
    data::GrayCosineScorer inner_;
};

/// Mean squared RGB difference over the masked pixels.
class MaskedMseStub final : public MetricScorer {
public:
    std::string id() const override { return "stub-masked-mse"; }
    MetricKind kind() const override { return MetricKind::lpips_bg; }
    double score(const MetricInputs& inputs) override;
};

/// POSTs multipart {image, reference?, mask?, text} and expects {"score": x}.
class HttpMetricScorer final : public MetricScorer {
public:
    HttpMetricScorer(MetricKind kind, data::HttpEndpoint endpoint) : kind_(kind), endpoint_(std::move(endpoint)) {}
    std::string id() const override { return "http:" + endpoint_.url; }
    MetricKind kind() const override { return kind_; }
    double score(const MetricInputs& inputs) override;

private:
    MetricKind kind_;
    data::HttpEndpoint endpoint_;
};

/// nullptr for a null spec (metric not configured). DomainError on an
/// unknown type or one that does not produce `kind`.
std::unique_ptr<MetricScorer> make_metric_scorer(MetricKind kind, const nlohmann::json& spec);

struct MetricValue {
    double value = 0.0;
    std::string scorer_id;
    bool operator==(const MetricValue&) const = default;
};

struct MetricReport {
    std::string pair_id;
    double ssim = 0.0;
    std::optional<MetricValue> hue_l1;
    std::optional<MetricValue> clip_score;
    std::optional<MetricValue> dino_gray;
    std::optional<MetricValue> lpips_bg;
    /// Field name -> why it is absent.
    std::map<std::string, std::string> omitted;
    /// Mask name -> file it was read from.
    std::map<std::string, std::string> masks;
};

nlohmann::json to_json(const MetricReport& report);

/// Runs the scorer if present. On a missing scorer or a scorer failure the
/// field stays empty and the reason is recorded under `field`.
std::optional<MetricValue> score_with(MetricScorer* scorer, const MetricInputs& inputs, const std::string& field,
                                      MetricReport& report);

}  // namespace attrgen::metrics
