// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/metrics/scorers.hpp"

#include <algorithm>
#include <set>

#include "attrgen/core/errors.hpp"
#include "attrgen/diffusion/tokenizer.hpp"

using nlohmann::json;

namespace attrgen::metrics {

std::string to_string(MetricKind kind) {
    switch (kind) {
        case MetricKind::clip: return "clip";
        case MetricKind::dino_gray: return "dino_gray";
        case MetricKind::lpips_bg: return "lpips_bg";
    }
    return "clip";
}

double BagOfWordsClipStub::score(const MetricInputs& inputs) {
    const diffusion::WhitespaceTokenizer tok;
    const auto a_tokens = tok.tokenize(inputs.text);
    const auto b_tokens = tok.tokenize(inputs.image_caption);
    const std::set<std::string> a(a_tokens.begin(), a_tokens.end());
    const std::set<std::string> b(b_tokens.begin(), b_tokens.end());
    if (a.empty() && b.empty()) return 0.0;
    std::size_t common = 0;
    for (const auto& t : a) common += b.count(t);
    return static_cast<double>(common) / static_cast<double>(a.size() + b.size() - common);
}

double GrayCosineMetricStub::score(const MetricInputs& inputs) {
    if (!inputs.image || !inputs.reference) throw DomainError("dino_gray needs an image and a reference");
    auto gray = [](const Image& img) { return img.channels == 1 ? img : to_grayscale(img); };
    return inner_.similarity(gray(*inputs.image), gray(*inputs.reference));
}

double MaskedMseStub::score(const MetricInputs& inputs) {
    if (!inputs.image || !inputs.reference || !inputs.mask) {
        throw DomainError("lpips_bg needs an image, a reference and a mask");
    }
    const Image& a = *inputs.image;
    const Image& b = *inputs.reference;
    const Mask& m = *inputs.mask;
    if (!a.same_shape(b) || m.height != a.height || m.width != a.width) throw ShapeError("lpips_bg: shape mismatch");
    if (m.count() == 0) throw DomainError("lpips_bg: empty mask");
    double total = 0.0;
    for (int c = 0; c < a.channels; ++c) {
        for (int y = 0; y < a.height; ++y) {
            for (int x = 0; x < a.width; ++x) {
                if (!m.at(y, x)) continue;
                const double d = double(a.at(c, y, x)) - double(b.at(c, y, x));
                total += d * d;
            }
        }
    }
    return total / (static_cast<double>(m.count()) * a.channels);
}

std::unique_ptr<MetricScorer> make_metric_scorer(MetricKind kind, const json& spec) {
    if (spec.is_null()) return nullptr;
    const auto type = spec.at("type").get<std::string>();
    std::unique_ptr<MetricScorer> out;
    if (type == "http") {
        out = std::make_unique<HttpMetricScorer>(kind, data::endpoint_from_json(spec));
    } else if (type == "stub-bag-of-words") {
        out = std::make_unique<BagOfWordsClipStub>();
    } else if (type == "stub-gray-cosine") {
        out = std::make_unique<GrayCosineMetricStub>();
    } else if (type == "stub-masked-mse") {
        out = std::make_unique<MaskedMseStub>();
    } else {
        throw DomainError("unknown metric scorer type '" + type + "'");
    }
    if (out->kind() != kind) {
        throw DomainError("scorer '" + type + "' computes " + to_string(out->kind()) + ", not " + to_string(kind));
    }
    return out;
}

namespace {

json value_json(const std::optional<MetricValue>& v) {
    if (!v) return nullptr;
    return json{{"value", v->value}, {"scorer_id", v->scorer_id}};
}

}  // namespace

json to_json(const MetricReport& report) {
    json j;
    j["pair_id"] = report.pair_id;
    j["ssim"] = report.ssim;
    const std::pair<const char*, const std::optional<MetricValue>*> fields[] = {
        {"hue_l1", &report.hue_l1},
        {"clip_score", &report.clip_score},
        {"dino_gray", &report.dino_gray},
        {"lpips_bg", &report.lpips_bg},
    };
    for (const auto& [name, value] : fields) {
        if (*value) j[name] = value_json(*value);
    }
    j["omitted"] = report.omitted;
    j["masks"] = report.masks;
    return j;
}

std::optional<MetricValue> score_with(MetricScorer* scorer, const MetricInputs& inputs, const std::string& field,
                                      MetricReport& report) {
    if (!scorer) {
        report.omitted[field] = "no adapter configured";
        return std::nullopt;
    }
    try {
        return MetricValue{scorer->score(inputs), scorer->id()};
    } catch (const std::exception& e) {
        report.omitted[field] = std::string("adapter ") + scorer->id() + " failed: " + e.what();
        return std::nullopt;
    }
}

}  // namespace attrgen::metrics
