// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include <cstdlib>
#include <regex>

#include <httplib.h>

#include "attrgen/core/errors.hpp"
#include "attrgen/core/png_io.hpp"
#include "attrgen/data/adapters.hpp"
#include "attrgen/metrics/scorers.hpp"

namespace attrgen::data {

namespace {

struct SplitUrl {
    std::string origin;
    std::string path;
};

SplitUrl split_url(const std::string& url) {
    static const std::regex pattern(R"(^(http://[^/]+)(/.*)?$)");
    std::smatch m;
    if (!std::regex_match(url, m, pattern)) throw DomainError("unsupported endpoint URL '" + url + "' (http only)");
    return {m[1].str(), m[2].matched ? m[2].str() : "/"};
}

}  // namespace

nlohmann::json post(const HttpEndpoint& ep, const httplib::MultipartFormDataItems& items) {
    const auto [origin, path] = split_url(ep.url);
    httplib::Client client(origin);
    client.set_connection_timeout(ep.timeout);
    client.set_read_timeout(ep.timeout);
    httplib::Headers headers;
    if (!ep.auth_env.empty()) {
        const char* token = std::getenv(ep.auth_env.c_str());
        if (!token) throw IoError("auth environment variable " + ep.auth_env + " is not set");
        headers.emplace("Authorization", std::string("Bearer ") + token);
    }
    auto res = client.Post(path, headers, items);
    if (!res) throw IoError("request to " + ep.url + " failed: " + httplib::to_string(res.error()));
    if (res->status != 200) throw IoError("request to " + ep.url + " returned HTTP " + std::to_string(res->status));
    return nlohmann::json::parse(res->body);
}

std::string HttpJudge::ask(const ImageRef& image, const std::string& question) {
    if (!image.pixels) throw DomainError("remote judge needs decoded pixels");
    httplib::MultipartFormDataItems items{
        {"question", question, "", ""},
        {"image", io::encode_png(*image.pixels), "image.png", "image/png"},
    };
    return post(endpoint_, items).at("answer").get<std::string>();
}

double HttpSimilarityScorer::similarity(const Image& gray_a, const Image& gray_b) {
    httplib::MultipartFormDataItems items{
        {"image_a", io::encode_png(gray_a), "a.png", "image/png"},
        {"image_b", io::encode_png(gray_b), "b.png", "image/png"},
    };
    return post(endpoint_, items).at("score").get<double>();
}

}  // namespace attrgen::data

namespace attrgen::metrics {

double HttpMetricScorer::score(const MetricInputs& inputs) {
    if (!inputs.image) throw DomainError("remote metric needs an image");
    httplib::MultipartFormDataItems items{
        {"metric", to_string(kind_), "", ""},
        {"text", inputs.text, "", ""},
        {"image", io::encode_png(*inputs.image), "image.png", "image/png"},
    };
    if (inputs.reference) items.push_back({"reference", io::encode_png(*inputs.reference), "reference.png", "image/png"});
    if (inputs.mask) {
        Image m(1, inputs.mask->height, inputs.mask->width);
        for (std::size_t i = 0; i < m.data.size(); ++i) m.data[i] = inputs.mask->data[i] ? 1.0f : 0.0f;
        items.push_back({"mask", io::encode_png(m), "mask.png", "image/png"});
    }
    return data::post(endpoint_, items).at("score").get<double>();
}

}  // namespace attrgen::metrics
