// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/spaa/prompt.hpp"

#include <algorithm>

#include "attrgen/core/errors.hpp"

namespace attrgen::spaa {

std::vector<std::size_t> AnnotatedPrompt::attribute_indices() const {
    std::vector<std::size_t> out;
    out.reserve(attribute_spans.size());
    for (const auto& span : attribute_spans) out.push_back(span.token_index);
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

void AnnotatedPrompt::validate() const {
    for (const auto& span : attribute_spans) {
        if (span.token_index >= tokens.size()) {
            throw BoundsError("attribute span index " + std::to_string(span.token_index) + " out of range for " +
                              std::to_string(tokens.size()) + " tokens");
        }
        const std::string& tok = tokens[span.token_index];
        // Multi-token descriptors: the token must be one of the descriptor's words.
        diffusion::WhitespaceTokenizer words;
        const auto parts = words.tokenize(span.descriptor);
        if (std::find(parts.begin(), parts.end(), diffusion::normalize_token(tok)) == parts.end()) {
            throw DomainError("token '" + tok + "' does not match descriptor '" + span.descriptor + "'");
        }
    }
    if (subject_span && (subject_span->first >= subject_span->second || subject_span->second > tokens.size())) {
        throw BoundsError("subject span out of range");
    }
}

namespace {

std::vector<std::size_t> find_runs(const std::vector<std::string>& tokens, const std::vector<std::string>& needle) {
    std::vector<std::size_t> starts;
    if (needle.empty() || needle.size() > tokens.size()) return starts;
    for (std::size_t i = 0; i + needle.size() <= tokens.size(); ++i) {
        if (std::equal(needle.begin(), needle.end(), tokens.begin() + static_cast<std::ptrdiff_t>(i))) starts.push_back(i);
    }
    return starts;
}

}  // namespace

AnnotatedPrompt locate_attribute_tokens(std::string_view prompt_text, const std::vector<std::string>& attrs,
                                        const diffusion::Tokenizer& tokenizer, std::optional<std::string> subject) {
    if (attrs.empty()) throw DomainError("attribute descriptor list is empty");
    AnnotatedPrompt out;
    out.text = std::string(prompt_text);
    out.tokens = tokenizer.tokenize(prompt_text);
    for (const std::string& descriptor : attrs) {
        const auto parts = tokenizer.tokenize(descriptor);
        const auto starts = find_runs(out.tokens, parts);
        if (starts.empty()) throw DescriptorNotFound(descriptor);
        for (std::size_t s : starts)
            for (std::size_t j = 0; j < parts.size(); ++j) out.attribute_spans.push_back({s + j, descriptor});
    }
    std::sort(out.attribute_spans.begin(), out.attribute_spans.end(),
              [](const AttributeSpan& a, const AttributeSpan& b) { return a.token_index < b.token_index; });
    if (subject) {
        const auto parts = tokenizer.tokenize(*subject);
        const auto starts = find_runs(out.tokens, parts);
        if (!starts.empty()) out.subject_span = std::pair{starts.back(), starts.back() + parts.size()};
    }
    return out;
}

}  // namespace attrgen::spaa
