// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "attrgen/diffusion/tokenizer.hpp"

namespace attrgen::spaa {

struct AttributeSpan {
    std::size_t token_index = 0;
    std::string descriptor;
    bool operator==(const AttributeSpan&) const = default;
};

/// A tokenized prompt with its attribute-descriptor tokens marked.
struct AnnotatedPrompt {
    std::string text;
    std::vector<std::string> tokens;
    std::vector<AttributeSpan> attribute_spans;
    /// Half-open token range of the subject phrase, when known.
    std::optional<std::pair<std::size_t, std::size_t>> subject_span;

    /// Sorted, de-duplicated token indices covered by attribute spans.
    std::vector<std::size_t> attribute_indices() const;
    /// Span indices in range and matching their token text after normalization.
    void validate() const;
};

/// Marks every occurrence of every descriptor. A descriptor that tokenizes to
/// several tokens marks each of them when they appear contiguously.
/// DomainError on an empty list; DescriptorNotFound names the first missing one.
AnnotatedPrompt locate_attribute_tokens(std::string_view prompt_text, const std::vector<std::string>& attrs,
                                        const diffusion::Tokenizer& tokenizer,
                                        std::optional<std::string> subject = std::nullopt);

}  // namespace attrgen::spaa
