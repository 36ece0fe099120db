// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace attrgen::diffusion {

class Tokenizer {
public:
    virtual ~Tokenizer() = default;
    /// Tokens in prompt order; row i of the text embedding belongs to token i.
    virtual std::vector<std::string> tokenize(std::string_view text) const = 0;
};

/// Lowercase with ASCII punctuation removed.
std::string normalize_token(std::string_view token);

/// Splits on whitespace and normalizes each piece; pieces that normalize to
/// nothing (a lone "-", say) are dropped.
class WhitespaceTokenizer final : public Tokenizer {
public:
    std::vector<std::string> tokenize(std::string_view text) const override;
};

}  // namespace attrgen::diffusion
