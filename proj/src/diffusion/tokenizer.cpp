// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/diffusion/tokenizer.hpp"

#include <cctype>

namespace attrgen::diffusion {

std::string normalize_token(std::string_view token) {
    std::string out;
    out.reserve(token.size());
    for (unsigned char c : token) {
        if (std::ispunct(c) || std::isspace(c)) continue;
        out += static_cast<char>(std::tolower(c));
    }
    return out;
}

std::vector<std::string> WhitespaceTokenizer::tokenize(std::string_view text) const {
    std::vector<std::string> tokens;
    std::size_t i = 0;
    while (i < text.size()) {
        while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
        std::size_t j = i;
        while (j < text.size() && !std::isspace(static_cast<unsigned char>(text[j]))) ++j;
        if (j > i) {
            std::string tok = normalize_token(text.substr(i, j - i));
            if (!tok.empty()) tokens.push_back(std::move(tok));
        }
        i = j;
    }
    return tokens;
}

}  // namespace attrgen::diffusion
