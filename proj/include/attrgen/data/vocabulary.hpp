// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "attrgen/core/attribute.hpp"

namespace attrgen::data {

/// The 43 color names, in canonical order.
const std::vector<std::string>& default_colors();
/// The 14 material names, in canonical order.
const std::vector<std::string>& default_materials();
/// 19 source-prompt templates, each with one "{subject}" placeholder.
const std::vector<std::string>& default_prompt_templates();
/// Small demo subject list; real runs load subjects from config.
const std::vector<std::string>& demo_subjects();

struct AttributeVocabulary {
    std::vector<std::string> colors = default_colors();
    std::vector<std::string> materials = default_materials();
    std::vector<std::string> subjects = demo_subjects();
    std::vector<std::string> prompt_templates = default_prompt_templates();

    /// Colors for color, materials for material; DomainError for custom.
    const std::vector<std::string>& descriptors(AttributeKind kind) const;
};

struct Rgb {
    std::uint8_t r = 0;
    std::uint8_t g = 0;
    std::uint8_t b = 0;
    bool operator==(const Rgb&) const = default;
};

/// Named-color table covering every default color. VocabularyError if absent.
Rgb color_rgb(std::string_view name);
std::optional<Rgb> find_color_rgb(std::string_view name);

/// Coarse hue family of a table color: "neutral" for low saturation or
/// value, else one of red, orange, yellow, green, cyan, blue, purple.
std::string hue_family(std::string_view color_name);

/// Fills "{subject}" with the subject, prefixed by the descriptor when given.
std::string compose_prompt(std::string_view prompt_template, std::string_view subject,
                           std::optional<std::string_view> descriptor = std::nullopt);

}  // namespace attrgen::data
