// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/data/vocabulary.hpp"

#include <map>

#include "attrgen/core/color.hpp"
#include "attrgen/core/errors.hpp"

namespace attrgen::data {

const std::vector<std::string>& default_colors() {
    static const std::vector<std::string> colors{
        "amethyst", "azure",   "beige",  "black",  "blue",   "bronze", "brown",   "camel",     "copper",
        "coral",    "cream",   "crimson", "cyan",  "emerald", "gold",  "gray",    "green",     "indigo",
        "khaki",    "lime",    "magenta", "maroon", "navy",  "olive",  "orange",  "peach",     "pink",
        "plum",     "purple",  "red",    "rose",   "salmon", "silver", "slate",   "tan",       "taupe",
        "teal",     "tomato",  "turquoise", "violet", "white", "wine",  "yellow"};
    return colors;
}

const std::vector<std::string>& default_materials() {
    static const std::vector<std::string> materials{"cotton", "glass", "marble", "plastic", "velvet",
                                                    "denim",  "lace",  "mesh",   "wood",    "fur",
                                                    "leather", "metal", "suede", "wool"};
    return materials;
}

const std::vector<std::string>& default_prompt_templates() {
    static const std::vector<std::string> templates{
        "a photo of a {subject}",
        "a close-up photo of a {subject}",
        "a studio photo of a {subject} on a white background",
        "a high-resolution photo of a {subject}",
        "a product shot of a {subject}",
        "a {subject} on a wooden table",
        "a {subject} in a bright room",
        "a photo of a single {subject}",
        "a realistic rendering of a {subject}",
        "a centered photo of a {subject}",
        "a {subject} under soft natural light",
        "a detailed photo of a {subject}",
        "a professional photo of a {subject}",
        "a {subject} on a plain gray background",
        "a photo of a {subject} outdoors",
        "a simple photo of a {subject}",
        "a sharp photo of a {subject} with a blurred background",
        "an image of a {subject}",
        "a well-lit photo of a {subject}",
    };
    return templates;
}

const std::vector<std::string>& demo_subjects() {
    static const std::vector<std::string> subjects{"lamp", "mug", "handbag", "chair", "car", "sneaker", "vase", "jacket"};
    return subjects;
}

const std::vector<std::string>& AttributeVocabulary::descriptors(AttributeKind kind) const {
    switch (kind) {
        case AttributeKind::color: return colors;
        case AttributeKind::material: return materials;
        case AttributeKind::custom: break;
    }
    throw DomainError("custom attributes have no built-in descriptor list");
}

namespace {

// CSS / X11 values where the name exists there; the rest use common
// web-color references (amethyst, azure as the saturated blue, bronze,
// camel, copper, cream, emerald, peach, rose, taupe, wine).
const std::map<std::string, Rgb, std::less<>>& color_table() {
    static const std::map<std::string, Rgb, std::less<>> table{
        {"amethyst", {153, 102, 204}}, {"azure", {0, 127, 255}},    {"beige", {245, 245, 220}},
        {"black", {0, 0, 0}},          {"blue", {0, 0, 255}},       {"bronze", {205, 127, 50}},
        {"brown", {165, 42, 42}},      {"camel", {193, 154, 107}},  {"copper", {184, 115, 51}},
        {"coral", {255, 127, 80}},     {"cream", {255, 253, 208}},  {"crimson", {220, 20, 60}},
        {"cyan", {0, 255, 255}},       {"emerald", {80, 200, 120}}, {"gold", {255, 215, 0}},
        {"gray", {128, 128, 128}},     {"green", {0, 128, 0}},      {"indigo", {75, 0, 130}},
        {"khaki", {240, 230, 140}},    {"lime", {0, 255, 0}},       {"magenta", {255, 0, 255}},
        {"maroon", {128, 0, 0}},       {"navy", {0, 0, 128}},       {"olive", {128, 128, 0}},
        {"orange", {255, 165, 0}},     {"peach", {255, 229, 180}},  {"pink", {255, 192, 203}},
        {"plum", {221, 160, 221}},     {"purple", {128, 0, 128}},   {"red", {255, 0, 0}},
        {"rose", {255, 0, 127}},       {"salmon", {250, 128, 114}}, {"silver", {192, 192, 192}},
        {"slate", {112, 128, 144}},    {"tan", {210, 180, 140}},    {"taupe", {72, 60, 50}},
        {"teal", {0, 128, 128}},       {"tomato", {255, 99, 71}},   {"turquoise", {64, 224, 208}},
        {"violet", {238, 130, 238}},   {"white", {255, 255, 255}},  {"wine", {114, 47, 55}},
        {"yellow", {255, 255, 0}},
    };
    return table;
}

}  // namespace

std::optional<Rgb> find_color_rgb(std::string_view name) {
    const auto& table = color_table();
    auto it = table.find(name);
    if (it == table.end()) return std::nullopt;
    return it->second;
}

Rgb color_rgb(std::string_view name) {
    auto rgb = find_color_rgb(name);
    if (!rgb) throw VocabularyError("unknown color '" + std::string(name) + "'");
    return *rgb;
}

std::string hue_family(std::string_view color_name) {
    const Rgb c = color_rgb(color_name);
    const Hsv hsv = rgb_to_hsv(c.r / 255.0, c.g / 255.0, c.b / 255.0);
    if (hsv.s < 0.15 || hsv.v < 0.15) return "neutral";
    const double h = hsv.h;
    if (h < 15.0 || h >= 345.0) return "red";
    if (h < 45.0) return "orange";
    if (h < 70.0) return "yellow";
    if (h < 170.0) return "green";
    if (h < 200.0) return "cyan";
    if (h < 260.0) return "blue";
    return "purple";
}

std::string compose_prompt(std::string_view prompt_template, std::string_view subject,
                           std::optional<std::string_view> descriptor) {
    static constexpr std::string_view placeholder = "{subject}";
    std::string filler = descriptor ? std::string(*descriptor) + " " + std::string(subject) : std::string(subject);
    std::string out(prompt_template);
    const auto pos = out.find(placeholder);
    if (pos == std::string::npos) throw DomainError("prompt template lacks {subject}: " + out);
    out.replace(pos, placeholder.size(), filler);
    return out;
}

}  // namespace attrgen::data
