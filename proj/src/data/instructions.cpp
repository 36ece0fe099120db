// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/data/instructions.hpp"

#include "attrgen/core/errors.hpp"
#include "attrgen/data/vocabulary.hpp"

namespace attrgen::data {

std::string to_string(TemplateCategory category) {
    switch (category) {
        case TemplateCategory::transform_a: return "transform_a";
        case TemplateCategory::cross_attribute_b: return "cross_attribute_b";
        case TemplateCategory::same_hue_c: return "same_hue_c";
    }
    return "transform_a";
}

TemplateCategory template_category_from_string(std::string_view name) {
    for (auto c : {TemplateCategory::transform_a, TemplateCategory::cross_attribute_b, TemplateCategory::same_hue_c}) {
        if (to_string(c) == name) return c;
    }
    throw DomainError("unknown template category '" + std::string(name) + "'");
}

const std::vector<InstructionTemplate>& default_template_bank() {
    using C = TemplateCategory;
    static const std::vector<InstructionTemplate> bank{
        {C::transform_a, "Change the {kind} of the {subject} to {target}."},
        {C::transform_a, "Make the {subject} {target}."},
        {C::transform_a, "Give the {subject} a {target} {kind}."},
        {C::transform_a, "Switch the {subject}'s {kind} to {target}."},
        {C::transform_a, "Edit the image so the {subject} is {target}."},
        {C::transform_a, "Turn this {subject} into a {target} {subject}."},
        {C::transform_a, "Replace the {kind} of the {subject} with {target}."},
        {C::transform_a, "Update the {subject} to have a {target} {kind}."},
        {C::transform_a, "Change the {kind} of the {subject} from {source} to {target}.", true},
        {C::transform_a, "Turn the {source} {subject} into a {target} one.", true},

        {C::cross_attribute_b, "Show the same {subject} in {target}."},
        {C::cross_attribute_b, "Generate this {subject} with a {target} {kind} instead."},
        {C::cross_attribute_b, "Render the {subject} again, but {target}."},
        {C::cross_attribute_b, "Keep the {subject} as it is and only set its {kind} to {target}."},
        {C::cross_attribute_b, "Produce a {target} version of the {subject}."},
        {C::cross_attribute_b, "Create a variant of this {subject} that is {target}."},
        {C::cross_attribute_b, "Show a {target} variation of the {subject}, keeping everything else unchanged."},
        {C::cross_attribute_b, "Give me the {subject} in {target} {kind}."},
        {C::cross_attribute_b, "Swap the {source} {kind} of the {subject} for {target}.", true},

        {C::same_hue_c, "Shift the {subject} to a {target} shade of {hue}."},
        {C::same_hue_c, "Adjust brightness and saturation so the {subject} becomes {target}."},
        {C::same_hue_c, "Keep the {subject} {hue} but make it {target}."},
        {C::same_hue_c, "Fine-tune the {subject}'s color to {target} without leaving the {hue} range."},
        {C::same_hue_c, "Make the {subject} a {target} tone of {hue}."},
        {C::same_hue_c, "Nudge the {subject}'s {hue} color toward {target}."},
        {C::same_hue_c, "Refine the {subject}'s color to {target}, staying in the same hue."},
        {C::same_hue_c, "Change only the lightness and saturation of the {subject} to get {target}."},
        {C::same_hue_c, "Change the {subject} from {source} to {target}, a nearby {hue} shade.", true},
    };
    return bank;
}

void check_category(TemplateCategory category, const InstructionFields& fields) {
    if (fields.subject.empty() || fields.target_descriptor.empty()) {
        throw CategoryError("instruction fields need a subject and a target descriptor");
    }
    if (category != TemplateCategory::same_hue_c) return;
    if (fields.attribute_kind != AttributeKind::color) {
        throw CategoryError("same_hue_c applies to color attributes only, got " + to_string(fields.attribute_kind));
    }
    if (!find_color_rgb(fields.target_descriptor)) {
        throw CategoryError("same_hue_c target '" + fields.target_descriptor + "' is not in the color table");
    }
    if (fields.source_descriptor) {
        if (!find_color_rgb(*fields.source_descriptor)) {
            throw CategoryError("same_hue_c source '" + *fields.source_descriptor + "' is not in the color table");
        }
        const auto src = hue_family(*fields.source_descriptor);
        const auto tgt = hue_family(fields.target_descriptor);
        if (src != tgt) {
            throw CategoryError("same_hue_c needs one hue family, got " + src + " and " + tgt);
        }
    }
}

std::vector<TemplateCategory> applicable_categories(const InstructionFields& fields) {
    std::vector<TemplateCategory> out;
    for (auto c : {TemplateCategory::transform_a, TemplateCategory::cross_attribute_b, TemplateCategory::same_hue_c}) {
        try {
            check_category(c, fields);
            out.push_back(c);
        } catch (const CategoryError&) {
        }
    }
    return out;
}

std::string fill_template(const InstructionTemplate& tmpl, const InstructionFields& fields) {
    if (tmpl.needs_source && !fields.source_descriptor) throw CategoryError("template needs a source descriptor");
    std::string out;
    const std::string& t = tmpl.text;
    std::size_t i = 0;
    while (i < t.size()) {
        if (t[i] != '{') {
            out += t[i++];
            continue;
        }
        const auto close = t.find('}', i);
        if (close == std::string::npos) throw DomainError("unterminated placeholder in template: " + t);
        const std::string name = t.substr(i + 1, close - i - 1);
        if (name == "subject") {
            out += fields.subject;
        } else if (name == "target") {
            out += fields.target_descriptor;
        } else if (name == "kind") {
            out += to_string(fields.attribute_kind);
        } else if (name == "source" && fields.source_descriptor) {
            out += *fields.source_descriptor;
        } else if (name == "hue") {
            out += hue_family(fields.target_descriptor);
        } else {
            throw DomainError("unknown placeholder {" + name + "} in template: " + t);
        }
        i = close + 1;
    }
    return out;
}

std::string render_instruction(TemplateCategory category, const InstructionFields& fields, std::mt19937_64& rng,
                               const std::vector<InstructionTemplate>& bank) {
    check_category(category, fields);
    std::vector<const InstructionTemplate*> usable;
    for (const auto& t : bank) {
        if (t.category == category && (!t.needs_source || fields.source_descriptor)) usable.push_back(&t);
    }
    if (usable.empty()) throw CategoryError("no usable template for category " + to_string(category));
    std::uniform_int_distribution<std::size_t> pick(0, usable.size() - 1);
    return fill_template(*usable[pick(rng)], fields);
}

}  // namespace attrgen::data
