// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "attrgen/core/attribute.hpp"

namespace attrgen::data {

enum class TemplateCategory { transform_a, cross_attribute_b, same_hue_c };

std::string to_string(TemplateCategory category);
TemplateCategory template_category_from_string(std::string_view name);

struct InstructionFields {
    std::string subject;
    std::optional<std::string> source_descriptor;
    std::string target_descriptor;
    AttributeKind attribute_kind = AttributeKind::color;
};

/// Placeholders: {subject}, {target}, {kind}, {source} (only when
/// needs_source), {hue} (target's hue family, same_hue_c only).
struct InstructionTemplate {
    TemplateCategory category;
    std::string text;
    bool needs_source = false;
};

/// Static bank with at least eight source-free templates per category.
const std::vector<InstructionTemplate>& default_template_bank();

/// Hook for externally authored templates (for example an LLM client). The
/// returned templates must follow the same category and placeholder rules.
class TemplateProvider {
public:
    virtual ~TemplateProvider() = default;
    virtual std::vector<InstructionTemplate> templates() const = 0;
};

class StaticTemplateProvider final : public TemplateProvider {
public:
    StaticTemplateProvider() : bank_(default_template_bank()) {}
    explicit StaticTemplateProvider(std::vector<InstructionTemplate> bank) : bank_(std::move(bank)) {}
    std::vector<InstructionTemplate> templates() const override { return bank_; }

private:
    std::vector<InstructionTemplate> bank_;
};

/// CategoryError unless the fields suit the category: same_hue_c needs a
/// color target from the color table and, if a source is given, the same
/// hue family.
void check_category(TemplateCategory category, const InstructionFields& fields);

/// Categories valid for these fields, in enum order.
std::vector<TemplateCategory> applicable_categories(const InstructionFields& fields);

/// Fills a template's placeholders.
std::string fill_template(const InstructionTemplate& tmpl, const InstructionFields& fields);

/// Uniform pick among the bank's usable templates for the category.
std::string render_instruction(TemplateCategory category, const InstructionFields& fields, std::mt19937_64& rng,
                               const std::vector<InstructionTemplate>& bank = default_template_bank());

}  // namespace attrgen::data
