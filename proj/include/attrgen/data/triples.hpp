// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrgen/core/attribute.hpp"
#include "attrgen/data/instructions.hpp"
#include "attrgen/data/pipeline.hpp"

namespace attrgen::data {

struct TripleRecord {
    std::string pair_id;
    std::string input_image;
    std::string instruction;
    std::string output_image;
    TemplateCategory category = TemplateCategory::transform_a;
    std::string subject;
    AttributeKind attribute_kind = AttributeKind::color;
    std::optional<std::string> source_descriptor;
    std::string target_descriptor;
    std::uint64_t seed = 0;
    bool operator==(const TripleRecord&) const = default;
};

nlohmann::json to_json(const TripleRecord& record);
TripleRecord triple_from_json(const nlohmann::json& j);

/// One record per pair. The category is drawn uniformly from the pair's
/// applicable categories and then a template from that category, using an
/// rng keyed by seed and pair id. DomainError for a pair that is not accepted.
std::vector<TripleRecord> build_triples(const std::vector<AttributePair>& accepted, std::uint64_t seed,
                                        const std::vector<InstructionTemplate>& bank = default_template_bank());

/// Image refs are resolved against the output file's directory; a missing
/// image raises DanglingRefError before anything is written.
void write_triples(const std::filesystem::path& path, const std::vector<TripleRecord>& records);
std::vector<TripleRecord> read_triples(const std::filesystem::path& path);

}  // namespace attrgen::data
