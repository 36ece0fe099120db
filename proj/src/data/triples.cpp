// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/data/triples.hpp"

#include <fstream>
#include <random>

#include "attrgen/core/errors.hpp"
#include "attrgen/core/hashing.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace attrgen::data {

json to_json(const TripleRecord& r) {
    return json{{"pair_id", r.pair_id},
                {"input_image", r.input_image},
                {"instruction", r.instruction},
                {"output_image", r.output_image},
                {"category", to_string(r.category)},
                {"subject", r.subject},
                {"attribute_kind", to_string(r.attribute_kind)},
                {"source_descriptor", r.source_descriptor ? json(*r.source_descriptor) : json(nullptr)},
                {"target_descriptor", r.target_descriptor},
                {"seed", r.seed}};
}

TripleRecord triple_from_json(const json& j) {
    TripleRecord r;
    r.pair_id = j.at("pair_id").get<std::string>();
    r.input_image = j.at("input_image").get<std::string>();
    r.instruction = j.at("instruction").get<std::string>();
    r.output_image = j.at("output_image").get<std::string>();
    r.category = template_category_from_string(j.at("category").get<std::string>());
    r.subject = j.at("subject").get<std::string>();
    r.attribute_kind = attribute_kind_from_string(j.at("attribute_kind").get<std::string>());
    if (!j.at("source_descriptor").is_null()) r.source_descriptor = j.at("source_descriptor").get<std::string>();
    r.target_descriptor = j.at("target_descriptor").get<std::string>();
    r.seed = j.at("seed").get<std::uint64_t>();
    return r;
}

std::vector<TripleRecord> build_triples(const std::vector<AttributePair>& accepted, std::uint64_t seed,
                                        const std::vector<InstructionTemplate>& bank) {
    std::vector<TripleRecord> out;
    out.reserve(accepted.size());
    for (const auto& pair : accepted) {
        if (!pair.accepted()) throw DomainError("pair " + pair.spec.pair_id + " has not passed every gate");
        const auto& s = pair.spec;
        const InstructionFields fields{s.subject, s.source_descriptor, s.target_descriptor, s.attribute_kind};
        const auto categories = applicable_categories(fields);
        if (categories.empty()) throw CategoryError("no instruction category fits pair " + s.pair_id);
        std::mt19937_64 rng(seed ^ fnv1a64(s.pair_id));
        std::uniform_int_distribution<std::size_t> pick(0, categories.size() - 1);
        TripleRecord r;
        r.pair_id = s.pair_id;
        r.input_image = pair.source_image;
        r.output_image = pair.target_image;
        r.category = categories[pick(rng)];
        r.instruction = render_instruction(r.category, fields, rng, bank);
        r.subject = s.subject;
        r.attribute_kind = s.attribute_kind;
        r.source_descriptor = s.source_descriptor;
        r.target_descriptor = s.target_descriptor;
        r.seed = s.seed;
        out.push_back(std::move(r));
    }
    return out;
}

void write_triples(const fs::path& path, const std::vector<TripleRecord>& records) {
    const fs::path base = path.has_parent_path() ? path.parent_path() : fs::path(".");
    for (const auto& r : records) {
        if (r.instruction.empty()) throw DomainError("triple " + r.pair_id + " has an empty instruction");
        if (r.category == TemplateCategory::same_hue_c && r.attribute_kind != AttributeKind::color) {
            throw CategoryError("triple " + r.pair_id + ": same_hue_c on a non-color attribute");
        }
        for (const auto* ref : {&r.input_image, &r.output_image}) {
            if (ref->empty() || !fs::is_regular_file(base / *ref)) {
                throw DanglingRefError("triple " + r.pair_id + " references missing image '" + *ref + "'");
            }
        }
    }
    if (!base.empty()) fs::create_directories(base);
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& r : records) out << to_json(r).dump() << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<TripleRecord> read_triples(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<TripleRecord> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(triple_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

}  // namespace attrgen::data
