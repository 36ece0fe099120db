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
#include "attrgen/data/verification.hpp"
#include "attrgen/diffusion/backend.hpp"
#include "attrgen/spaa/intervention.hpp"

namespace attrgen::data {

/// One planned source/target generation.
struct PairSpec {
    std::string pair_id;
    std::string subject;
    AttributeKind attribute_kind = AttributeKind::color;
    std::optional<std::string> source_descriptor;
    std::string target_descriptor;
    std::uint64_t seed = 0;
    std::size_t template_index = 0;
    std::string source_prompt;
    std::string target_prompt;
    bool operator==(const PairSpec&) const = default;
};

struct PlanOptions {
    std::vector<std::string> subjects;
    std::vector<std::string> colors;
    std::vector<std::string> materials;
    std::vector<std::uint64_t> seeds;
    std::vector<std::string> prompt_templates;
    /// Drives the per-pair prompt template pick.
    std::uint64_t template_seed = 0;
};

/// Cartesian product subject x (colors, then materials) x seed, in that
/// nesting order. Each pair's template is drawn from an rng keyed by
/// template_seed and the pair id, so a pair's prompts do not depend on
/// which other pairs are planned.
std::vector<PairSpec> plan_pairs(const PlanOptions& options);

/// "lamp-red-s0"; spaces in names become underscores.
std::string make_pair_id(const std::string& subject, const std::string& descriptor, std::uint64_t seed);

struct PairVerdicts {
    JudgeVerdict judge;
    SimilarityVerdict similarity;
    LeakageVerdict leakage;
    /// Gates in the order they ran; a gate that was short-circuited is absent.
    std::vector<std::string> order;
};

struct AttributePair {
    PairSpec spec;
    /// Relative to the directory of the JSONL file that lists the pair.
    std::string source_image;
    std::string target_image;
    std::string manifest;
    PairVerdicts verdicts;

    bool accepted() const;
};

nlohmann::json to_json(const AttributePair& pair);
AttributePair pair_from_json(const nlohmann::json& j);

void write_pairs_jsonl(const std::filesystem::path& path, const std::vector<AttributePair>& pairs);
std::vector<AttributePair> read_pairs_jsonl(const std::filesystem::path& path);

/// Runs the dual-branch generation for one pair and writes its two PNGs and
/// manifest under run_dir/pairs/. Image refs are relative to run_dir.
AttributePair generate_pair(const diffusion::DiffusionBackend& backend, const PairSpec& spec,
                            const spaa::InterventionConfig& config, int steps, const std::filesystem::path& run_dir);

struct FilterStages {
    VisualJudge* judge = nullptr;
    SimilarityScorer* scorer = nullptr;
    ObjectDetector* detector = nullptr;
    MaskGenerator* segmenter = nullptr;
    RetryPolicy retry;
    SimilarityThresholds similarity;
    LeakageOptions leakage;
};

/// Judge, then similarity, then leakage; stops at the first gate that does
/// not pass. Images are the decoded source/target PNGs; target_path is
/// forwarded to the judge.
PairVerdicts filter_pair(const PairSpec& spec, const Image& source, const Image& target,
                         const std::filesystem::path& target_path, FilterStages& stages);

}  // namespace attrgen::data
