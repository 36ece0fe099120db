// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrgen/data/pipeline.hpp"
#include "attrgen/spaa/intervention.hpp"

namespace attrgen::cli {

struct GlobalConfig {
    std::string output_dir = "runs";
    /// Derived from the config hash when not set.
    std::optional<std::string> run_id;
    int worker_count = 1;
    std::string log_level = "info";
};

struct GenerationConfig {
    std::string backend = "toy";
    std::uint64_t arch_seed = 0;
    std::vector<std::string> subjects;
    std::vector<std::string> colors;
    std::vector<std::string> materials;
    std::vector<std::uint64_t> seeds{0};
    int steps = 100;
    std::vector<std::string> prompt_templates;
    std::uint64_t template_seed = 0;
    /// Schedules are taken from here per attribute kind.
    spaa::InterventionConfig intervention;
    spaa::AmplificationSchedule color_schedule = spaa::AmplificationSchedule::color();
    spaa::AmplificationSchedule material_schedule = spaa::AmplificationSchedule::material();

    spaa::InterventionConfig intervention_for(AttributeKind kind) const;
};

struct PipelineConfig {
    data::SimilarityThresholds similarity;
    data::LeakageOptions leakage;
    data::RetryPolicy retry;
    nlohmann::json judge;
    nlohmann::json similarity_scorer;
    nlohmann::json detector;
    nlohmann::json segmenter;
    std::uint64_t triple_seed = 0;
};

struct AnalysisConfig {
    int top_k = 10;
    std::vector<std::string> layers;
    std::string side = "left";
    std::string interpolation = "bilinear";
    int heatmap_size = 512;
};

struct EvaluationConfig {
    nlohmann::json clip;
    nlohmann::json dino_gray;
    nlohmann::json lpips_bg;
};

struct RunConfig {
    GlobalConfig global;
    GenerationConfig generation;
    PipelineConfig pipeline;
    AnalysisConfig analysis;
    EvaluationConfig evaluation;
};

/// Fully populated defaults as JSON; the schema of accepted keys.
nlohmann::json default_config_json();

/// Canonical JSON of every effective parameter.
nlohmann::json to_json(const RunConfig& config);

/// Overlays `user` on the defaults and validates the result. ConfigError
/// lists every violation (unknown keys, wrong types, out-of-range values).
RunConfig resolve_config(const nlohmann::json& user);

struct Overrides {
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    std::optional<int> workers;
};

/// Reads the JSON file (if any), applies command-line overrides, resolves.
RunConfig load_config(const std::optional<std::filesystem::path>& path, const Overrides& overrides);

/// Content hash of the output-affecting parameters (excludes output_dir,
/// run_id, worker_count and log_level); 16 hex chars.
std::string config_hash(const RunConfig& config);
std::string run_id(const RunConfig& config);
std::filesystem::path run_dir(const RunConfig& config);

/// Snapshot JSON: to_json minus output_dir, with run_id resolved.
nlohmann::json snapshot_json(const RunConfig& config);

/// Writes config.snapshot.json into the run directory, or checks that an
/// existing one describes the same run. ConflictError otherwise.
void write_or_check_snapshot(const RunConfig& config, const std::filesystem::path& dir);

}  // namespace attrgen::cli
