// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrgen/cli/config.hpp"

namespace attrgen::cli {

/// Every command returns a JSON summary (printed on stdout by the tool).
nlohmann::json generate_pairs(const RunConfig& config);

/// Reads <run>/pairs.jsonl unless `pairs` is given. Writes filtered.jsonl
/// (every pair with verdicts), accepted.jsonl and review.jsonl (pending or
/// detection misses) next to the input list.
nlohmann::json filter_pairs(const RunConfig& config, const std::optional<std::filesystem::path>& pairs = {});

/// Reads <run>/accepted.jsonl unless `accepted` is given; writes
/// triples.jsonl beside it.
nlohmann::json make_instructions(const RunConfig& config,
                                 const std::optional<std::filesystem::path>& accepted = {});

struct TraceOptions {
    std::string prompt;
    std::uint64_t seed = 0;
    int steps = 10;
    std::set<int> resolutions;
    std::set<int> timesteps;
    bool include_cross = false;
    bool include_qkv = false;
    std::filesystem::path out;
};

/// Samples one prompt with attention capture and saves the store.
nlohmann::json trace_attention(const RunConfig& config, const TraceOptions& options);

struct AnalyzeOptions {
    std::filesystem::path store;
    std::vector<std::string> layers;  ///< overrides the config list when nonempty
    std::optional<int> top_k;
    std::filesystem::path out;
};

/// Per layer: mean self-attention map over timesteps and heads, top-k
/// singular-vector heatmaps, a contact sheet and a JSON report.
nlohmann::json analyze_attention(const RunConfig& config, const AnalyzeOptions& options);

struct EvaluateOptions {
    std::filesystem::path pairs;
    std::optional<std::filesystem::path> masks;
    std::filesystem::path out;
};

nlohmann::json evaluate(const RunConfig& config, const EvaluateOptions& options);

}  // namespace attrgen::cli
