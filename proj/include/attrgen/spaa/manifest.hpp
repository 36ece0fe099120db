// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "attrgen/spaa/intervention.hpp"

namespace attrgen::spaa {

/// Everything needed to regenerate one source/target pair.
struct RunManifest {
    std::string pair_id;
    std::uint64_t seed = 0;
    std::string source_prompt;
    std::string target_prompt;
    std::vector<std::string> attrs;
    InterventionConfig config;
    int steps = 1;
    std::string backend_id;
    bool operator==(const RunManifest&) const = default;
};

nlohmann::json to_json(const AmplificationSchedule& schedule);
AmplificationSchedule schedule_from_json(const nlohmann::json& j);
nlohmann::json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

struct PairFiles {
    std::filesystem::path source_image;
    std::filesystem::path target_image;
    std::filesystem::path manifest;
};

PairFiles pair_file_names(const std::filesystem::path& dir, const std::string& pair_id);

/// Writes `{pair_id}_src.png`, `{pair_id}_tgt.png` and `{pair_id}.json`.
PairFiles write_pair(const std::filesystem::path& dir, const RunManifest& manifest, const PairResult& result);

}  // namespace attrgen::spaa
