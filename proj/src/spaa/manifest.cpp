// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/spaa/manifest.hpp"

#include <fstream>

#include "attrgen/core/errors.hpp"
#include "attrgen/core/png_io.hpp"

namespace attrgen::spaa {

using nlohmann::json;
namespace fs = std::filesystem;

json to_json(const AmplificationSchedule& s) {
    return json{{"kind", to_string(s.attribute_kind)},
                {"R", s.initial_ratio},
                {"delta", s.decrement_per_step},
                {"floor", s.floor}};
}

AmplificationSchedule schedule_from_json(const json& j) {
    AmplificationSchedule s;
    s.attribute_kind = attribute_kind_from_string(j.at("kind").get<std::string>());
    s.initial_ratio = j.at("R").get<double>();
    s.decrement_per_step = j.at("delta").get<double>();
    s.floor = j.value("floor", 1.0);
    return s;
}

json to_json(const RunManifest& m) {
    json j{{"pair_id", m.pair_id},
           {"seed", m.seed},
           {"source_prompt", m.source_prompt},
           {"target_prompt", m.target_prompt},
           {"attrs", m.attrs},
           {"schedule", to_json(m.config.schedule)},
           {"resolution_gate", m.config.resolution_gate},
           {"replace_throughout", m.config.replace_throughout},
           {"amplify_target", m.config.amplify_target == AmplifyTarget::value ? "value" : "key"},
           {"steps", m.steps},
           {"backend_id", m.backend_id}};
    if (!m.config.replace_throughout) j["replace_until_step"] = m.config.replace_until_step;
    if (m.config.stage_mask) {
        j["stage_mask"] = {{"active", m.config.stage_mask->active}, {"total_stages", m.config.stage_mask->total_stages}};
    }
    return j;
}

RunManifest manifest_from_json(const json& j) {
    RunManifest m;
    m.pair_id = j.at("pair_id").get<std::string>();
    m.seed = j.at("seed").get<std::uint64_t>();
    m.source_prompt = j.at("source_prompt").get<std::string>();
    m.target_prompt = j.at("target_prompt").get<std::string>();
    m.attrs = j.at("attrs").get<std::vector<std::string>>();
    m.config.schedule = schedule_from_json(j.at("schedule"));
    m.config.resolution_gate = j.at("resolution_gate").get<int>();
    m.config.replace_throughout = j.value("replace_throughout", true);
    m.config.replace_until_step = j.value("replace_until_step", 0);
    m.config.amplify_target = j.value("amplify_target", std::string("value")) == "key" ? AmplifyTarget::key : AmplifyTarget::value;
    if (j.contains("stage_mask")) {
        m.config.stage_mask = StageMask{j["stage_mask"].at("active").get<std::set<int>>(),
                                        j["stage_mask"].at("total_stages").get<int>()};
    }
    m.steps = j.at("steps").get<int>();
    m.backend_id = j.at("backend_id").get<std::string>();
    return m;
}

PairFiles pair_file_names(const fs::path& dir, const std::string& pair_id) {
    return {dir / (pair_id + "_src.png"), dir / (pair_id + "_tgt.png"), dir / (pair_id + ".json")};
}

PairFiles write_pair(const fs::path& dir, const RunManifest& manifest, const PairResult& result) {
    fs::create_directories(dir);
    PairFiles files = pair_file_names(dir, manifest.pair_id);
    io::write_png(files.source_image, result.source_image);
    io::write_png(files.target_image, result.target_image);
    std::ofstream out(files.manifest, std::ios::trunc);
    if (!out) throw IoError("cannot write " + files.manifest.string());
    out << to_json(manifest).dump(2) << '\n';
    return files;
}

}  // namespace attrgen::spaa
