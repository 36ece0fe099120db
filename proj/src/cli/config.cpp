// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/cli/config.hpp"

#include <fstream>
#include <regex>
#include <set>

#include "attrgen/core/errors.hpp"
#include "attrgen/core/hashing.hpp"
#include "attrgen/data/adapters.hpp"
#include "attrgen/data/vocabulary.hpp"
#include "attrgen/metrics/scorers.hpp"
#include "attrgen/spaa/manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace attrgen::cli {

spaa::InterventionConfig GenerationConfig::intervention_for(AttributeKind kind) const {
    auto config = intervention;
    config.schedule = kind == AttributeKind::material ? material_schedule : color_schedule;
    return config;
}

json default_config_json() {
    return json{
        {"global", {{"output_dir", "runs"}, {"run_id", nullptr}, {"worker_count", 1}, {"log_level", "info"}}},
        {"generation",
         {{"backend", "toy"},
          {"arch_seed", 0},
          {"subjects", data::demo_subjects()},
          {"attributes", {{"color", data::default_colors()}, {"material", data::default_materials()}}},
          {"seeds", {0}},
          {"steps", 100},
          {"resolution_gate", 32},
          {"replace_throughout", true},
          {"replace_until_step", 0},
          {"amplify_target", "value"},
          {"stage_mask", nullptr},
          {"schedules",
           {{"color", {{"R", 5.0}, {"delta", 0.1}, {"floor", 1.0}}},
            {"material", {{"R", 10.0}, {"delta", 0.2}, {"floor", 1.0}}}}},
          {"prompt_templates", data::default_prompt_templates()},
          {"template_seed", 0}}},
        {"pipeline",
         {{"thresholds",
           {{"color_sim", 0.98},
            {"material_sim", 0.90},
            {"leakage_count", 50},
            {"pixel_tolerance", 0},
            {"leakage_scale_with_resolution", true}}},
          {"adapters",
           {{"judge", {{"type", "stub-constant"}, {"answer", "yes"}}},
            {"similarity", {{"type", "stub-gray-cosine"}}},
            {"detector", {{"type", "stub-center-box"}, {"fraction", 0.5}}},
            {"segmenter", {{"type", "stub-box"}}}}},
          {"retry", {{"max_attempts", 3}, {"backoff_ms", 100}}},
          {"triple_seed", 0}}},
        {"analysis",
         {{"top_k", 10}, {"layers", json::array()}, {"side", "left"}, {"interpolation", "bilinear"}, {"heatmap_size", 512}}},
        {"evaluation",
         {{"adapters",
           {{"clip", {{"type", "stub-bag-of-words"}}},
            {"dino_gray", {{"type", "stub-gray-cosine"}}},
            {"lpips_bg", {{"type", "stub-masked-mse"}}}}}}},
    };
}

namespace {

// Values at these pointers are replaced wholesale rather than merged.
bool is_opaque(const std::string& pointer) {
    static const std::regex opaque(R"(^/(pipeline|evaluation)/adapters/[^/]+$|^/generation/stage_mask$)");
    return std::regex_match(pointer, opaque);
}

void overlay(json& base, const json& user, const std::string& pointer, std::vector<std::string>& violations) {
    if (!user.is_object()) {
        violations.push_back((pointer.empty() ? std::string("/") : pointer) + ": expected an object");
        return;
    }
    for (const auto& [key, value] : user.items()) {
        const std::string child = pointer + "/" + key;
        if (!base.contains(key)) {
            violations.push_back(child + ": unknown key");
            continue;
        }
        json& slot = base[key];
        if (slot.is_object() && !is_opaque(child)) {
            overlay(slot, value, child, violations);
        } else {
            slot = value;
        }
    }
}

class Checker {
public:
    explicit Checker(const json& root) : root_(root) {}

    std::vector<std::string> violations;

    const json& node(const std::string& p) const { return root_.at(json::json_pointer(p)); }

    void fail(const std::string& p, const std::string& what) { violations.push_back(p + ": " + what); }

    std::int64_t integer(const std::string& p, std::int64_t lo, std::int64_t hi, std::int64_t fallback) {
        const json& j = node(p);
        if (!j.is_number_integer()) {
            fail(p, "expected an integer");
            return fallback;
        }
        const auto v = j.get<std::int64_t>();
        if (v < lo || v > hi) {
            fail(p, "must be in [" + std::to_string(lo) + ", " + std::to_string(hi) + "]");
            return fallback;
        }
        return v;
    }

    std::uint64_t unsigned_int(const std::string& p) {
        const json& j = node(p);
        if (j.is_number_unsigned()) return j.get<std::uint64_t>();
        if (!j.is_number_integer() || j.get<std::int64_t>() < 0) {
            fail(p, "expected a non-negative integer");
            return 0;
        }
        return static_cast<std::uint64_t>(j.get<std::int64_t>());
    }

    double number(const std::string& p, double lo, double hi, double fallback) {
        const json& j = node(p);
        if (!j.is_number()) {
            fail(p, "expected a number");
            return fallback;
        }
        const double v = j.get<double>();
        if (!(v >= lo && v <= hi)) {
            fail(p, "must be in [" + json(lo).dump() + ", " + json(hi).dump() + "]");
            return fallback;
        }
        return v;
    }

    bool boolean(const std::string& p, bool fallback) {
        const json& j = node(p);
        if (!j.is_boolean()) {
            fail(p, "expected true or false");
            return fallback;
        }
        return j.get<bool>();
    }

    std::string string(const std::string& p, const std::set<std::string>& allowed = {}) {
        const json& j = node(p);
        if (!j.is_string() || j.get<std::string>().empty()) {
            fail(p, "expected a nonempty string");
            return {};
        }
        auto v = j.get<std::string>();
        if (!allowed.empty() && !allowed.count(v)) {
            std::string list;
            for (const auto& a : allowed) list += (list.empty() ? "" : ", ") + a;
            fail(p, "must be one of " + list);
        }
        return v;
    }

    std::vector<std::string> strings(const std::string& p, bool allow_empty) {
        const json& j = node(p);
        std::vector<std::string> out;
        if (!j.is_array()) {
            fail(p, "expected a list of strings");
            return out;
        }
        std::set<std::string> seen;
        for (std::size_t i = 0; i < j.size(); ++i) {
            if (!j[i].is_string() || j[i].get<std::string>().empty()) {
                fail(p + "/" + std::to_string(i), "expected a nonempty string");
                continue;
            }
            auto v = j[i].get<std::string>();
            if (!seen.insert(v).second) fail(p + "/" + std::to_string(i), "duplicate entry '" + v + "'");
            out.push_back(std::move(v));
        }
        if (!allow_empty && j.empty()) fail(p, "must not be empty");
        return out;
    }

    std::vector<std::uint64_t> unsigned_list(const std::string& p) {
        const json& j = node(p);
        std::vector<std::uint64_t> out;
        if (!j.is_array() || j.empty()) {
            fail(p, "expected a nonempty list of non-negative integers");
            return out;
        }
        for (std::size_t i = 0; i < j.size(); ++i) out.push_back(unsigned_int(p + "/" + std::to_string(i)));
        return out;
    }

    template <class Make>
    json adapter(const std::string& p, Make make, bool nullable) {
        const json& j = node(p);
        if (j.is_null()) {
            if (!nullable) fail(p, "an adapter is required");
            return j;
        }
        if (!j.is_object() || !j.contains("type")) {
            fail(p, "expected an adapter object with a \"type\"");
            return j;
        }
        try {
            (void)make(j);
        } catch (const std::exception& e) {
            fail(p, e.what());
        }
        return j;
    }

private:
    const json& root_;
};

spaa::AmplificationSchedule read_schedule(Checker& c, const std::string& p, AttributeKind kind) {
    spaa::AmplificationSchedule s;
    s.attribute_kind = kind;
    s.initial_ratio = c.number(p + "/R", 0.0, 1e6, 1.0);
    s.decrement_per_step = c.number(p + "/delta", 0.0, 1e6, 0.0);
    s.floor = c.number(p + "/floor", 0.0, 1e6, 1.0);
    try {
        s.validate();
    } catch (const std::exception& e) {
        c.fail(p, e.what());
    }
    return s;
}

RunConfig parse(const json& merged) {
    Checker c(merged);
    RunConfig cfg;

    auto& g = cfg.global;
    g.output_dir = c.string("/global/output_dir");
    if (const json& id = c.node("/global/run_id"); !id.is_null()) {
        static const std::regex ok("^[A-Za-z0-9._-]+$");
        if (!id.is_string() || !std::regex_match(id.get<std::string>(), ok) || id.get<std::string>() == "." ||
            id.get<std::string>() == "..") {
            c.fail("/global/run_id", "expected null or a name of letters, digits, '.', '_' or '-'");
        } else {
            g.run_id = id.get<std::string>();
        }
    }
    g.worker_count = static_cast<int>(c.integer("/global/worker_count", 1, 256, 1));
    g.log_level = c.string("/global/log_level", {"trace", "debug", "info", "warn", "error", "off"});

    auto& gen = cfg.generation;
    gen.backend = c.string("/generation/backend", {"toy"});
    gen.arch_seed = c.unsigned_int("/generation/arch_seed");
    gen.subjects = c.strings("/generation/subjects", false);
    gen.colors = c.strings("/generation/attributes/color", true);
    gen.materials = c.strings("/generation/attributes/material", true);
    if (gen.colors.empty() && gen.materials.empty()) c.fail("/generation/attributes", "no descriptors to generate");
    gen.seeds = c.unsigned_list("/generation/seeds");
    {
        std::set<std::uint64_t> unique(gen.seeds.begin(), gen.seeds.end());
        if (unique.size() != gen.seeds.size()) c.fail("/generation/seeds", "duplicate seeds");
    }
    gen.steps = static_cast<int>(c.integer("/generation/steps", 1, 10000, 1));
    auto& iv = gen.intervention;
    iv.resolution_gate = static_cast<int>(c.integer("/generation/resolution_gate", 1, 4096, 32));
    if (!std::set<int>{8, 16, 32, 64}.count(iv.resolution_gate)) {
        c.fail("/generation/resolution_gate", "the toy backend has resolutions 8, 16, 32 and 64");
    }
    iv.replace_throughout = c.boolean("/generation/replace_throughout", true);
    iv.replace_until_step = static_cast<int>(c.integer("/generation/replace_until_step", 0, 10000, 0));
    iv.amplify_target =
        c.string("/generation/amplify_target", {"value", "key"}) == "key" ? spaa::AmplifyTarget::key : spaa::AmplifyTarget::value;
    if (const json& sm = c.node("/generation/stage_mask"); !sm.is_null()) {
        if (!sm.is_object() || !sm.contains("active") || !sm.contains("total_stages")) {
            c.fail("/generation/stage_mask", "expected null or {\"active\": [...], \"total_stages\": n}");
        } else {
            spaa::StageMask mask;
            mask.total_stages = static_cast<int>(c.integer("/generation/stage_mask/total_stages", 1, 10000, 10));
            const json& active = sm.at("active");
            if (!active.is_array()) {
                c.fail("/generation/stage_mask/active", "expected a list of stage indices");
            } else {
                for (std::size_t i = 0; i < active.size(); ++i) {
                    mask.active.insert(static_cast<int>(c.integer("/generation/stage_mask/active/" + std::to_string(i),
                                                                  0, mask.total_stages - 1, 0)));
                }
            }
            if (sm.size() != 2) c.fail("/generation/stage_mask", "only \"active\" and \"total_stages\" are allowed");
            iv.stage_mask = mask;
        }
    }
    gen.color_schedule = read_schedule(c, "/generation/schedules/color", AttributeKind::color);
    gen.material_schedule = read_schedule(c, "/generation/schedules/material", AttributeKind::material);
    gen.prompt_templates = c.strings("/generation/prompt_templates", false);
    for (std::size_t i = 0; i < gen.prompt_templates.size(); ++i) {
        if (gen.prompt_templates[i].find("{subject}") == std::string::npos) {
            c.fail("/generation/prompt_templates/" + std::to_string(i), "template lacks {subject}");
        }
    }
    gen.template_seed = c.unsigned_int("/generation/template_seed");

    auto& p = cfg.pipeline;
    p.similarity.color = c.number("/pipeline/thresholds/color_sim", -1.0, 1.0, 0.98);
    p.similarity.material = c.number("/pipeline/thresholds/material_sim", -1.0, 1.0, 0.90);
    p.leakage.threshold = static_cast<std::size_t>(c.integer("/pipeline/thresholds/leakage_count", 0, 1LL << 40, 50));
    p.leakage.pixel_tolerance = static_cast<int>(c.integer("/pipeline/thresholds/pixel_tolerance", 0, 255, 0));
    p.leakage.scale_with_resolution = c.boolean("/pipeline/thresholds/leakage_scale_with_resolution", true);
    p.judge = c.adapter("/pipeline/adapters/judge", data::make_judge, false);
    p.similarity_scorer = c.adapter("/pipeline/adapters/similarity", data::make_similarity_scorer, false);
    p.detector = c.adapter("/pipeline/adapters/detector", data::make_detector, false);
    p.segmenter = c.adapter("/pipeline/adapters/segmenter", data::make_segmenter, false);
    p.retry.max_attempts = static_cast<int>(c.integer("/pipeline/retry/max_attempts", 1, 100, 3));
    p.retry.backoff = std::chrono::milliseconds(c.integer("/pipeline/retry/backoff_ms", 0, 600000, 100));
    p.triple_seed = c.unsigned_int("/pipeline/triple_seed");

    auto& a = cfg.analysis;
    a.top_k = static_cast<int>(c.integer("/analysis/top_k", 1, 4096, 10));
    a.layers = c.strings("/analysis/layers", true);
    a.side = c.string("/analysis/side", {"left", "right"});
    a.interpolation = c.string("/analysis/interpolation", {"nearest", "bilinear"});
    a.heatmap_size = static_cast<int>(c.integer("/analysis/heatmap_size", 1, 8192, 512));

    auto& e = cfg.evaluation;
    using metrics::MetricKind;
    e.clip = c.adapter("/evaluation/adapters/clip", [](const json& j) { return metrics::make_metric_scorer(MetricKind::clip, j); }, true);
    e.dino_gray = c.adapter("/evaluation/adapters/dino_gray", [](const json& j) { return metrics::make_metric_scorer(MetricKind::dino_gray, j); }, true);
    e.lpips_bg = c.adapter("/evaluation/adapters/lpips_bg", [](const json& j) { return metrics::make_metric_scorer(MetricKind::lpips_bg, j); }, true);

    if (!c.violations.empty()) throw ConfigError(c.violations);
    return cfg;
}

json schedule_json(const spaa::AmplificationSchedule& s) {
    return json{{"R", s.initial_ratio}, {"delta", s.decrement_per_step}, {"floor", s.floor}};
}

}  // namespace

json to_json(const RunConfig& cfg) {
    const auto& g = cfg.global;
    const auto& gen = cfg.generation;
    const auto& iv = gen.intervention;
    const auto& p = cfg.pipeline;
    const auto& a = cfg.analysis;
    const auto& e = cfg.evaluation;
    json stage_mask = nullptr;
    if (iv.stage_mask) stage_mask = {{"active", iv.stage_mask->active}, {"total_stages", iv.stage_mask->total_stages}};
    return json{
        {"global",
         {{"output_dir", g.output_dir},
          {"run_id", g.run_id ? json(*g.run_id) : json(nullptr)},
          {"worker_count", g.worker_count},
          {"log_level", g.log_level}}},
        {"generation",
         {{"backend", gen.backend},
          {"arch_seed", gen.arch_seed},
          {"subjects", gen.subjects},
          {"attributes", {{"color", gen.colors}, {"material", gen.materials}}},
          {"seeds", gen.seeds},
          {"steps", gen.steps},
          {"resolution_gate", iv.resolution_gate},
          {"replace_throughout", iv.replace_throughout},
          {"replace_until_step", iv.replace_until_step},
          {"amplify_target", iv.amplify_target == spaa::AmplifyTarget::key ? "key" : "value"},
          {"stage_mask", stage_mask},
          {"schedules", {{"color", schedule_json(gen.color_schedule)}, {"material", schedule_json(gen.material_schedule)}}},
          {"prompt_templates", gen.prompt_templates},
          {"template_seed", gen.template_seed}}},
        {"pipeline",
         {{"thresholds",
           {{"color_sim", p.similarity.color},
            {"material_sim", p.similarity.material},
            {"leakage_count", p.leakage.threshold},
            {"pixel_tolerance", p.leakage.pixel_tolerance},
            {"leakage_scale_with_resolution", p.leakage.scale_with_resolution}}},
          {"adapters",
           {{"judge", p.judge}, {"similarity", p.similarity_scorer}, {"detector", p.detector}, {"segmenter", p.segmenter}}},
          {"retry", {{"max_attempts", p.retry.max_attempts}, {"backoff_ms", p.retry.backoff.count()}}},
          {"triple_seed", p.triple_seed}}},
        {"analysis",
         {{"top_k", a.top_k},
          {"layers", a.layers},
          {"side", a.side},
          {"interpolation", a.interpolation},
          {"heatmap_size", a.heatmap_size}}},
        {"evaluation", {{"adapters", {{"clip", e.clip}, {"dino_gray", e.dino_gray}, {"lpips_bg", e.lpips_bg}}}}},
    };
}

RunConfig resolve_config(const json& user) {
    json merged = default_config_json();
    std::vector<std::string> violations;
    if (!user.is_null()) overlay(merged, user, "", violations);
    if (!violations.empty()) {
        // Report key errors together with value errors in the known part.
        try {
            (void)parse(merged);
        } catch (const ConfigError& e) {
            violations.insert(violations.end(), e.violations().begin(), e.violations().end());
        }
        throw ConfigError(violations);
    }
    return parse(merged);
}

RunConfig load_config(const std::optional<fs::path>& path, const Overrides& overrides) {
    json user = json::object();
    if (path) {
        std::ifstream in(*path);
        if (!in) throw IoError("cannot read config " + path->string());
        try {
            user = json::parse(in);
        } catch (const json::parse_error& e) {
            throw ConfigError({path->string() + ": " + e.what()});
        }
    }
    if (!user.is_object()) throw ConfigError({"/: expected an object"});
    if (overrides.seed) {
        user["generation"]["seeds"] = json::array({*overrides.seed});
        user["generation"]["template_seed"] = *overrides.seed;
        user["pipeline"]["triple_seed"] = *overrides.seed;
    }
    if (overrides.output_dir) user["global"]["output_dir"] = *overrides.output_dir;
    if (overrides.workers) user["global"]["worker_count"] = *overrides.workers;
    return resolve_config(user);
}

namespace {

json hashed_part(const RunConfig& config) {
    json j = to_json(config);
    j["global"].erase("output_dir");
    j["global"].erase("run_id");
    j["global"].erase("worker_count");
    j["global"].erase("log_level");
    return j;
}

}  // namespace

std::string config_hash(const RunConfig& config) { return sha256_hex(hashed_part(config).dump()).substr(0, 16); }

std::string run_id(const RunConfig& config) { return config.global.run_id ? *config.global.run_id : config_hash(config); }

fs::path run_dir(const RunConfig& config) { return fs::path(config.global.output_dir) / run_id(config); }

json snapshot_json(const RunConfig& config) {
    json j = to_json(config);
    j["global"].erase("output_dir");
    j["global"]["run_id"] = run_id(config);
    return j;
}

void write_or_check_snapshot(const RunConfig& config, const fs::path& dir) {
    fs::create_directories(dir);
    const fs::path path = dir / "config.snapshot.json";
    if (fs::exists(path)) {
        std::ifstream in(path);
        json existing;
        try {
            existing = json::parse(in);
            const RunConfig previous = resolve_config(existing);
            if (hashed_part(previous) == hashed_part(config)) return;
        } catch (const std::exception&) {
        }
        throw ConflictError("run directory " + dir.string() + " already holds a different configuration");
    }
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw IoError("cannot write " + path.string());
    out << snapshot_json(config).dump(2) << '\n';
}

}  // namespace attrgen::cli
