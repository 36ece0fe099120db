// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/data/pipeline.hpp"

#include <fstream>
#include <random>

#include "attrgen/core/errors.hpp"
#include "attrgen/core/hashing.hpp"
#include "attrgen/data/vocabulary.hpp"
#include "attrgen/spaa/manifest.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace attrgen::data {

std::string make_pair_id(const std::string& subject, const std::string& descriptor, std::uint64_t seed) {
    std::string id = subject + "-" + descriptor + "-s" + std::to_string(seed);
    for (auto& c : id) {
        if (c == ' ' || c == '/') c = '_';
    }
    return id;
}

std::vector<PairSpec> plan_pairs(const PlanOptions& options) {
    if (options.prompt_templates.empty()) throw DomainError("plan_pairs needs at least one prompt template");
    std::vector<PairSpec> out;
    auto add = [&](const std::string& subject, AttributeKind kind, const std::string& descriptor, std::uint64_t seed) {
        PairSpec spec;
        spec.pair_id = make_pair_id(subject, descriptor, seed);
        spec.subject = subject;
        spec.attribute_kind = kind;
        spec.target_descriptor = descriptor;
        spec.seed = seed;
        std::mt19937_64 rng(options.template_seed ^ fnv1a64(spec.pair_id));
        std::uniform_int_distribution<std::size_t> pick(0, options.prompt_templates.size() - 1);
        spec.template_index = pick(rng);
        const auto& tmpl = options.prompt_templates[spec.template_index];
        spec.source_prompt = compose_prompt(tmpl, subject);
        spec.target_prompt = compose_prompt(tmpl, subject, descriptor);
        out.push_back(std::move(spec));
    };
    for (const auto& subject : options.subjects) {
        for (const auto& d : options.colors)
            for (auto seed : options.seeds) add(subject, AttributeKind::color, d, seed);
        for (const auto& d : options.materials)
            for (auto seed : options.seeds) add(subject, AttributeKind::material, d, seed);
    }
    return out;
}

bool AttributePair::accepted() const {
    return verdicts.judge.status == VerdictStatus::pass && verdicts.similarity.status == VerdictStatus::pass &&
           verdicts.leakage.status == VerdictStatus::pass;
}

namespace {

json optional_json(const std::optional<std::string>& v) { return v ? json(*v) : json(nullptr); }

std::optional<std::string> optional_string(const json& j, const char* key) {
    if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
    return j.at(key).get<std::string>();
}

}  // namespace

json to_json(const AttributePair& pair) {
    const auto& s = pair.spec;
    const auto& v = pair.verdicts;
    json j;
    j["pair_id"] = s.pair_id;
    j["subject"] = s.subject;
    j["attribute_kind"] = to_string(s.attribute_kind);
    j["source_descriptor"] = optional_json(s.source_descriptor);
    j["target_descriptor"] = s.target_descriptor;
    j["seed"] = s.seed;
    j["template_index"] = s.template_index;
    j["prompts"] = {{"source", s.source_prompt}, {"target", s.target_prompt}};
    j["images"] = {{"source", pair.source_image}, {"target", pair.target_image}, {"manifest", pair.manifest}};
    json judge = {{"status", to_string(v.judge.status)},
                  {"query", v.judge.query},
                  {"raw_answer", v.judge.raw_answer},
                  {"attempts", v.judge.attempts},
                  {"error", v.judge.error}};
    json sim = {{"status", to_string(v.similarity.status)},
                {"score", v.similarity.score ? json(*v.similarity.score) : json(nullptr)},
                {"threshold", v.similarity.threshold},
                {"scorer_id", v.similarity.scorer_id},
                {"error", v.similarity.error}};
    json leak = {{"status", to_string(v.leakage.status)},
                 {"count", v.leakage.count ? json(*v.leakage.count) : json(nullptr)},
                 {"threshold", v.leakage.threshold},
                 {"error", v.leakage.error}};
    j["verdicts"] = {{"judge", judge}, {"similarity", sim}, {"leakage", leak}, {"order", v.order}};
    j["accepted"] = pair.accepted();
    return j;
}

AttributePair pair_from_json(const json& j) {
    AttributePair p;
    auto& s = p.spec;
    s.pair_id = j.at("pair_id").get<std::string>();
    s.subject = j.at("subject").get<std::string>();
    s.attribute_kind = attribute_kind_from_string(j.at("attribute_kind").get<std::string>());
    s.source_descriptor = optional_string(j, "source_descriptor");
    s.target_descriptor = j.at("target_descriptor").get<std::string>();
    s.seed = j.at("seed").get<std::uint64_t>();
    s.template_index = j.value("template_index", std::size_t{0});
    s.source_prompt = j.at("prompts").at("source").get<std::string>();
    s.target_prompt = j.at("prompts").at("target").get<std::string>();
    p.source_image = j.at("images").at("source").get<std::string>();
    p.target_image = j.at("images").at("target").get<std::string>();
    p.manifest = j.at("images").value("manifest", std::string());
    if (j.contains("verdicts")) {
        const auto& v = j.at("verdicts");
        auto& out = p.verdicts;
        const auto& judge = v.at("judge");
        out.judge.status = verdict_status_from_string(judge.at("status").get<std::string>());
        out.judge.query = judge.value("query", std::string());
        out.judge.raw_answer = judge.value("raw_answer", std::string());
        out.judge.attempts = judge.value("attempts", 0);
        out.judge.error = judge.value("error", std::string());
        const auto& sim = v.at("similarity");
        out.similarity.status = verdict_status_from_string(sim.at("status").get<std::string>());
        if (!sim.at("score").is_null()) out.similarity.score = sim.at("score").get<double>();
        out.similarity.threshold = sim.value("threshold", 0.0);
        out.similarity.scorer_id = sim.value("scorer_id", std::string());
        out.similarity.error = sim.value("error", std::string());
        const auto& leak = v.at("leakage");
        out.leakage.status = verdict_status_from_string(leak.at("status").get<std::string>());
        if (!leak.at("count").is_null()) out.leakage.count = leak.at("count").get<std::size_t>();
        out.leakage.threshold = leak.value("threshold", std::size_t{0});
        out.leakage.error = leak.value("error", std::string());
        out.order = v.value("order", std::vector<std::string>{});
    }
    return p;
}

void write_pairs_jsonl(const fs::path& path, const std::vector<AttributePair>& pairs) {
    if (path.has_parent_path()) fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::trunc | std::ios::binary);
    if (!out) throw IoError("cannot write " + path.string());
    for (const auto& p : pairs) out << to_json(p).dump() << '\n';
    if (!out) throw IoError("write failed: " + path.string());
}

std::vector<AttributePair> read_pairs_jsonl(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot read " + path.string());
    std::vector<AttributePair> out;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            out.push_back(pair_from_json(json::parse(line)));
        } catch (const json::exception& e) {
            throw IoError(path.string() + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
    return out;
}

AttributePair generate_pair(const diffusion::DiffusionBackend& backend, const PairSpec& spec,
                            const spaa::InterventionConfig& config, int steps, const fs::path& run_dir) {
    spaa::RunManifest manifest;
    manifest.pair_id = spec.pair_id;
    manifest.seed = spec.seed;
    manifest.source_prompt = spec.source_prompt;
    manifest.target_prompt = spec.target_prompt;
    manifest.attrs = {spec.target_descriptor};
    manifest.config = config;
    manifest.steps = steps;
    manifest.backend_id = backend.id();
    const auto result = spaa::spaa_denoise_pair(backend, spec.source_prompt, spec.target_prompt, manifest.attrs,
                                                spec.seed, config, steps);
    const auto files = spaa::write_pair(run_dir / "pairs", manifest, result);
    AttributePair pair;
    pair.spec = spec;
    pair.source_image = fs::relative(files.source_image, run_dir).generic_string();
    pair.target_image = fs::relative(files.target_image, run_dir).generic_string();
    pair.manifest = fs::relative(files.manifest, run_dir).generic_string();
    return pair;
}

PairVerdicts filter_pair(const PairSpec& spec, const Image& source, const Image& target, const fs::path& target_path,
                         FilterStages& stages) {
    if (!stages.judge || !stages.scorer || !stages.detector || !stages.segmenter) {
        throw DomainError("filter_pair needs a judge, scorer, detector and segmenter");
    }
    PairVerdicts v;
    const ImageRef target_ref{&target, target_path};

    v.order.push_back("judge");
    const auto query = format_verification_query(spec.attribute_kind, spec.subject, spec.target_descriptor);
    v.judge = judge_target(*stages.judge, target_ref, query, stages.retry);
    if (v.judge.status != VerdictStatus::pass) return v;

    v.order.push_back("similarity");
    v.similarity = similarity_gate(*stages.scorer, source, target, spec.attribute_kind, stages.similarity);
    if (v.similarity.status != VerdictStatus::pass) return v;

    v.order.push_back("leakage");
    // The object is located on the target, where the attribute was applied.
    const auto mask = background_mask(*stages.detector, *stages.segmenter, target_ref, spec.subject);
    if (mask.status == VerdictStatus::detection_miss) {
        v.leakage.status = VerdictStatus::detection_miss;
        v.leakage.threshold = stages.leakage.effective_threshold(target.height, target.width);
        v.leakage.error = "no detection for '" + spec.subject + "'";
        return v;
    }
    v.leakage = leakage_gate(source, target, mask.background, stages.leakage);
    return v;
}

}  // namespace attrgen::data
