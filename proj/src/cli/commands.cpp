// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/cli/commands.hpp"

#include <chrono>
#include <fstream>
#include <mutex>

#include <spdlog/spdlog.h>

#include "attrgen/analysis/components.hpp"
#include "attrgen/attention/store.hpp"
#include "attrgen/attention/tensor_io.hpp"
#include "attrgen/core/errors.hpp"
#include "attrgen/core/parallel.hpp"
#include "attrgen/core/png_io.hpp"
#include "attrgen/data/adapters.hpp"
#include "attrgen/data/pipeline.hpp"
#include "attrgen/data/triples.hpp"
#include "attrgen/data/vocabulary.hpp"
#include "attrgen/diffusion/toy_denoiser.hpp"
#include "attrgen/metrics/color.hpp"
#include "attrgen/metrics/scorers.hpp"
#include "attrgen/metrics/ssim.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace attrgen::cli {

namespace {

/// Structured per-pair provenance log, one JSON object per line.
class EventLog {
public:
    EventLog(const fs::path& run, const std::string& command) {
        fs::create_directories(run / "logs");
        out_.open(run / "logs" / (command + ".jsonl"), std::ios::trunc);
        if (!out_) throw IoError("cannot open log for " + command);
        command_ = command;
    }

    void write(json event) {
        event["command"] = command_;
        std::lock_guard lock(mutex_);
        out_ << event.dump() << '\n';
        out_.flush();
    }

private:
    std::ofstream out_;
    std::string command_;
    std::mutex mutex_;
};

double elapsed_ms(std::chrono::steady_clock::time_point since) {
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - since).count();
}

diffusion::ToyDenoiser make_backend(const RunConfig& config) {
    diffusion::ToyConfig toy;
    toy.arch_seed = config.generation.arch_seed;
    return diffusion::ToyDenoiser(toy);
}

fs::path base_of(const fs::path& list) { return list.has_parent_path() ? list.parent_path() : fs::path("."); }

}  // namespace

json generate_pairs(const RunConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir = run_dir(config);
    write_or_check_snapshot(config, dir);
    EventLog log(dir, "generate-pairs");

    const auto& gen = config.generation;
    data::PlanOptions plan_options;
    plan_options.subjects = gen.subjects;
    plan_options.colors = gen.colors;
    plan_options.materials = gen.materials;
    plan_options.seeds = gen.seeds;
    plan_options.prompt_templates = gen.prompt_templates;
    plan_options.template_seed = gen.template_seed;
    const auto plan = data::plan_pairs(plan_options);

    const auto backend = make_backend(config);
    std::vector<data::AttributePair> pairs(plan.size());
    parallel_for(plan.size(), config.global.worker_count, [&](std::size_t i) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto intervention = gen.intervention_for(plan[i].attribute_kind);
        pairs[i] = data::generate_pair(backend, plan[i], intervention, gen.steps, dir);
        log.write({{"event", "pair_generated"},
                   {"pair_id", plan[i].pair_id},
                   {"seed", plan[i].seed},
                   {"source_prompt", plan[i].source_prompt},
                   {"target_prompt", plan[i].target_prompt},
                   {"backend", backend.id()},
                   {"elapsed_ms", elapsed_ms(t0)}});
        spdlog::info("generated {} ({}/{})", plan[i].pair_id, i + 1, plan.size());
    });
    data::write_pairs_jsonl(dir / "pairs.jsonl", pairs);
    return {{"command", "generate-pairs"},
            {"run_id", run_id(config)},
            {"run_dir", dir.string()},
            {"pairs", pairs.size()},
            {"output", (dir / "pairs.jsonl").string()},
            {"elapsed_ms", elapsed_ms(start)}};
}

json filter_pairs(const RunConfig& config, const std::optional<fs::path>& pairs_path) {
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir = run_dir(config);
    write_or_check_snapshot(config, dir);
    EventLog log(dir, "filter");
    const fs::path input = pairs_path.value_or(dir / "pairs.jsonl");
    const fs::path base = base_of(input);
    auto pairs = data::read_pairs_jsonl(input);

    const auto& p = config.pipeline;
    auto judge = data::make_judge(p.judge);
    auto scorer = data::make_similarity_scorer(p.similarity_scorer);
    auto detector = data::make_detector(p.detector);
    auto segmenter = data::make_segmenter(p.segmenter);
    data::FilterStages stages{judge.get(), scorer.get(), detector.get(), segmenter.get(), p.retry, p.similarity,
                              p.leakage};

    parallel_for(pairs.size(), config.global.worker_count, [&](std::size_t i) {
        auto& pair = pairs[i];
        const fs::path src_path = base / pair.source_image;
        const fs::path tgt_path = base / pair.target_image;
        const Image src = io::read_png(src_path);
        const Image tgt = io::read_png(tgt_path);
        pair.verdicts = data::filter_pair(pair.spec, src, tgt, tgt_path, stages);
        const auto& v = pair.verdicts;
        log.write({{"event", "pair_filtered"},
                   {"pair_id", pair.spec.pair_id},
                   {"order", v.order},
                   {"judge", {{"status", data::to_string(v.judge.status)},
                              {"raw_answer", v.judge.raw_answer},
                              {"attempts", v.judge.attempts},
                              {"judge_id", judge->id()}}},
                   {"similarity", {{"status", data::to_string(v.similarity.status)},
                                   {"score", v.similarity.score ? json(*v.similarity.score) : json(nullptr)}}},
                   {"leakage", {{"status", data::to_string(v.leakage.status)},
                                {"count", v.leakage.count ? json(*v.leakage.count) : json(nullptr)}}},
                   {"accepted", pair.accepted()}});
    });

    std::vector<data::AttributePair> accepted, review;
    for (const auto& pair : pairs) {
        if (pair.accepted()) {
            accepted.push_back(pair);
        } else if (pair.verdicts.judge.status == data::VerdictStatus::pending ||
                   pair.verdicts.similarity.status == data::VerdictStatus::pending ||
                   pair.verdicts.leakage.status == data::VerdictStatus::detection_miss) {
            review.push_back(pair);
        }
    }
    data::write_pairs_jsonl(base / "filtered.jsonl", pairs);
    data::write_pairs_jsonl(base / "accepted.jsonl", accepted);
    data::write_pairs_jsonl(base / "review.jsonl", review);
    return {{"command", "filter"},
            {"run_id", run_id(config)},
            {"run_dir", dir.string()},
            {"pairs", pairs.size()},
            {"accepted", accepted.size()},
            {"review", review.size()},
            {"output", (base / "accepted.jsonl").string()},
            {"elapsed_ms", elapsed_ms(start)}};
}

json make_instructions(const RunConfig& config, const std::optional<fs::path>& accepted_path) {
    const auto start = std::chrono::steady_clock::now();
    const fs::path dir = run_dir(config);
    write_or_check_snapshot(config, dir);
    EventLog log(dir, "make-instructions");
    const fs::path input = accepted_path.value_or(dir / "accepted.jsonl");
    const auto accepted = data::read_pairs_jsonl(input);
    const auto triples = data::build_triples(accepted, config.pipeline.triple_seed);
    const fs::path output = base_of(input) / "triples.jsonl";
    data::write_triples(output, triples);
    for (const auto& t : triples) {
        log.write({{"event", "triple_built"},
                   {"pair_id", t.pair_id},
                   {"category", data::to_string(t.category)},
                   {"instruction", t.instruction}});
    }
    return {{"command", "make-instructions"},
            {"run_id", run_id(config)},
            {"run_dir", dir.string()},
            {"triples", triples.size()},
            {"output", output.string()},
            {"elapsed_ms", elapsed_ms(start)}};
}

json trace_attention(const RunConfig& config, const TraceOptions& options) {
    if (options.prompt.empty()) throw DomainError("trace-attn needs a prompt");
    if (options.steps < 1) throw DomainError("trace-attn needs at least one step");
    const auto backend = make_backend(config);
    attention::CapturePolicy policy;
    policy.cross = options.include_cross;
    policy.resolutions = options.resolutions;
    policy.timesteps = options.timesteps;
    attention::AttentionStore store(policy);
    diffusion::AttentionHooks hooks;
    hooks.on_record = [&](attention::AttentionRecord&& rec) {
        if (!options.include_qkv) {
            rec.query = {};
            rec.key = {};
            rec.value = {};
        }
        store.record(std::move(rec));
    };
    const Image image = diffusion::sample(backend, options.prompt, options.seed, options.steps, hooks);
    attention::save_store(store, options.out, options.include_qkv);
    io::write_png(options.out / "sample.png", image);
    json layers = json::array();
    for (const auto& id : store.layer_ids()) layers.push_back(id.value);
    return {{"command", "trace-attn"},
            {"records", store.size()},
            {"layers", layers},
            {"output", options.out.string()}};
}

json analyze_attention(const RunConfig& config, const AnalyzeOptions& options) {
    const auto store = attention::load_store(options.store, attention::CapturePolicy{true, false, {}, {}});
    std::vector<std::string> layers = !options.layers.empty() ? options.layers : config.analysis.layers;
    if (layers.empty()) {
        for (const auto& id : store.layer_ids()) layers.push_back(id.value);
    }
    if (layers.empty()) throw MissError("store at " + options.store.string() + " has no self-attention records");
    const int top_k = options.top_k.value_or(config.analysis.top_k);
    const auto side = config.analysis.side == "right" ? analysis::SingularSide::right : analysis::SingularSide::left;
    const auto interp = config.analysis.interpolation == "nearest" ? Interpolation::nearest : Interpolation::bilinear;

    json reports = json::array();
    for (const auto& name : layers) {
        const attention::LayerId id{name};
        const Matrix mean = attention::mean_map_over_timesteps(store, id);
        const int k = std::min<int>(top_k, static_cast<int>(mean.rows()));
        const auto components = analysis::principal_components(mean, k, side, id);
        const auto images = analysis::render_heatmaps(components, config.analysis.heatmap_size, interp);
        const fs::path out = options.out / name;
        fs::create_directories(out);
        json values = json::array();
        double top_energy = 0.0;
        for (std::size_t i = 0; i < components.size(); ++i) {
            char file[32];
            std::snprintf(file, sizeof(file), "component_%02zu.png", i);
            io::write_png(out / file, images[i]);
            values.push_back(components[i].singular_value);
            top_energy += components[i].singular_value * components[i].singular_value;
        }
        io::write_png(out / "contact_sheet.png", analysis::contact_sheet(images));
        const double total_energy = mean.cast<double>().squaredNorm();
        json report{{"layer_id", name},
                    {"records", store.select(id).size()},
                    {"resolution", store.select(id).front()->resolution},
                    {"top_k", k},
                    {"side", config.analysis.side},
                    {"singular_values", values},
                    {"energy_fraction", total_energy > 0 ? top_energy / total_energy : 0.0}};
        std::ofstream(out / "report.json") << report.dump(2) << '\n';
        reports.push_back(report);
    }
    return {{"command", "analyze-attn"}, {"layers", reports}, {"output", options.out.string()}};
}

json evaluate(const RunConfig& config, const EvaluateOptions& options) {
    const auto pairs = data::read_pairs_jsonl(options.pairs);
    const fs::path base = base_of(options.pairs);
    using metrics::MetricKind;
    auto clip = metrics::make_metric_scorer(MetricKind::clip, config.evaluation.clip);
    auto dino = metrics::make_metric_scorer(MetricKind::dino_gray, config.evaluation.dino_gray);
    auto lpips = metrics::make_metric_scorer(MetricKind::lpips_bg, config.evaluation.lpips_bg);
    auto detector = data::make_detector(config.pipeline.detector);
    auto segmenter = data::make_segmenter(config.pipeline.segmenter);

    std::vector<metrics::MetricReport> reports(pairs.size());
    parallel_for(pairs.size(), config.global.worker_count, [&](std::size_t i) {
        const auto& pair = pairs[i];
        const auto& s = pair.spec;
        const Image src = io::read_png(base / pair.source_image);
        const Image tgt = io::read_png(base / pair.target_image);
        metrics::MetricReport report;
        report.pair_id = s.pair_id;
        report.ssim = metrics::ssim(src, tgt);

        Mask object;
        const fs::path mask_file = options.masks ? *options.masks / (s.pair_id + ".png") : fs::path();
        if (options.masks && fs::exists(mask_file)) {
            object = io::read_mask_png(mask_file);
            report.masks["object"] = mask_file.string();
        } else {
            const auto found = data::background_mask(*detector, *segmenter, {&tgt, base / pair.target_image}, s.subject);
            if (found.status == data::VerdictStatus::pass) {
                object = found.object;
                report.masks["object"] = "detector:" + detector->id();
            }
        }
        const bool have_mask = object.height == tgt.height && object.width == tgt.width && object.count() > 0;

        if (s.attribute_kind != AttributeKind::color) {
            report.omitted["hue_l1"] = "not a color pair";
        } else if (!data::find_color_rgb(s.target_descriptor)) {
            report.omitted["hue_l1"] = "color '" + s.target_descriptor + "' is not in the color table";
        } else if (!have_mask) {
            report.omitted["hue_l1"] = "no object mask";
        } else {
            report.hue_l1 = metrics::MetricValue{metrics::hue_l1(tgt, object, s.target_descriptor), "native"};
        }

        metrics::MetricInputs clip_in;
        clip_in.image = &tgt;
        clip_in.text = data::compose_prompt("a {subject}", s.subject, s.target_descriptor);
        clip_in.image_caption = s.target_prompt;
        report.clip_score = metrics::score_with(clip.get(), clip_in, "clip_score", report);

        metrics::MetricInputs dino_in;
        dino_in.image = &tgt;
        dino_in.reference = &src;
        report.dino_gray = metrics::score_with(dino.get(), dino_in, "dino_gray", report);

        if (have_mask) {
            const Mask background = object.inverted();
            if (background.count() == 0) {
                report.omitted["lpips_bg"] = "empty background mask";
            } else {
                metrics::MetricInputs lp_in;
                lp_in.image = &tgt;
                lp_in.reference = &src;
                lp_in.mask = &background;
                report.lpips_bg = metrics::score_with(lpips.get(), lp_in, "lpips_bg", report);
            }
        } else {
            report.omitted["lpips_bg"] = "no object mask";
        }
        reports[i] = std::move(report);
    });

    if (options.out.has_parent_path()) fs::create_directories(options.out.parent_path());
    std::ofstream out(options.out, std::ios::trunc);
    if (!out) throw IoError("cannot write " + options.out.string());
    for (const auto& r : reports) out << metrics::to_json(r).dump() << '\n';
    return {{"command", "evaluate"}, {"pairs", reports.size()}, {"output", options.out.string()}};
}

}  // namespace attrgen::cli
