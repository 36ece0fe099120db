// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

// attrgen command-line front end. Prints a JSON summary on stdout; on
// failure prints {"error": ..., "message": ...} on stderr and exits nonzero.

#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "attrgen/cli/commands.hpp"
#include "attrgen/cli/config.hpp"
#include "attrgen/core/errors.hpp"
#include "attrgen/core/runtime.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

enum ExitCode { ok = 0, failure = 1, usage = 2, config_invalid = 3 };

int report_error(const std::string& kind, const std::string& message, const json& extra = nullptr) {
    json err{{"error", kind}, {"message", message}};
    if (!extra.is_null()) err["details"] = extra;
    std::cerr << err.dump() << std::endl;
    return kind == "config" ? config_invalid : failure;
}

}  // namespace

int main(int argc, char** argv) {
    attrgen::tune_allocator();
    auto logger = spdlog::stderr_color_mt("attrgen");
    spdlog::set_default_logger(logger);

    CLI::App app{"attrgen: attribute-editing dataset generation and attention analysis"};
    app.require_subcommand(1);

    std::optional<std::string> config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> output_dir;
    std::optional<int> workers;
    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("--config", config_path, "JSON config file");
        cmd->add_option("--seed", seed, "override generation seeds, template and triple seeds");
        cmd->add_option("--output-dir", output_dir, "root directory for run outputs");
        cmd->add_option("--workers", workers, "worker pool size")->check(CLI::Range(1, 256));
    };

    auto* gen = app.add_subcommand("generate-pairs", "generate source/target image pairs");
    add_common(gen);

    std::optional<std::string> filter_input;
    auto* filter = app.add_subcommand("filter", "run the judge, similarity and leakage gates");
    add_common(filter);
    filter->add_option("--pairs", filter_input, "pair list (default: <run>/pairs.jsonl)");

    std::optional<std::string> accepted_input;
    auto* instr = app.add_subcommand("make-instructions", "write instruction triples for accepted pairs");
    add_common(instr);
    instr->add_option("--accepted", accepted_input, "accepted pair list (default: <run>/accepted.jsonl)");

    attrgen::cli::TraceOptions trace;
    std::string trace_out;
    auto* trace_cmd = app.add_subcommand("trace-attn", "sample a prompt and save its attention maps");
    add_common(trace_cmd);
    trace_cmd->add_option("--prompt", trace.prompt, "prompt text")->required();
    trace_cmd->add_option("--steps", trace.steps, "denoising steps")->check(CLI::PositiveNumber);
    trace_cmd->add_option("--resolutions", trace.resolutions, "resolutions to keep (default: all)")->delimiter(',');
    trace_cmd->add_option("--timesteps", trace.timesteps, "timesteps to keep (default: all)")->delimiter(',');
    trace_cmd->add_flag("--cross", trace.include_cross, "also keep cross-attention maps");
    trace_cmd->add_flag("--qkv", trace.include_qkv, "also save query/key/value tensors");
    trace_cmd->add_option("--out", trace_out, "store directory")->required();

    attrgen::cli::AnalyzeOptions analyze;
    std::string analyze_store, analyze_out;
    std::optional<int> top_k;
    auto* analyze_cmd = app.add_subcommand("analyze-attn", "principal-component heatmaps of stored attention maps");
    add_common(analyze_cmd);
    analyze_cmd->add_option("--store", analyze_store, "attention store directory")->required();
    analyze_cmd->add_option("--layer", analyze.layers, "layer id (repeatable; default: config or all)");
    analyze_cmd->add_option("--top-k", top_k, "number of components")->check(CLI::PositiveNumber);
    analyze_cmd->add_option("--out", analyze_out, "output directory")->required();

    std::string eval_pairs, eval_out;
    std::optional<std::string> eval_masks;
    auto* eval_cmd = app.add_subcommand("evaluate", "compute metrics for a pair list");
    add_common(eval_cmd);
    eval_cmd->add_option("--pairs", eval_pairs, "pair list JSONL")->required();
    eval_cmd->add_option("--masks", eval_masks, "directory of <pair_id>.png object masks");
    eval_cmd->add_option("--out", eval_out, "report JSONL")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : usage;
    }

    try {
        attrgen::cli::Overrides overrides{seed, output_dir, workers};
        std::optional<fs::path> path;
        if (config_path) path = *config_path;
        const auto config = attrgen::cli::load_config(path, overrides);
        spdlog::set_level(spdlog::level::from_str(config.global.log_level));

        json summary;
        if (*gen) {
            summary = attrgen::cli::generate_pairs(config);
        } else if (*filter) {
            std::optional<fs::path> in;
            if (filter_input) in = *filter_input;
            summary = attrgen::cli::filter_pairs(config, in);
        } else if (*instr) {
            std::optional<fs::path> in;
            if (accepted_input) in = *accepted_input;
            summary = attrgen::cli::make_instructions(config, in);
        } else if (*trace_cmd) {
            if (seed) trace.seed = *seed;
            trace.out = trace_out;
            summary = attrgen::cli::trace_attention(config, trace);
        } else if (*analyze_cmd) {
            analyze.store = analyze_store;
            analyze.out = analyze_out;
            analyze.top_k = top_k;
            summary = attrgen::cli::analyze_attention(config, analyze);
        } else if (*eval_cmd) {
            attrgen::cli::EvaluateOptions opts{eval_pairs, std::nullopt, eval_out};
            if (eval_masks) opts.masks = *eval_masks;
            summary = attrgen::cli::evaluate(config, opts);
        }
        std::cout << summary.dump() << std::endl;
        return ok;
    } catch (const attrgen::ConfigError& e) {
        return report_error("config", "invalid configuration", e.violations());
    } catch (const attrgen::Error& e) {
        return report_error("runtime", e.what());
    } catch (const std::exception& e) {
        return report_error("internal", e.what());
    }
}
