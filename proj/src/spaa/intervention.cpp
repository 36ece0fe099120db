// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/spaa/intervention.hpp"

#include <spdlog/spdlog.h>

#include <exception>
#include <map>

#include "attrgen/core/errors.hpp"

namespace attrgen::spaa {

using attention::AttentionKind;
using attention::AttentionRecord;
using attention::AttentionStore;
using attention::RecordKey;

void InterventionConfig::validate(bool toy_backend) const {
    schedule.validate();
    if (resolution_gate <= 0) throw DomainError("resolution gate must be positive");
    if (toy_backend && resolution_gate != 8 && resolution_gate != 16 && resolution_gate != 32 && resolution_gate != 64) {
        throw DomainError("toy backend resolution gate must be one of 8, 16, 32, 64; got " +
                          std::to_string(resolution_gate));
    }
    if (!replace_throughout && replace_until_step < 0) throw DomainError("replace_until_step must be >= 0");
    if (stage_mask) {
        if (stage_mask->total_stages < 1) throw DomainError("total_stages must be >= 1");
        for (int s : stage_mask->active)
            if (s < 0 || s >= stage_mask->total_stages) throw DomainError("stage index " + std::to_string(s) + " out of range");
    }
}

double applied_ratio(const InterventionConfig& config, int step_index, int steps) {
    if (config.stage_mask && !config.stage_mask->active.contains(config.stage_mask->stage_of(step_index, steps))) {
        return config.schedule.floor;
    }
    return ratio_at(config.schedule, step_index);
}

void scale_rows_in_place(Matrix& m, std::span<const std::size_t> rows, double ratio) {
    for (std::size_t r : rows) {
        if (r >= static_cast<std::size_t>(m.rows())) {
            throw BoundsError("row index " + std::to_string(r) + " out of range for " + std::to_string(m.rows()) + " rows");
        }
    }
    if (ratio == 1.0) return;
    for (std::size_t r : rows) {
        auto row = m.row(static_cast<Eigen::Index>(r));
        for (Eigen::Index j = 0; j < row.size(); ++j) row(j) = static_cast<float>(static_cast<double>(row(j)) * ratio);
    }
}

Matrix amplify_values(const Matrix& value, std::span<const std::size_t> rows, double ratio) {
    Matrix out = value;
    scale_rows_in_place(out, rows, ratio);
    return out;
}

Matrix amplify_keys(const Matrix& key, std::span<const std::size_t> rows, double ratio) {
    Matrix out = key;
    scale_rows_in_place(out, rows, ratio);
    return out;
}

AttentionRecord inject_self_attention(const AttentionRecord& target, const AttentionStore& source, int gate) {
    if (target.kind != AttentionKind::self) throw DomainError("self-attention injection needs a self record");
    if (target.resolution < gate) return target;
    if (!source.contains(target.timestep, target.layer_id, target.head)) {
        throw InjectionMiss("no source self-attention map for layer " + target.layer_id.value + " at timestep " +
                            std::to_string(target.timestep) + ", head " + std::to_string(target.head));
    }
    const AttentionRecord& src = source.fetch(target.timestep, target.layer_id, target.head);
    if (src.map.rows() != target.map.rows() || src.map.cols() != target.map.cols()) {
        throw ShapeError("source map shape differs at layer " + target.layer_id.value);
    }
    AttentionRecord out = target;
    out.map = src.map;
    return out;
}

InterventionConfig stage_mask_amplification(InterventionConfig config, const std::set<int>& active_stages,
                                            int total_stages) {
    if (total_stages < 1) throw DomainError("total_stages must be >= 1");
    for (int s : active_stages) {
        if (s < 0 || s >= total_stages) {
            throw DomainError("stage " + std::to_string(s) + " outside [0, " + std::to_string(total_stages) + ")");
        }
    }
    if (active_stages.empty()) spdlog::warn("stage mask has no active stages; amplification is disabled");
    config.stage_mask = StageMask{active_stages, total_stages};
    return config;
}

namespace {

// Rethrows an InjectionMiss nested inside a BackendError as itself.
[[noreturn]] void rethrow_unwrapped(const BackendError& e) {
    try {
        std::rethrow_if_nested(e);
    } catch (const InjectionMiss&) {
        throw;
    } catch (...) {
    }
    throw;
}

}  // namespace

PairResult spaa_denoise_pair(const diffusion::DiffusionBackend& backend, const std::string& source_prompt,
                             const std::string& target_prompt, const std::vector<std::string>& attrs,
                             std::uint64_t seed, const InterventionConfig& config, int steps, RunCapture capture) {
    config.validate();
    if (steps < 1) throw DomainError("steps must be >= 1");
    if (source_prompt.empty() || target_prompt.empty()) throw DomainError("prompts must be nonempty");

    PairResult result;
    result.target_prompt = locate_attribute_tokens(target_prompt, attrs, backend.tokenizer());
    const std::vector<std::size_t> attr_rows = result.target_prompt.attribute_indices();
    const int gate = config.resolution_gate;

    const Matrix source_embedding = backend.encode_text(source_prompt);
    const Matrix target_embedding = backend.encode_text(target_prompt);
    Latent source_latent = backend.init_latent(seed);
    Latent target_latent = source_latent;

    // Source maps of the current step awaiting injection. Each is consumed
    // exactly once by the target branch, so ownership moves instead of copying.
    std::map<RecordKey, Matrix> pending;
    bool inject = true;

    diffusion::AttentionHooks source_hooks;
    source_hooks.on_record = [&](AttentionRecord&& rec) {
        const bool keep = inject && rec.kind == AttentionKind::self && rec.resolution >= gate;
        if (capture.source) {
            if (keep) {
                capture.source->record(rec);
            } else {
                capture.source->record(std::move(rec));
                return;
            }
        }
        if (keep) pending.emplace(RecordKey{rec.timestep, rec.layer_id, rec.head}, std::move(rec.map));
    };

    double ratio = 1.0;
    diffusion::AttentionHooks target_hooks;
    target_hooks.self_map_override = [&](const diffusion::LayerInfo& layer, int t, int head) -> std::optional<Matrix> {
        if (!inject || layer.resolution < gate) return std::nullopt;
        auto it = pending.find(RecordKey{t, layer.id, head});
        if (it == pending.end()) {
            throw InjectionMiss("no source self-attention map for layer " + layer.id.value + " at timestep " +
                                std::to_string(t) + ", head " + std::to_string(head));
        }
        Matrix map = std::move(it->second);
        pending.erase(it);
        return map;
    };
    auto amplify = [&](const diffusion::LayerInfo&, int, Matrix& rows) { scale_rows_in_place(rows, attr_rows, ratio); };
    if (config.amplify_target == AmplifyTarget::value) {
        target_hooks.cross_value = amplify;
    } else {
        target_hooks.cross_key = amplify;
    }
    if (capture.target) {
        target_hooks.on_record = [&](AttentionRecord&& rec) { capture.target->record(std::move(rec)); };
    }

    result.applied_ratios.reserve(static_cast<std::size_t>(steps));
    for (int k = 0; k < steps; ++k) {
        inject = config.replace_throughout || k < config.replace_until_step;
        pending.clear();
        ratio = applied_ratio(config, k, steps);
        result.applied_ratios.push_back(ratio);
        try {
            source_latent = backend.denoise_step(source_latent, k, source_embedding, source_hooks);
            target_latent = backend.denoise_step(target_latent, k, target_embedding, target_hooks);
        } catch (const BackendError& e) {
            rethrow_unwrapped(e);
        }
    }
    result.source_image = backend.decode(source_latent);
    result.target_image = backend.decode(target_latent);
    return result;
}

}  // namespace attrgen::spaa
