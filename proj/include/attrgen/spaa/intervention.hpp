// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "attrgen/attention/store.hpp"
#include "attrgen/diffusion/backend.hpp"
#include "attrgen/spaa/prompt.hpp"
#include "attrgen/spaa/schedule.hpp"

namespace attrgen::spaa {

enum class AmplifyTarget { value, key };

struct InterventionConfig {
    /// Self-attention maps at resolution >= gate come from the source branch.
    int resolution_gate = 32;
    bool replace_throughout = true;
    /// Only read when replace_throughout is false: inject for steps < this.
    int replace_until_step = 0;
    AmplificationSchedule schedule = AmplificationSchedule::color();
    /// `key` exists for the Key-vs-Value ablation only.
    AmplifyTarget amplify_target = AmplifyTarget::value;
    std::optional<StageMask> stage_mask;

    /// DomainError on invalid values. With `toy_backend`, the gate must be
    /// one of 8/16/32/64.
    void validate(bool toy_backend = false) const;
    bool operator==(const InterventionConfig&) const = default;
};

/// Ratio the run applies at `step_index` of `steps`: the schedule value in
/// active stages (or everywhere without a mask) and the floor elsewhere.
double applied_ratio(const InterventionConfig& config, int step_index, int steps);

/// Rows listed in `rows` become ratio * row (rounded once to float); every
/// other row is copied bitwise. BoundsError on an out-of-range index.
Matrix amplify_values(const Matrix& value, std::span<const std::size_t> rows, double ratio);
/// Same scaling applied to key rows (ablation path).
Matrix amplify_keys(const Matrix& key, std::span<const std::size_t> rows, double ratio);
void scale_rows_in_place(Matrix& m, std::span<const std::size_t> rows, double ratio);

/// Returns the target record with the source map swapped in when its
/// resolution passes the (inclusive) gate; otherwise returns it unchanged.
/// InjectionMiss if the gate holds but the source store lacks the key.
attention::AttentionRecord inject_self_attention(const attention::AttentionRecord& target,
                                                 const attention::AttentionStore& source, int gate);

/// Copy of `config` that amplifies only inside `active_stages`. An empty set
/// logs a warning and yields a config whose applied ratio is always the floor.
/// DomainError for stage indices outside [0, total_stages).
InterventionConfig stage_mask_amplification(InterventionConfig config, const std::set<int>& active_stages,
                                            int total_stages = 10);

/// Optional stores filled with every record of each branch (subject to each
/// store's capture policy).
struct RunCapture {
    attention::AttentionStore* source = nullptr;
    attention::AttentionStore* target = nullptr;
};

struct PairResult {
    Image source_image;
    Image target_image;
    /// Ratio applied at each step, in step order.
    std::vector<double> applied_ratios;
    AnnotatedPrompt target_prompt;
};

/// Dual-branch denoising from one seeded latent. At every step the source
/// branch runs first and its gated self-attention maps replace the target
/// branch's; attribute-token cross-attention Value rows of the target branch
/// are scaled by applied_ratio(config, k, steps).
PairResult spaa_denoise_pair(const diffusion::DiffusionBackend& backend, const std::string& source_prompt,
                             const std::string& target_prompt, const std::vector<std::string>& attrs,
                             std::uint64_t seed, const InterventionConfig& config, int steps,
                             RunCapture capture = {});

}  // namespace attrgen::spaa
