// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>

#include "attrgen/attention/attention.hpp"
#include "attrgen/core/image.hpp"
#include "attrgen/diffusion/tokenizer.hpp"

namespace attrgen::diffusion {

struct LayerInfo {
    attention::LayerId id;
    attention::AttentionKind kind = attention::AttentionKind::self;
    int resolution = 0;
    bool operator==(const LayerInfo&) const = default;
};

/// Intervention points a backend exposes inside one denoising step. Every
/// member may be empty, which means identity / no-op.
struct AttentionHooks {
    /// Supplies a replacement self-attention map before the backend computes
    /// its own. Returning a map skips that computation; the result must match
    /// what `self_map` replacing the computed map would have produced.
    std::function<std::optional<Matrix>(const LayerInfo&, int timestep, int head)> self_map_override;

    /// Called once per (self layer, head) with the map in place, before the
    /// layer output is formed from it.
    std::function<void(attention::AttentionRecord&)> self_map;

    /// Called once per cross layer on the full [n_tokens x d] key / value
    /// projections of the text embedding, before the heads are split.
    std::function<void(const LayerInfo&, int timestep, Matrix& rows)> cross_key;
    std::function<void(const LayerInfo&, int timestep, Matrix& rows)> cross_value;

    /// Receives every final record (self and cross) after its output is formed.
    std::function<void(attention::AttentionRecord&&)> on_record;
};

/// What SPAA needs from a diffusion model. Implementations must be
/// deterministic given all arguments, keep `attention_layers()` fixed for
/// their lifetime, and invoke each hook exactly once per layer (and head,
/// for self maps) per step. Failures raised by hooks are rethrown as
/// BackendError with the original exception nested.
class DiffusionBackend {
public:
    virtual ~DiffusionBackend() = default;

    virtual std::string id() const = 0;
    virtual const Tokenizer& tokenizer() const = 0;

    /// [n_tokens x d_text]; DomainError on an empty prompt.
    virtual Matrix encode_text(std::string_view prompt) const = 0;
    virtual Latent init_latent(std::uint64_t seed) const = 0;
    /// `timestep` is the step index, 0 at the noisiest step.
    virtual Latent denoise_step(const Latent& latent, int timestep, const Matrix& embeddings,
                                const AttentionHooks& hooks) const = 0;
    virtual Image decode(const Latent& latent) const = 0;
    virtual std::span<const LayerInfo> attention_layers() const = 0;
};

/// init_latent → `steps` denoise steps → decode.
Image sample(const DiffusionBackend& backend, std::string_view prompt, std::uint64_t seed, int steps,
             const AttentionHooks& hooks = {});

}  // namespace attrgen::diffusion
