// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <vector>

#include "attrgen/diffusion/backend.hpp"

namespace attrgen::diffusion {

struct ToyConfig {
    std::uint64_t arch_seed = 0;
    std::uint64_t text_seed = 0x5eedULL;
    int latent_channels = 4;
    int latent_size = 64;
    int heads = 2;
    int head_dim = 16;
    int text_dim = 32;
    /// down / mid / up block resolutions
    std::vector<int> ladder{64, 32, 16, 8, 16, 32, 64};
    int image_size = 512;
    float step_size = 0.1f;
};

/// Random-weight miniature denoiser for exercising attention interventions.
/// Its outputs are structured noise, not pictures of anything.
///
/// Each ladder block pools the incoming latent to its resolution, runs one
/// self-attention and one cross-attention layer over it, and projects back to
/// latent channels. Blocks read the step's input latent directly, so a block's
/// self-attention map within a step does not depend on interventions in the
/// other blocks. The step update is latent + step_size * tanh(sum of blocks).
class ToyDenoiser final : public DiffusionBackend {
public:
    explicit ToyDenoiser(ToyConfig config = {});

    std::string id() const override;
    const Tokenizer& tokenizer() const override { return tokenizer_; }
    Matrix encode_text(std::string_view prompt) const override;
    Latent init_latent(std::uint64_t seed) const override;
    Latent denoise_step(const Latent& latent, int timestep, const Matrix& embeddings,
                        const AttentionHooks& hooks) const override;
    Image decode(const Latent& latent) const override;
    std::span<const LayerInfo> attention_layers() const override { return layers_; }

    const ToyConfig& config() const { return config_; }
    /// sha256 over every weight, for drift checks.
    std::string weights_digest() const;

private:
    struct Block {
        int resolution = 0;
        LayerInfo self_layer;
        LayerInfo cross_layer;
        Matrix input;    // [C x d_model]
        Matrix time;     // [time_features x d_model]
        attention::Projections self_proj;
        Matrix self_out;  // [d_model x d_model]
        attention::Projections cross_proj;
        Matrix cross_out;
        Matrix output;  // [d_model x C]
    };

    Matrix run_block(const Block& block, const Latent& latent, int timestep, const Matrix& embeddings,
                     const AttentionHooks& hooks) const;

    ToyConfig config_;
    WhitespaceTokenizer tokenizer_;
    std::vector<Block> blocks_;
    std::vector<LayerInfo> layers_;
    Matrix decoder_;       // [3 x C]
    Vector decoder_bias_;  // [3]
};

}  // namespace attrgen::diffusion
