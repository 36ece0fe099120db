// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/diffusion/backend.hpp"

#include <map>

#include "attrgen/core/errors.hpp"
#include "attrgen/diffusion/conformance.hpp"

namespace attrgen::diffusion {

Image sample(const DiffusionBackend& backend, std::string_view prompt, std::uint64_t seed, int steps,
             const AttentionHooks& hooks) {
    if (steps < 1) throw DomainError("steps must be >= 1, got " + std::to_string(steps));
    const Matrix embeddings = backend.encode_text(prompt);
    Latent latent = backend.init_latent(seed);
    for (int k = 0; k < steps; ++k) latent = backend.denoise_step(latent, k, embeddings, hooks);
    return backend.decode(latent);
}

std::vector<std::string> check_backend_conformance(const DiffusionBackend& backend, std::string_view prompt,
                                                   std::uint64_t seed) {
    std::vector<std::string> failures;
    const std::vector<LayerInfo> layers(backend.attention_layers().begin(), backend.attention_layers().end());

    const Matrix e1 = backend.encode_text(prompt);
    const Matrix e2 = backend.encode_text(prompt);
    if (e1 != e2) failures.push_back("encode_text is not deterministic");
    if (static_cast<std::size_t>(e1.rows()) != backend.tokenizer().tokenize(prompt).size()) {
        failures.push_back("embedding rows do not match token count");
    }
    const Latent z = backend.init_latent(seed);
    if (z != backend.init_latent(seed)) failures.push_back("init_latent is not deterministic");

    std::map<std::string, int> self_calls, cross_value_calls, cross_key_calls, records;
    AttentionHooks counting;
    counting.self_map = [&](attention::AttentionRecord& r) { ++self_calls[r.layer_id.value]; };
    counting.cross_value = [&](const LayerInfo& l, int, Matrix&) { ++cross_value_calls[l.id.value]; };
    counting.cross_key = [&](const LayerInfo& l, int, Matrix&) { ++cross_key_calls[l.id.value]; };
    counting.on_record = [&](attention::AttentionRecord&& r) { ++records[r.layer_id.value]; };

    const Latent a = backend.denoise_step(z, 0, e1, counting);
    const Latent b = backend.denoise_step(z, 0, e1, {});
    if (a != b) failures.push_back("counting hooks changed the step output");
    if (b != backend.denoise_step(z, 0, e1, {})) failures.push_back("denoise_step is not deterministic");

    std::map<std::string, int> heads_per_layer;
    for (const auto& [layer, n] : records) heads_per_layer[layer] = n;
    for (const LayerInfo& l : layers) {
        if (l.kind == attention::AttentionKind::self) {
            if (self_calls[l.id.value] < 1 || self_calls[l.id.value] != heads_per_layer[l.id.value]) {
                failures.push_back("self hook count mismatch at " + l.id.value);
            }
        } else {
            if (cross_value_calls[l.id.value] != 1) failures.push_back("cross value hook count != 1 at " + l.id.value);
            if (cross_key_calls[l.id.value] != 1) failures.push_back("cross key hook count != 1 at " + l.id.value);
        }
    }
    if (records.size() != layers.size()) failures.push_back("records were not emitted for every enumerated layer");

    const std::vector<LayerInfo> again(backend.attention_layers().begin(), backend.attention_layers().end());
    if (again != layers) failures.push_back("attention_layers changed across calls");

    if (backend.decode(b) != backend.decode(b)) failures.push_back("decode is not deterministic");
    return failures;
}

}  // namespace attrgen::diffusion
