// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <map>

#include "attrgen/core/errors.hpp"
#include "attrgen/diffusion/conformance.hpp"
#include "attrgen/diffusion/toy_denoiser.hpp"
#include "support.hpp"

using namespace attrgen;
using namespace attrgen::diffusion;
using attention::AttentionKind;
using attention::AttentionRecord;

namespace {

const ToyDenoiser& backend() {
    static const ToyDenoiser toy;
    return toy;
}

}  // namespace

TEST_CASE("tokenizer lowercases and strips punctuation") {
    WhitespaceTokenizer tok;
    const auto t = tok.tokenize("A  Red, lamp!");
    REQUIRE(t.size() == 3);
    CHECK(t[0] == "a");
    CHECK(t[1] == "red");
    CHECK(t[2] == "lamp");
    CHECK(normalize_token("\"Navy.\"") == "navy");
}

TEST_CASE("toy backend passes the conformance suite") {
    const auto failures = check_backend_conformance(backend(), "a red lamp on a table", 3);
    for (const auto& f : failures) MESSAGE(f);
    CHECK(failures.empty());
}

TEST_CASE("toy backend exposes the 64-32-16-8-16-32-64 ladder") {
    std::vector<std::string> ids;
    std::map<std::string, int> res;
    for (const auto& l : backend().attention_layers()) {
        ids.push_back(l.id.value);
        res[l.id.value] = l.resolution;
    }
    const std::vector<std::string> expect{"down64.self", "down64.cross", "down32.self", "down32.cross",
                                          "down16.self", "down16.cross", "mid8.self",   "mid8.cross",
                                          "up16.self",   "up16.cross",   "up32.self",   "up32.cross",
                                          "up64.self",   "up64.cross"};
    CHECK(ids == expect);
    CHECK(res["mid8.self"] == 8);
    CHECK(res["up64.cross"] == 64);
}

TEST_CASE("text encoding and latents are deterministic") {
    CHECK_THROWS_AS(backend().encode_text(""), DomainError);
    const Matrix e = backend().encode_text("a red lamp");
    CHECK(e.rows() == 3);
    CHECK(e == backend().encode_text("a red lamp"));
    // A token's embedding does not depend on its neighbours.
    const Matrix f = backend().encode_text("red mug");
    CHECK(f.row(0) == e.row(1));
    CHECK(backend().init_latent(1) == backend().init_latent(1));
    CHECK_FALSE(backend().init_latent(1) == backend().init_latent(2));
    ToyConfig other;
    other.arch_seed = 1;
    CHECK(ToyDenoiser(other).weights_digest() != backend().weights_digest());
}

TEST_CASE("sampling is reproducible and seed-sensitive") {
    const Image a = sample(backend(), "a lamp", 4, 2);
    const Image b = sample(backend(), "a lamp", 4, 2);
    CHECK(a == b);
    CHECK(a.channels == 3);
    CHECK(a.height == 512);
    CHECK(a.width == 512);
    CHECK_FALSE(a == sample(backend(), "a lamp", 5, 2));
}

TEST_CASE("every emitted record is valid") {
    const Matrix e = backend().encode_text("a red lamp");
    int self = 0, cross = 0;
    AttentionHooks hooks;
    hooks.on_record = [&](AttentionRecord&& r) {
        r.validate(r.kind == AttentionKind::cross ? std::optional<int>(3) : std::nullopt);
        CHECK(r.timestep == 6);
        (r.kind == AttentionKind::self ? self : cross)++;
    };
    backend().denoise_step(backend().init_latent(0), 6, e, hooks);
    CHECK(self == 7 * backend().config().heads);
    CHECK(cross == 7 * backend().config().heads);
}

TEST_CASE("map override is equivalent to replacing the computed map") {
    const Matrix e = backend().encode_text("a lamp");
    const Latent z = backend().init_latent(9);
    std::mt19937_64 rng(1);
    std::map<std::pair<std::string, int>, Matrix> replacements;
    for (const auto& l : backend().attention_layers()) {
        if (l.kind != AttentionKind::self || l.resolution > 16) continue;
        for (int h = 0; h < backend().config().heads; ++h) {
            replacements[{l.id.value, h}] = testing::random_stochastic(rng, l.resolution * l.resolution);
        }
    }
    AttentionHooks via_override;
    via_override.self_map_override = [&](const LayerInfo& l, int, int h) -> std::optional<Matrix> {
        auto it = replacements.find({l.id.value, h});
        if (it == replacements.end()) return std::nullopt;
        return it->second;
    };
    AttentionHooks via_replace;
    via_replace.self_map = [&](AttentionRecord& r) {
        auto it = replacements.find({r.layer_id.value, r.head});
        if (it != replacements.end()) r.map = it->second;
    };
    const Latent a = backend().denoise_step(z, 0, e, via_override);
    const Latent b = backend().denoise_step(z, 0, e, via_replace);
    CHECK(a == b);
    CHECK_FALSE(a == backend().denoise_step(z, 0, e, {}));
}

TEST_CASE("hook failures surface as backend errors with location") {
    const Matrix e = backend().encode_text("a lamp");
    AttentionHooks hooks;
    hooks.self_map = [](AttentionRecord& r) {
        if (r.layer_id.value == "down16.self") throw DomainError("hook failed");
    };
    try {
        backend().denoise_step(backend().init_latent(0), 2, e, hooks);
        FAIL("expected a BackendError");
    } catch (const BackendError& err) {
        CHECK(err.timestep() == 2);
        CHECK(err.layer_id() == "down16.self");
    }
}
