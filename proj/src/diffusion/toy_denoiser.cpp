// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/diffusion/toy_denoiser.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <random>

#include "attrgen/core/errors.hpp"
#include "attrgen/core/hashing.hpp"

namespace attrgen::diffusion {

using attention::AttentionKind;
using attention::AttentionRecord;

namespace {

constexpr int kTimeFeatures = 8;

class WeightSource {
public:
    explicit WeightSource(std::uint64_t seed) : gen_(seed) {}

    double uniform01() { return static_cast<double>(gen_() >> 11) * 0x1.0p-53; }

    /// Uniform with variance gain² / fan_in.
    Matrix matrix(int rows, int cols, double gain = 1.0) {
        Matrix m(rows, cols);
        const double half_width = std::sqrt(3.0) * gain / std::sqrt(static_cast<double>(rows));
        for (Eigen::Index i = 0; i < m.size(); ++i) m.data()[i] = static_cast<float>((2.0 * uniform01() - 1.0) * half_width);
        return m;
    }

private:
    std::mt19937_64 gen_;
};

Matrix time_features(int timestep) {
    Matrix t(1, kTimeFeatures);
    for (int j = 0; j < kTimeFeatures / 2; ++j) {
        const double freq = std::pow(10.0, -static_cast<double>(j) / 2.0);
        t(0, 2 * j) = static_cast<float>(std::sin(timestep * freq));
        t(0, 2 * j + 1) = static_cast<float>(std::cos(timestep * freq));
    }
    return t;
}

template <class Fn>
void guarded(int timestep, const LayerInfo& layer, Fn&& fn) {
    try {
        fn();
    } catch (...) {
        std::string what = "hook failed";
        try {
            throw;
        } catch (const std::exception& e) {
            what = e.what();
        } catch (...) {
        }
        std::throw_with_nested(BackendError(timestep, layer.id.value, what));
    }
}

std::string block_name(const std::vector<int>& ladder, std::size_t i) {
    const auto bottom = static_cast<std::size_t>(std::min_element(ladder.begin(), ladder.end()) - ladder.begin());
    const char* stage = i < bottom ? "down" : (i == bottom ? "mid" : "up");
    return stage + std::to_string(ladder[i]);
}

}  // namespace

ToyDenoiser::ToyDenoiser(ToyConfig config) : config_(std::move(config)) {
    const int d_model = config_.heads * config_.head_dim;
    const int c = config_.latent_channels;
    for (int r : config_.ladder) {
        if (r <= 0 || config_.latent_size % r != 0) {
            throw DomainError("ladder resolution " + std::to_string(r) + " must divide latent size " +
                              std::to_string(config_.latent_size));
        }
    }
    WeightSource w(config_.arch_seed);
    for (std::size_t i = 0; i < config_.ladder.size(); ++i) {
        Block b;
        b.resolution = config_.ladder[i];
        const std::string name = block_name(config_.ladder, i);
        b.self_layer = {attention::LayerId{name + ".self"}, AttentionKind::self, b.resolution};
        b.cross_layer = {attention::LayerId{name + ".cross"}, AttentionKind::cross, b.resolution};
        b.input = w.matrix(c, d_model);
        b.time = w.matrix(kTimeFeatures, d_model, 0.5);
        b.self_proj = {{w.matrix(d_model, d_model, 1.5)}, {w.matrix(d_model, d_model, 1.5)}, {w.matrix(d_model, d_model)}};
        b.self_out = w.matrix(d_model, d_model, 0.5);
        b.cross_proj = {{w.matrix(d_model, d_model, 1.5)},
                        {w.matrix(config_.text_dim, d_model, 1.5)},
                        {w.matrix(config_.text_dim, d_model)}};
        b.cross_out = w.matrix(d_model, d_model, 0.5);
        b.output = w.matrix(d_model, c);
        layers_.push_back(b.self_layer);
        layers_.push_back(b.cross_layer);
        blocks_.push_back(std::move(b));
    }
    decoder_ = w.matrix(c, 3, 2.0).transpose();
    decoder_bias_ = Vector::Zero(3);
}

std::string ToyDenoiser::id() const {
    return "toy:arch_seed=" + std::to_string(config_.arch_seed);
}

Matrix ToyDenoiser::encode_text(std::string_view prompt) const {
    const auto tokens = tokenizer_.tokenize(prompt);
    if (tokens.empty()) throw DomainError("cannot encode an empty prompt");
    Matrix out(static_cast<Eigen::Index>(tokens.size()), config_.text_dim);
    for (std::size_t i = 0; i < tokens.size(); ++i) {
        std::mt19937_64 gen(fnv1a64(tokens[i]) ^ config_.text_seed);
        for (int j = 0; j < config_.text_dim; ++j) {
            const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
            out(static_cast<Eigen::Index>(i), j) = static_cast<float>(2.0 * u - 1.0);
        }
    }
    return out;
}

Latent ToyDenoiser::init_latent(std::uint64_t seed) const {
    Latent z(config_.latent_channels, config_.latent_size, config_.latent_size);
    std::mt19937_64 gen(seed);
    std::normal_distribution<float> normal(0.0f, 1.0f);
    for (auto& v : z.data) v = normal(gen);
    return z;
}

Matrix ToyDenoiser::run_block(const Block& block, const Latent& latent, int timestep, const Matrix& embeddings,
                              const AttentionHooks& hooks) const {
    const int r = block.resolution;
    const int f = config_.latent_size / r;
    const int c = config_.latent_channels;
    const int hd = config_.head_dim;
    const Eigen::Index n = static_cast<Eigen::Index>(r) * r;

    Matrix pooled = Matrix::Zero(n, c);
    for (int ch = 0; ch < c; ++ch)
        for (int y = 0; y < config_.latent_size; ++y)
            for (int x = 0; x < config_.latent_size; ++x) pooled((y / f) * r + x / f, ch) += latent.at(ch, y, x);
    pooled /= static_cast<float>(f * f);
    for (int ch = 0; ch < c; ++ch) {
        auto col = pooled.col(ch);
        const float mean = col.mean();
        col.array() -= mean;
        const float sd = std::sqrt(col.squaredNorm() / static_cast<float>(n) + 1e-5f);
        col /= sd;
    }

    Matrix x = pooled * block.input;
    const Matrix time_row = time_features(timestep) * block.time;
    x.rowwise() += time_row.row(0);

    // Self-attention.
    const auto self_qkv = attention::project_qkv(AttentionKind::self, x, nullptr, block.self_proj);
    Matrix self_heads(n, config_.heads * hd);
    for (int h = 0; h < config_.heads; ++h) {
        AttentionRecord rec;
        rec.layer_id = block.self_layer.id;
        rec.kind = AttentionKind::self;
        rec.resolution = r;
        rec.timestep = timestep;
        rec.head = h;
        rec.query = self_qkv.query.middleCols(h * hd, hd);
        rec.key = self_qkv.key.middleCols(h * hd, hd);
        rec.value = self_qkv.value.middleCols(h * hd, hd);
        std::optional<Matrix> injected;
        if (hooks.self_map_override) {
            guarded(timestep, block.self_layer, [&] {
                injected = hooks.self_map_override(block.self_layer, timestep, h);
                if (injected && (injected->rows() != n || injected->cols() != n)) {
                    throw ShapeError("override map is " + std::to_string(injected->rows()) + "x" +
                                     std::to_string(injected->cols()) + ", expected " + std::to_string(n) + " square");
                }
            });
        }
        rec.map = injected ? std::move(*injected) : attention::attention_map(rec.query, rec.key);
        if (hooks.self_map) guarded(timestep, block.self_layer, [&] { hooks.self_map(rec); });
        self_heads.middleCols(h * hd, hd).noalias() = rec.map * rec.value;
        if (hooks.on_record) guarded(timestep, block.self_layer, [&] { hooks.on_record(std::move(rec)); });
    }
    Matrix h1 = x;
    h1.noalias() += self_heads * block.self_out;

    // Cross-attention over the text embedding.
    auto cross_qkv = attention::project_qkv(AttentionKind::cross, h1, &embeddings, block.cross_proj);
    if (hooks.cross_key) guarded(timestep, block.cross_layer, [&] { hooks.cross_key(block.cross_layer, timestep, cross_qkv.key); });
    if (hooks.cross_value) guarded(timestep, block.cross_layer, [&] { hooks.cross_value(block.cross_layer, timestep, cross_qkv.value); });
    Matrix cross_heads(n, config_.heads * hd);
    for (int h = 0; h < config_.heads; ++h) {
        AttentionRecord rec;
        rec.layer_id = block.cross_layer.id;
        rec.kind = AttentionKind::cross;
        rec.resolution = r;
        rec.timestep = timestep;
        rec.head = h;
        rec.query = cross_qkv.query.middleCols(h * hd, hd);
        rec.key = cross_qkv.key.middleCols(h * hd, hd);
        rec.value = cross_qkv.value.middleCols(h * hd, hd);
        rec.map = attention::attention_map(rec.query, rec.key);
        cross_heads.middleCols(h * hd, hd).noalias() = rec.map * rec.value;
        if (hooks.on_record) guarded(timestep, block.cross_layer, [&] { hooks.on_record(std::move(rec)); });
    }
    Matrix h2 = h1;
    h2.noalias() += cross_heads * block.cross_out;
    return h2 * block.output;
}

Latent ToyDenoiser::denoise_step(const Latent& latent, int timestep, const Matrix& embeddings,
                                 const AttentionHooks& hooks) const {
    if (latent.channels != config_.latent_channels || latent.height != config_.latent_size ||
        latent.width != config_.latent_size) {
        throw ShapeError("latent shape does not match the toy backend");
    }
    if (embeddings.cols() != config_.text_dim || embeddings.rows() == 0) {
        throw ShapeError("text embedding must be [n_tokens x " + std::to_string(config_.text_dim) + "]");
    }
    const int size = config_.latent_size;
    const int c = config_.latent_channels;
    Matrix acc = Matrix::Zero(static_cast<Eigen::Index>(size) * size, c);
    for (const Block& block : blocks_) {
        const Matrix y = run_block(block, latent, timestep, embeddings, hooks);
        const int r = block.resolution;
        const int f = size / r;
        for (int py = 0; py < size; ++py)
            for (int px = 0; px < size; ++px) acc.row(py * size + px) += y.row((py / f) * r + px / f);
    }
    Latent next = latent;
    const std::size_t plane = next.plane_size();
    for (int ch = 0; ch < c; ++ch)
        for (std::size_t i = 0; i < plane; ++i)
            next.data[ch * plane + i] += config_.step_size * std::tanh(acc(static_cast<Eigen::Index>(i), ch));
    return next;
}

Image ToyDenoiser::decode(const Latent& latent) const {
    Image small(3, latent.height, latent.width);
    const std::size_t plane = latent.plane_size();
    for (int out = 0; out < 3; ++out) {
        for (std::size_t i = 0; i < plane; ++i) {
            float s = decoder_bias_(out);
            for (int ch = 0; ch < latent.channels; ++ch) s += decoder_(out, ch) * latent.data[ch * plane + i];
            small.data[out * plane + i] = 1.0f / (1.0f + std::exp(-s));
        }
    }
    return resize(small, config_.image_size, config_.image_size, Interpolation::bilinear);
}

std::string ToyDenoiser::weights_digest() const {
    std::string bytes;
    auto add = [&](const Matrix& m) {
        bytes.append(reinterpret_cast<const char*>(m.data()), sizeof(float) * static_cast<std::size_t>(m.size()));
    };
    for (const Block& b : blocks_) {
        for (const Matrix* m : {&b.input, &b.time, &b.self_proj.query.weight, &b.self_proj.key.weight,
                                &b.self_proj.value.weight, &b.self_out, &b.cross_proj.query.weight,
                                &b.cross_proj.key.weight, &b.cross_proj.value.weight, &b.cross_out, &b.output}) {
            add(*m);
        }
    }
    add(decoder_);
    return sha256_hex(bytes);
}

}  // namespace attrgen::diffusion
