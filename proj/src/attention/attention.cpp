// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/attention/attention.hpp"

#include <cmath>
#include <cstring>

#include "attrgen/core/errors.hpp"

namespace attrgen::attention {

namespace {

std::string dims(const Matrix& m) {
    return std::to_string(m.rows()) + "x" + std::to_string(m.cols());
}

bool bitwise_equal(const Matrix& a, const Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
    if (a.size() == 0) return true;
    return std::memcmp(a.data(), b.data(), sizeof(float) * static_cast<std::size_t>(a.size())) == 0;
}

}  // namespace

std::string to_string(AttentionKind kind) {
    return kind == AttentionKind::self ? "self" : "cross";
}

AttentionKind kind_from_string(const std::string& s) {
    if (s == "self") return AttentionKind::self;
    if (s == "cross") return AttentionKind::cross;
    throw DomainError("unknown attention kind '" + s + "'");
}

void AttentionRecord::validate(std::optional<int> text_length) const {
    const std::string where = "record " + layer_id.value + " t=" + std::to_string(timestep) + " h=" + std::to_string(head);
    if (resolution <= 0) throw DomainError(where + ": resolution must be positive");
    if (map.rows() == 0 || map.cols() == 0) throw ShapeError(where + ": empty map");
    const Eigen::Index n_spatial = static_cast<Eigen::Index>(resolution) * resolution;
    if (map.rows() != n_spatial) {
        throw ShapeError(where + ": map has " + std::to_string(map.rows()) + " query rows, expected resolution² = " +
                         std::to_string(n_spatial));
    }
    if (kind == AttentionKind::self && map.cols() != n_spatial) {
        throw ShapeError(where + ": self map must be square, got " + dims(map));
    }
    if (kind == AttentionKind::cross && text_length && map.cols() != *text_length) {
        throw ShapeError(where + ": cross map has " + std::to_string(map.cols()) + " keys, text length is " +
                         std::to_string(*text_length));
    }
    const bool has_qkv = query.size() != 0 || key.size() != 0 || value.size() != 0;
    if (has_qkv) {
        if (query.rows() != map.rows()) throw ShapeError(where + ": query " + dims(query) + " vs map " + dims(map));
        if (key.rows() != map.cols()) throw ShapeError(where + ": key " + dims(key) + " vs map " + dims(map));
        if (value.rows() != map.cols()) throw ShapeError(where + ": value " + dims(value) + " vs map " + dims(map));
        if (query.cols() != key.cols()) throw ShapeError(where + ": query " + dims(query) + " vs key " + dims(key));
    }
    if (map.minCoeff() < 0.0f) throw DomainError(where + ": negative map entry");
    const Eigen::VectorXd sums = map.cast<double>().rowwise().sum();
    const double worst = (sums.array() - 1.0).abs().maxCoeff();
    if (!(worst <= kRowSumTolerance)) {
        throw DomainError(where + ": map rows must sum to 1, worst deviation " + std::to_string(worst));
    }
}

bool AttentionRecord::operator==(const AttentionRecord& o) const {
    return layer_id == o.layer_id && kind == o.kind && resolution == o.resolution && timestep == o.timestep &&
           head == o.head && bitwise_equal(query, o.query) && bitwise_equal(key, o.key) &&
           bitwise_equal(value, o.value) && bitwise_equal(map, o.map);
}

void softmax_rows(Matrix& logits) {
    for (Eigen::Index r = 0; r < logits.rows(); ++r) {
        auto row = logits.row(r);
        const float peak = row.maxCoeff();
        row = (row.array() - peak).exp();
        // Four double accumulators: the row sum then stays within ~1e-7 of 1
        // even for 4096-wide rows, where a float reduction drifts.
        const float* p = row.data();
        const Eigen::Index n = row.size();
        double acc[4] = {0.0, 0.0, 0.0, 0.0};
        Eigen::Index i = 0;
        for (; i + 4 <= n; i += 4) {
            acc[0] += p[i];
            acc[1] += p[i + 1];
            acc[2] += p[i + 2];
            acc[3] += p[i + 3];
        }
        for (; i < n; ++i) acc[0] += p[i];
        row *= static_cast<float>(1.0 / ((acc[0] + acc[1]) + (acc[2] + acc[3])));
    }
}

Matrix attention_map(const Matrix& query, const Matrix& key) {
    if (query.cols() != key.cols()) {
        throw ShapeError("query " + dims(query) + " and key " + dims(key) + " disagree on d_k");
    }
    // Scale the thin operand before the product; scaling the n_q x n_k result
    // costs a full extra pass.
    const Matrix scaled = query * static_cast<float>(1.0 / std::sqrt(static_cast<double>(query.cols())));
    Matrix map(query.rows(), key.rows());
    map.noalias() = scaled * key.transpose();
    softmax_rows(map);
    return map;
}

AttentionOutput scaled_dot_attention(const Matrix& query, const Matrix& key, const Matrix& value) {
    if (key.rows() != value.rows()) {
        throw ShapeError("key " + dims(key) + " and value " + dims(value) + " disagree on n_k");
    }
    AttentionOutput out;
    out.map = attention_map(query, key);
    out.output.resize(out.map.rows(), value.cols());
    out.output.noalias() = out.map * value;
    return out;
}

Matrix LinearMap::apply(const Matrix& x) const {
    if (x.cols() != weight.rows()) {
        throw ShapeError("input " + dims(x) + " does not match projection " + dims(weight));
    }
    Matrix out(x.rows(), weight.cols());
    out.noalias() = x * weight;
    return out;
}

QKV project_qkv(AttentionKind kind, const Matrix& spatial_features, const Matrix* text_embedding,
                const Projections& projections) {
    QKV out;
    out.query = projections.query.apply(spatial_features);
    if (kind == AttentionKind::self) {
        out.key = projections.key.apply(spatial_features);
        out.value = projections.value.apply(spatial_features);
        return out;
    }
    if (text_embedding == nullptr) {
        throw MissingConditioning("cross-attention projection requires a text embedding");
    }
    out.key = projections.key.apply(*text_embedding);
    out.value = projections.value.apply(*text_embedding);
    return out;
}

}  // namespace attrgen::attention
