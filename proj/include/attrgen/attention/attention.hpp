// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <compare>
#include <optional>
#include <string>

#include "attrgen/core/tensor.hpp"

namespace attrgen::attention {

enum class AttentionKind { self, cross };

std::string to_string(AttentionKind kind);
AttentionKind kind_from_string(const std::string& s);

struct LayerId {
    std::string value;
    auto operator<=>(const LayerId&) const = default;
};

/// One attention computation for a single head, with the map it produced.
struct AttentionRecord {
    LayerId layer_id;
    AttentionKind kind = AttentionKind::self;
    int resolution = 0;  // spatial side; self maps are resolution² square
    int timestep = 0;    // denoising step index, 0 = noisiest
    int head = 0;
    Matrix query;  // [n_q x d_k]
    Matrix key;    // [n_k x d_k]
    Matrix value;  // [n_k x d_v]
    Matrix map;    // [n_q x n_k], row-stochastic

    /// Throws ShapeError / DomainError when an invariant is broken.
    /// `text_length`, if given, is checked against n_k for cross records.
    void validate(std::optional<int> text_length = std::nullopt) const;

    /// Bitwise equality of metadata and all four tensors.
    bool operator==(const AttentionRecord& other) const;
};

/// Tolerance on row sums of an attention map (32-bit storage).
inline constexpr double kRowSumTolerance = 1e-6;

struct AttentionOutput {
    Matrix output;
    Matrix map;
};

/// Max-subtracted softmax over each row, in place. Row sums accumulate in double.
void softmax_rows(Matrix& logits);

/// map = softmax(Q Kᵀ / sqrt(d_k)), output = map V.
AttentionOutput scaled_dot_attention(const Matrix& query, const Matrix& key, const Matrix& value);

/// Computes only the map; the output can then be formed after the map is
/// inspected or replaced.
Matrix attention_map(const Matrix& query, const Matrix& key);

/// Right-multiplied weights: f(x) = x · weight, weight is [d_in x d_out].
struct LinearMap {
    Matrix weight;
    Matrix apply(const Matrix& x) const;
};

struct Projections {
    LinearMap query;
    LinearMap key;
    LinearMap value;
};

struct QKV {
    Matrix query;
    Matrix key;
    Matrix value;
};

/// Self: all three projections read `spatial_features`. Cross: key and value
/// read `text_embedding`, which must then be present (MissingConditioning).
QKV project_qkv(AttentionKind kind, const Matrix& spatial_features, const Matrix* text_embedding,
                const Projections& projections);

}  // namespace attrgen::attention
