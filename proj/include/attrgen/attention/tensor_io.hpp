// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <filesystem>

#include "attrgen/attention/store.hpp"

namespace attrgen::attention {

// Tensor file: 16-byte header {"ATT1", u32 rank, u32 dim0, u32 dim1}, then
// rank-2 little-endian float32 data in row-major order. Rank-1 tensors store
// dim1 = 0.
inline constexpr char kTensorMagic[4] = {'A', 'T', 'T', '1'};

void write_tensor(const std::filesystem::path& path, const Matrix& tensor);
Matrix read_tensor(const std::filesystem::path& path);

/// Writes `index.json` plus one tensor file per record field under `dir`.
void save_store(const AttentionStore& store, const std::filesystem::path& dir, bool include_qkv = true);

/// Reads a directory written by save_store. Records without Q/K/V files
/// come back with empty matrices for those fields.
AttentionStore load_store(const std::filesystem::path& dir, CapturePolicy policy = {});

}  // namespace attrgen::attention
