// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace attrgen {

std::uint64_t fnv1a64(std::string_view bytes, std::uint64_t seed = 0xcbf29ce484222325ULL);

std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const std::filesystem::path& path);

/// Digest over every regular file below `root` (relative path + content),
/// visiting paths in sorted order. Paths for which `skip` returns true are ignored.
template <class Skip>
std::string sha256_tree(const std::filesystem::path& root, Skip skip);

std::string sha256_tree(const std::filesystem::path& root);

}  // namespace attrgen

#include "attrgen/core/hashing_impl.hpp"
