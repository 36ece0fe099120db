// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <algorithm>
#include <vector>

namespace attrgen {

template <class Skip>
std::string sha256_tree(const std::filesystem::path& root, Skip skip) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::recursive_directory_iterator(root)) {
        if (!entry.is_regular_file()) continue;
        auto rel = std::filesystem::relative(entry.path(), root);
        if (skip(rel)) continue;
        files.push_back(rel);
    }
    std::sort(files.begin(), files.end());
    std::string manifest;
    for (const auto& rel : files) {
        manifest += rel.generic_string();
        manifest += '\t';
        manifest += sha256_file(root / rel);
        manifest += '\n';
    }
    return sha256_hex(manifest);
}

}  // namespace attrgen
