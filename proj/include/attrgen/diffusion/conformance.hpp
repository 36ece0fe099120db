// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "attrgen/diffusion/backend.hpp"

namespace attrgen::diffusion {

/// Contract checks any backend (toy or adapter) must pass: determinism of
/// encode/init/step/decode, stable layer enumeration, and exact hook counts.
/// Returns human-readable failures; empty means conformant.
std::vector<std::string> check_backend_conformance(const DiffusionBackend& backend, std::string_view prompt,
                                                   std::uint64_t seed);

}  // namespace attrgen::diffusion
