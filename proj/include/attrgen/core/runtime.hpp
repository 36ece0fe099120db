// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

namespace attrgen {

/// Keeps large buffers (64 MB attention maps) on the reusable heap instead of
/// fresh mmap regions, which otherwise get page-faulted in on every step.
/// Process-wide; call once from main(). No-op outside glibc.
void tune_allocator();

}  // namespace attrgen
