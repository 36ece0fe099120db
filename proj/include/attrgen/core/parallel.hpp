// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <functional>

namespace attrgen {

/// Calls fn(i) for i in [0, n) on at most `workers` threads (the calling
/// thread included). The first exception thrown stops further dispatch and
/// is rethrown once every worker has returned.
void parallel_for(std::size_t n, int workers, const std::function<void(std::size_t)>& fn);

}  // namespace attrgen
