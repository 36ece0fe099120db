// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#define DOCTEST_CONFIG_IMPLEMENT
#include <doctest.h>
#include <spdlog/spdlog.h>

#include "attrgen/core/runtime.hpp"

int main(int argc, char** argv) {
    attrgen::tune_allocator();
    spdlog::set_level(spdlog::level::err);
    doctest::Context context(argc, argv);
    return context.run();
}
