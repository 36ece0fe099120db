// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>

namespace attrgen {

enum class AttributeKind { color, material, custom };

std::string to_string(AttributeKind kind);
/// DomainError for unknown names.
AttributeKind attribute_kind_from_string(const std::string& s);

}  // namespace attrgen
