// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/core/attribute.hpp"

#include "attrgen/core/errors.hpp"

namespace attrgen {

std::string to_string(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::color: return "color";
        case AttributeKind::material: return "material";
        case AttributeKind::custom: return "custom";
    }
    return "custom";
}

AttributeKind attribute_kind_from_string(const std::string& s) {
    if (s == "color") return AttributeKind::color;
    if (s == "material") return AttributeKind::material;
    if (s == "custom") return AttributeKind::custom;
    throw DomainError("unknown attribute kind '" + s + "'");
}

}  // namespace attrgen
