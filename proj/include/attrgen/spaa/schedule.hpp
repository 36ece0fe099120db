// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <set>

#include "attrgen/core/attribute.hpp"

namespace attrgen::spaa {

/// Per-step scaling factor for attribute-token Value rows:
/// ratio(k) = max(initial_ratio - k * decrement_per_step, floor).
struct AmplificationSchedule {
    AttributeKind attribute_kind = AttributeKind::custom;
    double initial_ratio = 1.0;
    double decrement_per_step = 0.0;
    double floor = 1.0;

    /// R = 5, minus 0.1 per step, floored at 1.
    static AmplificationSchedule color();
    /// R = 10, minus 0.2 per step, floored at 1.
    static AmplificationSchedule material();
    static AmplificationSchedule constant(double ratio);
    static AmplificationSchedule for_kind(AttributeKind kind);

    /// DomainError unless floor > 0, initial_ratio >= floor, decrement >= 0.
    void validate() const;
    bool operator==(const AmplificationSchedule&) const = default;
};

/// Step index counts completed denoising steps (0 = first, noisiest step).
/// Decimal-valued parameters are evaluated exactly and rounded once, so
/// e.g. the color schedule returns exactly 1.0 at k = 40.
/// DomainError for a negative step.
double ratio_at(const AmplificationSchedule& schedule, int step_index);

/// First step at which ratio_at hits the floor.
int floor_step(const AmplificationSchedule& schedule);

/// Restricts amplification to some of `total_stages` equal, contiguous
/// slices of the denoising steps.
struct StageMask {
    std::set<int> active;
    int total_stages = 10;

    /// Stage of step k out of `steps`: floor(k * total_stages / steps).
    int stage_of(int step_index, int steps) const;
    bool operator==(const StageMask&) const = default;
};

}  // namespace attrgen::spaa
