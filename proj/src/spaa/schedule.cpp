// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/spaa/schedule.hpp"

#include <cmath>
#include <cstdint>
#include <optional>

#include "attrgen/core/errors.hpp"

namespace attrgen::spaa {

AmplificationSchedule AmplificationSchedule::color() {
    return {AttributeKind::color, 5.0, 0.1, 1.0};
}

AmplificationSchedule AmplificationSchedule::material() {
    return {AttributeKind::material, 10.0, 0.2, 1.0};
}

AmplificationSchedule AmplificationSchedule::constant(double ratio) {
    return {AttributeKind::custom, ratio, 0.0, std::min(ratio, 1.0)};
}

AmplificationSchedule AmplificationSchedule::for_kind(AttributeKind kind) {
    switch (kind) {
        case AttributeKind::color: return color();
        case AttributeKind::material: return material();
        case AttributeKind::custom: break;
    }
    return constant(1.0);
}

void AmplificationSchedule::validate() const {
    if (!(floor > 0.0)) throw DomainError("schedule floor must be positive");
    if (!(initial_ratio >= floor)) throw DomainError("schedule initial ratio must be >= floor");
    if (!(decrement_per_step >= 0.0)) throw DomainError("schedule decrement must be nonnegative");
}

namespace {

// x == num / 10^places exactly in decimal, for "short" decimals like 0.1.
struct Decimal {
    std::int64_t num;
    int places;
};

std::optional<Decimal> as_decimal(double x) {
    double scale = 1.0;
    for (int p = 0; p <= 9; ++p, scale *= 10.0) {
        const double scaled = x * scale;
        if (std::abs(scaled) > 9.0e15) return std::nullopt;
        const double rounded = std::nearbyint(scaled);
        if (std::abs(scaled - rounded) <= 1e-9 * std::max(1.0, std::abs(scaled))) {
            return Decimal{static_cast<std::int64_t>(rounded), p};
        }
    }
    return std::nullopt;
}

std::int64_t pow10(int p) {
    std::int64_t v = 1;
    while (p-- > 0) v *= 10;
    return v;
}

}  // namespace

double ratio_at(const AmplificationSchedule& s, int step_index) {
    if (step_index < 0) throw DomainError("step index must be >= 0, got " + std::to_string(step_index));
    const auto r = as_decimal(s.initial_ratio);
    const auto d = as_decimal(s.decrement_per_step);
    const auto f = as_decimal(s.floor);
    if (r && d && f) {
        const int places = std::max({r->places, d->places, f->places});
        const std::int64_t denom = pow10(places);
        const std::int64_t ri = r->num * pow10(places - r->places);
        const std::int64_t di = d->num * pow10(places - d->places);
        const std::int64_t fi = f->num * pow10(places - f->places);
        if (di == 0) return static_cast<double>(std::max(ri, fi)) / static_cast<double>(denom);
        if (static_cast<std::int64_t>(step_index) >= (ri - fi) / di + 1) return s.floor;
        const std::int64_t v = std::max(ri - static_cast<std::int64_t>(step_index) * di, fi);
        return static_cast<double>(v) / static_cast<double>(denom);
    }
    return std::max(s.initial_ratio - step_index * s.decrement_per_step, s.floor);
}

int floor_step(const AmplificationSchedule& s) {
    if (s.initial_ratio <= s.floor) return 0;
    if (s.decrement_per_step <= 0.0) throw DomainError("schedule never reaches its floor");
    int k = static_cast<int>(std::floor((s.initial_ratio - s.floor) / s.decrement_per_step));
    k = std::max(k - 1, 0);
    while (ratio_at(s, k) > s.floor) ++k;
    return k;
}

int StageMask::stage_of(int step_index, int steps) const {
    if (steps <= 0) throw DomainError("steps must be positive");
    return static_cast<int>(static_cast<std::int64_t>(step_index) * total_stages / steps);
}

}  // namespace attrgen::spaa
