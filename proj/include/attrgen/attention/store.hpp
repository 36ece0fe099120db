// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <map>
#include <set>
#include <vector>

#include "attrgen/attention/attention.hpp"

namespace attrgen::attention {

/// Which records a store keeps. Empty resolution / timestep sets mean "all".
struct CapturePolicy {
    bool self = true;
    bool cross = true;
    std::set<int> resolutions;
    std::set<int> timesteps;

    bool accepts(AttentionKind kind, int resolution, int timestep) const;

    static CapturePolicy self_only(std::set<int> resolutions = {});
    static CapturePolicy none();
};

struct RecordKey {
    int timestep = 0;
    LayerId layer_id;
    int head = 0;
    auto operator<=>(const RecordKey&) const = default;
};

/// Attention records keyed by (timestep, layer, head). Single writer during
/// a run; concurrent reads are fine once writing stops.
class AttentionStore {
public:
    explicit AttentionStore(CapturePolicy policy = {}) : policy_(std::move(policy)) {}

    /// Validates and keeps the record if the policy accepts it. Returns
    /// whether it was kept. Throws ConflictError if the key is taken.
    bool record(AttentionRecord record);

    /// Throws MissError for absent keys.
    const AttentionRecord& fetch(int timestep, const LayerId& layer_id, int head) const;
    /// Removes and returns; MissError if absent.
    AttentionRecord take(int timestep, const LayerId& layer_id, int head);
    bool contains(int timestep, const LayerId& layer_id, int head) const;

    std::vector<const AttentionRecord*> select(const LayerId& layer_id) const;
    std::set<LayerId> layer_ids() const;

    const std::map<RecordKey, AttentionRecord>& records() const { return records_; }
    const CapturePolicy& policy() const { return policy_; }
    std::size_t size() const { return records_.size(); }
    bool empty() const { return records_.empty(); }
    void clear() { records_.clear(); }

private:
    CapturePolicy policy_;
    std::map<RecordKey, AttentionRecord> records_;
};

/// Elementwise mean of a layer's maps over every retained timestep and head.
/// MissError if the layer has no records.
Matrix mean_map_over_timesteps(const AttentionStore& store, const LayerId& layer_id);

}  // namespace attrgen::attention
