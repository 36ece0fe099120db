// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/attention/store.hpp"

#include <Eigen/Dense>

#include "attrgen/core/errors.hpp"

namespace attrgen::attention {

namespace {

std::string describe(int timestep, const LayerId& layer_id, int head) {
    return "(timestep " + std::to_string(timestep) + ", layer " + layer_id.value + ", head " + std::to_string(head) + ")";
}

}  // namespace

bool CapturePolicy::accepts(AttentionKind kind, int resolution, int timestep) const {
    if (kind == AttentionKind::self && !self) return false;
    if (kind == AttentionKind::cross && !cross) return false;
    if (!resolutions.empty() && !resolutions.contains(resolution)) return false;
    if (!timesteps.empty() && !timesteps.contains(timestep)) return false;
    return true;
}

CapturePolicy CapturePolicy::self_only(std::set<int> resolutions) {
    CapturePolicy p;
    p.cross = false;
    p.resolutions = std::move(resolutions);
    return p;
}

CapturePolicy CapturePolicy::none() {
    CapturePolicy p;
    p.self = false;
    p.cross = false;
    return p;
}

bool AttentionStore::record(AttentionRecord record) {
    if (!policy_.accepts(record.kind, record.resolution, record.timestep)) return false;
    record.validate();
    RecordKey key{record.timestep, record.layer_id, record.head};
    if (records_.contains(key)) {
        throw ConflictError("duplicate attention record " + describe(key.timestep, key.layer_id, key.head));
    }
    records_.emplace(std::move(key), std::move(record));
    return true;
}

const AttentionRecord& AttentionStore::fetch(int timestep, const LayerId& layer_id, int head) const {
    auto it = records_.find(RecordKey{timestep, layer_id, head});
    if (it == records_.end()) throw MissError("no attention record " + describe(timestep, layer_id, head));
    return it->second;
}

AttentionRecord AttentionStore::take(int timestep, const LayerId& layer_id, int head) {
    auto it = records_.find(RecordKey{timestep, layer_id, head});
    if (it == records_.end()) throw MissError("no attention record " + describe(timestep, layer_id, head));
    AttentionRecord out = std::move(it->second);
    records_.erase(it);
    return out;
}

bool AttentionStore::contains(int timestep, const LayerId& layer_id, int head) const {
    return records_.contains(RecordKey{timestep, layer_id, head});
}

std::vector<const AttentionRecord*> AttentionStore::select(const LayerId& layer_id) const {
    std::vector<const AttentionRecord*> out;
    for (const auto& [key, rec] : records_)
        if (key.layer_id == layer_id) out.push_back(&rec);
    return out;
}

std::set<LayerId> AttentionStore::layer_ids() const {
    std::set<LayerId> out;
    for (const auto& [key, rec] : records_) out.insert(key.layer_id);
    return out;
}

Matrix mean_map_over_timesteps(const AttentionStore& store, const LayerId& layer_id) {
    const auto selected = store.select(layer_id);
    if (selected.empty()) throw MissError("no attention records for layer " + layer_id.value);
    const Matrix& first = selected.front()->map;
    Eigen::MatrixXd sum = Eigen::MatrixXd::Zero(first.rows(), first.cols());
    for (const AttentionRecord* rec : selected) {
        if (rec->map.rows() != first.rows() || rec->map.cols() != first.cols()) {
            throw ShapeError("layer " + layer_id.value + " has maps of differing shapes");
        }
        sum += rec->map.cast<double>();
    }
    sum /= static_cast<double>(selected.size());
    return sum.cast<float>();
}

}  // namespace attrgen::attention
