// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <fstream>

#include "attrgen/attention/attention.hpp"
#include "attrgen/attention/store.hpp"
#include "attrgen/attention/tensor_io.hpp"
#include "attrgen/core/errors.hpp"
#include "support.hpp"

using namespace attrgen;
using namespace attrgen::attention;

namespace {

AttentionRecord make_self_record(std::mt19937_64& rng, const std::string& layer, int res, int t, int head) {
    AttentionRecord r;
    r.layer_id = LayerId{layer};
    r.kind = AttentionKind::self;
    r.resolution = res;
    r.timestep = t;
    r.head = head;
    r.query = testing::random_matrix(rng, res * res, 4);
    r.key = testing::random_matrix(rng, res * res, 4);
    r.value = testing::random_matrix(rng, res * res, 3);
    r.map = attention_map(r.query, r.key);
    return r;
}

}  // namespace

TEST_CASE("softmax rows match a scalar oracle and sum to one") {
    std::mt19937_64 rng(11);
    Matrix logits = testing::random_matrix(rng, 37, 91, -20.0f, 20.0f);
    const Matrix original = logits;
    softmax_rows(logits);
    for (int i = 0; i < logits.rows(); ++i) {
        double mx = -INFINITY, sum = 0;
        for (int j = 0; j < logits.cols(); ++j) mx = std::max(mx, double(original(i, j)));
        for (int j = 0; j < logits.cols(); ++j) sum += std::exp(double(original(i, j)) - mx);
        double row = 0;
        for (int j = 0; j < logits.cols(); ++j) {
            const double expect = std::exp(double(original(i, j)) - mx) / sum;
            CHECK(std::abs(logits(i, j) - expect) <= 1e-6 * std::max(1.0, expect));
            row += logits(i, j);
        }
        CHECK(std::abs(row - 1.0) < kRowSumTolerance);
    }
}

TEST_CASE("attention map matches softmax(q k^T / sqrt(d)) oracle") {
    std::mt19937_64 rng(5);
    for (auto [n, m, d] : {std::array{16, 16, 8}, {64, 7, 16}, {256, 256, 32}}) {
        const Matrix q = testing::random_matrix(rng, n, d, -2, 2);
        const Matrix k = testing::random_matrix(rng, m, d, -2, 2);
        const Matrix map = attention_map(q, k);
        const auto oracle = testing::attention_oracle(q, k);
        double worst = 0;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) worst = std::max(worst, std::abs(map(i, j) - oracle[i][j]));
        CHECK(worst < 1e-6);
    }
}

TEST_CASE("scaled dot attention output is map times value") {
    std::mt19937_64 rng(6);
    const Matrix q = testing::random_matrix(rng, 10, 4);
    const Matrix k = testing::random_matrix(rng, 12, 4);
    const Matrix v = testing::random_matrix(rng, 12, 5);
    const auto out = scaled_dot_attention(q, k, v);
    const auto oracle = testing::attention_oracle(q, k);
    for (int i = 0; i < 10; ++i)
        for (int c = 0; c < 5; ++c) {
            double acc = 0;
            for (int j = 0; j < 12; ++j) acc += oracle[i][j] * v(j, c);
            CHECK(out.output(i, c) == doctest::Approx(acc).epsilon(1e-5));
        }
    CHECK_THROWS_AS(scaled_dot_attention(q, testing::random_matrix(rng, 12, 3), v), ShapeError);
    CHECK_THROWS_AS(scaled_dot_attention(q, k, testing::random_matrix(rng, 11, 5)), ShapeError);
}

TEST_CASE("record validation catches broken invariants") {
    std::mt19937_64 rng(8);
    AttentionRecord r = make_self_record(rng, "down8.self", 4, 0, 0);
    CHECK_NOTHROW(r.validate());
    AttentionRecord bad_sum = r;
    bad_sum.map(0, 0) += 0.01f;
    CHECK_THROWS_AS(bad_sum.validate(), DomainError);
    AttentionRecord negative = r;
    negative.map(1, 1) = -negative.map(1, 1);
    CHECK_THROWS(negative.validate());
    AttentionRecord wrong_res = r;
    wrong_res.resolution = 5;
    CHECK_THROWS_AS(wrong_res.validate(), ShapeError);

    AttentionRecord cross;
    cross.layer_id = LayerId{"down8.cross"};
    cross.kind = AttentionKind::cross;
    cross.resolution = 4;
    cross.map = attention_map(testing::random_matrix(rng, 16, 4), testing::random_matrix(rng, 6, 4));
    CHECK_NOTHROW(cross.validate(6));
    CHECK_THROWS_AS(cross.validate(7), ShapeError);
}

TEST_CASE("cross-attention projection requires text conditioning") {
    std::mt19937_64 rng(9);
    Projections p{{testing::random_matrix(rng, 4, 8)}, {testing::random_matrix(rng, 6, 8)},
                  {testing::random_matrix(rng, 6, 8)}};
    const Matrix spatial = testing::random_matrix(rng, 16, 4);
    CHECK_THROWS_AS(project_qkv(AttentionKind::cross, spatial, nullptr, p), MissingConditioning);
    const Matrix text = testing::random_matrix(rng, 5, 6);
    const auto qkv = project_qkv(AttentionKind::cross, spatial, &text, p);
    CHECK(qkv.query.rows() == 16);
    CHECK(qkv.key.rows() == 5);
    CHECK(qkv.value.rows() == 5);
}

TEST_CASE("store keys records and rejects duplicates") {
    std::mt19937_64 rng(10);
    AttentionStore store;
    const auto r = make_self_record(rng, "down8.self", 4, 3, 1);
    CHECK(store.record(r));
    CHECK_THROWS_AS(store.record(r), ConflictError);
    CHECK(store.contains(3, LayerId{"down8.self"}, 1));
    CHECK(store.fetch(3, LayerId{"down8.self"}, 1) == r);
    CHECK_THROWS_AS(store.fetch(4, LayerId{"down8.self"}, 1), MissError);
    const auto taken = store.take(3, LayerId{"down8.self"}, 1);
    CHECK(taken == r);
    CHECK_FALSE(store.contains(3, LayerId{"down8.self"}, 1));

    AttentionStore filtered(CapturePolicy::self_only({8}));
    CHECK_FALSE(filtered.record(make_self_record(rng, "down4.self", 4, 0, 0)));
    CHECK(filtered.empty());
}

TEST_CASE("mean map over timesteps averages every record of the layer") {
    std::mt19937_64 rng(12);
    AttentionStore store;
    std::vector<AttentionRecord> recs;
    for (int t = 0; t < 3; ++t)
        for (int h = 0; h < 2; ++h) {
            recs.push_back(make_self_record(rng, "mid8.self", 3, t, h));
            store.record(recs.back());
        }
    store.record(make_self_record(rng, "other.self", 3, 0, 0));
    const Matrix mean = mean_map_over_timesteps(store, LayerId{"mid8.self"});
    for (int i = 0; i < 9; ++i)
        for (int j = 0; j < 9; ++j) {
            double acc = 0;
            for (const auto& r : recs) acc += r.map(i, j);
            CHECK(mean(i, j) == doctest::Approx(acc / recs.size()).epsilon(1e-6));
        }
    CHECK_THROWS_AS(mean_map_over_timesteps(store, LayerId{"nope"}), MissError);
}

TEST_CASE("tensor files and stores round trip bitwise") {
    testing::TempDir dir("tensors");
    std::mt19937_64 rng(13);
    const Matrix m = testing::random_matrix(rng, 7, 9);
    write_tensor(dir.path() / "m.att", m);
    const Matrix back = read_tensor(dir.path() / "m.att");
    CHECK(back.rows() == 7);
    CHECK(back.cols() == 9);
    CHECK(back == m);

    AttentionStore store;
    for (int t = 0; t < 2; ++t) store.record(make_self_record(rng, "up4.self", 4, t, 0));
    save_store(store, dir.path() / "store");
    const auto loaded = load_store(dir.path() / "store");
    REQUIRE(loaded.size() == store.size());
    for (const auto& [key, rec] : store.records()) CHECK(loaded.fetch(key.timestep, key.layer_id, key.head) == rec);

    save_store(store, dir.path() / "maps_only", false);
    const auto maps_only = load_store(dir.path() / "maps_only");
    for (const auto& [key, rec] : maps_only.records()) {
        CHECK(rec.map == store.fetch(key.timestep, key.layer_id, key.head).map);
        CHECK(rec.query.size() == 0);
    }

    std::ofstream(dir.path() / "junk.att") << "nope";
    CHECK_THROWS_AS(read_tensor(dir.path() / "junk.att"), IoError);
}
