// Copyright (C) 2026 attrgen contributors
// SPDX-License-Identifier: Apache-2.0

#include "attrgen/attention/tensor_io.hpp"

#include <array>
#include <bit>
#include <cstring>
#include <fstream>

#include <json.hpp>

#include "attrgen/core/errors.hpp"

namespace attrgen::attention {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::array<char, 4> b{static_cast<char>(v & 0xff), static_cast<char>((v >> 8) & 0xff),
                                static_cast<char>((v >> 16) & 0xff), static_cast<char>((v >> 24) & 0xff)};
    out.write(b.data(), 4);
}

std::uint32_t get_u32(const unsigned char* p) {
    return static_cast<std::uint32_t>(p[0]) | (static_cast<std::uint32_t>(p[1]) << 8) |
           (static_cast<std::uint32_t>(p[2]) << 16) | (static_cast<std::uint32_t>(p[3]) << 24);
}

std::string record_stem(const AttentionRecord& r) {
    std::string layer = r.layer_id.value;
    for (char& c : layer)
        if (!std::isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_') c = '_';
    return "t" + std::to_string(r.timestep) + "_" + layer + "_h" + std::to_string(r.head);
}

}  // namespace

void write_tensor(const fs::path& path, const Matrix& tensor) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(kTensorMagic, 4);
    put_u32(out, 2);
    put_u32(out, static_cast<std::uint32_t>(tensor.rows()));
    put_u32(out, static_cast<std::uint32_t>(tensor.cols()));
    const auto n = static_cast<std::size_t>(tensor.size());
    if constexpr (std::endian::native == std::endian::little) {
        out.write(reinterpret_cast<const char*>(tensor.data()), static_cast<std::streamsize>(n * sizeof(float)));
    } else {
        for (std::size_t i = 0; i < n; ++i) put_u32(out, std::bit_cast<std::uint32_t>(tensor.data()[i]));
    }
    if (!out) throw IoError("short write to " + path.string());
}

Matrix read_tensor(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    std::array<unsigned char, 16> header{};
    in.read(reinterpret_cast<char*>(header.data()), 16);
    if (in.gcount() != 16 || std::memcmp(header.data(), kTensorMagic, 4) != 0) {
        throw IoError(path.string() + " is not an ATT1 tensor file");
    }
    const std::uint32_t rank = get_u32(header.data() + 4);
    std::uint32_t rows = get_u32(header.data() + 8);
    std::uint32_t cols = get_u32(header.data() + 12);
    if (rank == 1) {
        cols = rows;
        rows = 1;
    } else if (rank != 2) {
        throw IoError(path.string() + ": unsupported rank " + std::to_string(rank));
    }
    Matrix out(rows, cols);
    const auto n = static_cast<std::size_t>(out.size());
    std::vector<unsigned char> raw(n * 4);
    in.read(reinterpret_cast<char*>(raw.data()), static_cast<std::streamsize>(raw.size()));
    if (static_cast<std::size_t>(in.gcount()) != raw.size()) throw IoError(path.string() + ": truncated tensor data");
    for (std::size_t i = 0; i < n; ++i) out.data()[i] = std::bit_cast<float>(get_u32(raw.data() + 4 * i));
    return out;
}

void save_store(const AttentionStore& store, const fs::path& dir, bool include_qkv) {
    fs::create_directories(dir);
    json index;
    index["format"] = "ATT1";
    index["records"] = json::array();
    for (const auto& [key, rec] : store.records()) {
        const std::string stem = record_stem(rec);
        json entry{{"timestep", rec.timestep},
                   {"layer_id", rec.layer_id.value},
                   {"head", rec.head},
                   {"kind", to_string(rec.kind)},
                   {"resolution", rec.resolution}};
        json files;
        files["map"] = stem + ".map.att";
        write_tensor(dir / files["map"].get<std::string>(), rec.map);
        if (include_qkv) {
            for (const auto& [name, m] : {std::pair{"query", &rec.query}, {"key", &rec.key}, {"value", &rec.value}}) {
                files[name] = stem + "." + name + ".att";
                write_tensor(dir / files[name].get<std::string>(), *m);
            }
        }
        entry["files"] = files;
        index["records"].push_back(entry);
    }
    std::ofstream out(dir / "index.json", std::ios::trunc);
    if (!out) throw IoError("cannot write " + (dir / "index.json").string());
    out << index.dump(2) << '\n';
}

AttentionStore load_store(const fs::path& dir, CapturePolicy policy) {
    std::ifstream in(dir / "index.json");
    if (!in) throw IoError("no index.json in " + dir.string());
    json index;
    try {
        index = json::parse(in);
    } catch (const json::exception& e) {
        throw IoError("malformed index.json in " + dir.string() + ": " + e.what());
    }
    AttentionStore store(std::move(policy));
    for (const auto& entry : index.at("records")) {
        const AttentionKind kind = kind_from_string(entry.at("kind").get<std::string>());
        const int resolution = entry.at("resolution").get<int>();
        const int timestep = entry.at("timestep").get<int>();
        if (!store.policy().accepts(kind, resolution, timestep)) continue;
        AttentionRecord rec;
        rec.layer_id = LayerId{entry.at("layer_id").get<std::string>()};
        rec.kind = kind;
        rec.resolution = resolution;
        rec.timestep = timestep;
        rec.head = entry.at("head").get<int>();
        const auto& files = entry.at("files");
        rec.map = read_tensor(dir / files.at("map").get<std::string>());
        if (files.contains("query")) rec.query = read_tensor(dir / files.at("query").get<std::string>());
        if (files.contains("key")) rec.key = read_tensor(dir / files.at("key").get<std::string>());
        if (files.contains("value")) rec.value = read_tensor(dir / files.at("value").get<std::string>());
        store.record(std::move(rec));
    }
    return store;
}

}  // namespace attrgen::attention
