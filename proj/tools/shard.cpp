/**************************************************************************
 * shard.cpp
 *
 * Copyright 2026 The pgmsr Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 **************************************************************************/

#include "shard.hpp"

#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>

namespace pgmsr::cli {

namespace {

template <typename T>
void put(std::string& out, T v)
{
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        out.push_back(static_cast<char>((static_cast<std::uint64_t>(v) >> (8 * i)) & 0xFF));
    }
}

template <typename T>
T get(const std::string& in, std::size_t& pos)
{
    std::uint64_t v = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) {
        v |= static_cast<std::uint64_t>(static_cast<unsigned char>(in[pos + i])) << (8 * i);
    }
    pos += sizeof(T);
    return static_cast<T>(v);
}

} // namespace

std::string serialize(const Shard& s)
{
    const auto& h = s.header;
    const std::size_t width = h.w / 8;
    if (s.payload.size() != h.payload_symbols) {
        throw std::logic_error("shard: payload length disagrees with header");
    }
    std::string out;
    out.reserve(kHeaderSize + width * s.payload.size());
    out.append("PGBK", 4);
    put<std::uint16_t>(out, h.version);
    put<std::uint8_t>(out, h.w);
    put<std::uint8_t>(out, static_cast<std::uint8_t>(h.role));
    put<std::uint32_t>(out, h.node);
    put<std::uint32_t>(out, h.flags);
    out.append(reinterpret_cast<const char*>(h.digest.data()), h.digest.size());
    put<std::uint64_t>(out, h.payload_symbols);
    put<std::uint64_t>(out, h.original_length);
    put<std::uint32_t>(out, h.stripes);
    put<std::uint32_t>(out, 0);
    for (auto x : s.payload) {
        if (width == 1) {
            put<std::uint8_t>(out, static_cast<std::uint8_t>(x));
        } else {
            put<std::uint16_t>(out, x);
        }
    }
    return out;
}

Shard deserialize(const std::string& bytes, const std::string& origin)
{
    if (bytes.size() < kHeaderSize || bytes.compare(0, 4, "PGBK") != 0) {
        throw UsageError(origin + ": not a shard file");
    }
    Shard s;
    auto& h = s.header;
    std::size_t pos = 4;
    h.version = get<std::uint16_t>(bytes, pos);
    if (h.version != kShardVersion) {
        throw UsageError(origin + ": unsupported shard version " + std::to_string(h.version));
    }
    h.w = get<std::uint8_t>(bytes, pos);
    if (h.w != 8 && h.w != 16) {
        throw UsageError(origin + ": bad symbol width");
    }
    const auto role = get<std::uint8_t>(bytes, pos);
    if (role > 2) {
        throw UsageError(origin + ": bad role");
    }
    h.role = static_cast<Role>(role);
    h.node = get<std::uint32_t>(bytes, pos);
    h.flags = get<std::uint32_t>(bytes, pos);
    std::memcpy(h.digest.data(), bytes.data() + pos, h.digest.size());
    pos += h.digest.size();
    h.payload_symbols = get<std::uint64_t>(bytes, pos);
    h.original_length = get<std::uint64_t>(bytes, pos);
    h.stripes = get<std::uint32_t>(bytes, pos);
    pos += 4;
    const std::size_t width = h.w / 8;
    if (bytes.size() != kHeaderSize + width * h.payload_symbols) {
        throw UsageError(origin + ": payload length disagrees with header");
    }
    s.payload.resize(h.payload_symbols);
    for (auto& x : s.payload) {
        x = width == 1 ? get<std::uint8_t>(bytes, pos) : get<std::uint16_t>(bytes, pos);
    }
    return s;
}

Shard read_shard(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw UsageError("cannot open " + path.string());
    }
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    return deserialize(bytes, path.string());
}

void write_shard(const std::filesystem::path& path, const Shard& s)
{
    write_file_atomic(path, serialize(s));
}

std::filesystem::path shard_path(const std::filesystem::path& dir, std::size_t node)
{
    char name[32];
    std::snprintf(name, sizeof name, "node-%02zu.pgbk", node + 1);
    return dir / name;
}

std::vector<std::uint16_t> bytes_to_symbols(const std::string& bytes, unsigned w)
{
    std::vector<std::uint16_t> out;
    if (w == 8) {
        out.reserve(bytes.size());
        for (unsigned char c : bytes) {
            out.push_back(c);
        }
        return out;
    }
    out.reserve((bytes.size() + 1) / 2);
    for (std::size_t i = 0; i < bytes.size(); i += 2) {
        const auto lo = static_cast<unsigned char>(bytes[i]);
        const auto hi = i + 1 < bytes.size() ? static_cast<unsigned char>(bytes[i + 1]) : 0u;
        out.push_back(static_cast<std::uint16_t>(lo | (hi << 8)));
    }
    return out;
}

std::string symbols_to_bytes(const std::vector<std::uint16_t>& symbols, unsigned w, std::uint64_t length)
{
    std::string out;
    out.reserve(symbols.size() * (w / 8));
    for (auto x : symbols) {
        out.push_back(static_cast<char>(x & 0xFF));
        if (w == 16) {
            out.push_back(static_cast<char>(x >> 8));
        }
    }
    if (out.size() < length) {
        throw UsageError("decoded data shorter than the recorded file length");
    }
    out.resize(length);
    return out;
}

} // namespace pgmsr::cli
