/**************************************************************************
 * shard.hpp
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

#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "config.hpp"
#include "pgmsr/gf.hpp"

namespace pgmsr::cli {

enum class Role : std::uint8_t { Systematic = 0, Parity = 1, Mixed = 2 };

constexpr std::uint32_t kFlagSuboptimal = 1u;
constexpr std::uint16_t kShardVersion = 1;

/// Fixed 72-byte little-endian header:
///   magic "PGBK" | version u16 | w u8 | role u8 | node u32 (1-based) |
///   flags u32 | digest[32] | payload symbols u64 | original bytes u64 |
///   stripes u32 | reserved u32
struct ShardHeader {
    std::uint16_t version = kShardVersion;
    std::uint8_t w = 16;
    Role role = Role::Systematic;
    std::uint32_t node = 0;
    std::uint32_t flags = 0;
    Digest digest{};
    std::uint64_t payload_symbols = 0;
    std::uint64_t original_length = 0;
    std::uint32_t stripes = 1;

    friend bool operator==(const ShardHeader&, const ShardHeader&) = default;
};

constexpr std::size_t kHeaderSize = 72;

/// Payload symbols kept as raw integers so one shard type serves both widths.
struct Shard {
    ShardHeader header;
    std::vector<std::uint16_t> payload;
};

std::string serialize(const Shard& s);
Shard deserialize(const std::string& bytes, const std::string& origin = "shard");

Shard read_shard(const std::filesystem::path& path);
void write_shard(const std::filesystem::path& path, const Shard& s);

std::filesystem::path shard_path(const std::filesystem::path& dir, std::size_t node);

template <unsigned W>
std::vector<std::uint16_t> to_raw(const Symbols<W>& v)
{
    std::vector<std::uint16_t> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = static_cast<std::uint16_t>(v[i].value());
    }
    return out;
}

template <unsigned W>
Symbols<W> from_raw(const std::vector<std::uint16_t>& v)
{
    Symbols<W> out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = FieldElement<W>::from_uint(v[i]);
    }
    return out;
}

/// File bytes to symbols: one byte per symbol for w = 8, little-endian
/// byte pairs for w = 16 (an odd tail byte is zero-padded).
std::vector<std::uint16_t> bytes_to_symbols(const std::string& bytes, unsigned w);
std::string symbols_to_bytes(const std::vector<std::uint16_t>& symbols, unsigned w, std::uint64_t length);

} // namespace pgmsr::cli
