/**************************************************************************
 * config.hpp
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

#include <array>
#include <cstdint>
#include <filesystem>
#include <stdexcept>
#include <string>

#include "json.hpp"

#include "pgmsr/bibd.hpp"
#include "pgmsr/injection.hpp"

namespace pgmsr::cli {

/// Bad input from the operator: config, arguments, files. Maps to exit 2.
class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { Piggyback, Balanced };

/// Fully resolved code description. Named injections and design presets
/// are expanded so that equivalent configs share one digest.
struct CodeConfig {
    Mode mode = Mode::Piggyback;
    std::size_t k = 0;
    std::size_t r = 0;
    std::size_t s = 0;
    unsigned w = 16;
    std::uint64_t seed = 1;
    InjectionTable injection;
    BibdDesign bibd;  // balanced mode only

    std::size_t n() const noexcept { return k + r; }
};

/// Parses and range-checks a config object. The injection table is not
/// validated here; callers decide how strict to be.
CodeConfig parse_config(const nlohmann::json& j);
CodeConfig load_config(const std::filesystem::path& path);

/// Canonical form: resolved fields only, keys sorted, 1-based indices.
nlohmann::json to_json(const CodeConfig& c);
std::string canonical_text(const CodeConfig& c);

using Digest = std::array<std::uint8_t, 32>;
Digest sha256(const std::string& bytes);
Digest config_digest(const CodeConfig& c);
std::string to_hex(const Digest& d);

/// BIBD files: {n, r, lambda, blocks} with 1-based points.
BibdDesign parse_bibd(const nlohmann::json& j);
nlohmann::json bibd_to_json(const BibdDesign& d);

nlohmann::json read_json_file(const std::filesystem::path& path);

/// Writes to a sibling temporary file, then renames over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& bytes);

} // namespace pgmsr::cli
