/**************************************************************************
 * commands.hpp
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
#include <functional>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace pgmsr::cli {

enum ExitCode : int { kOk = 0, kMismatch = 1, kUsage = 2 };

struct Io {
    std::ostream& out;
    std::ostream& err;
};

struct EncodeArgs {
    std::filesystem::path config;
    std::filesystem::path input;
    std::filesystem::path out_dir;
    bool allow_suboptimal = false;
};

struct ReconstructArgs {
    std::filesystem::path config;
    std::filesystem::path shards;
    std::vector<std::size_t> nodes;  // 1-based; empty means the first k present
    std::filesystem::path out;
    bool allow_suboptimal = false;
};

struct RepairArgs {
    std::filesystem::path config;
    std::filesystem::path shards;
    std::size_t node = 0;  // 1-based
    std::optional<std::filesystem::path> ledger;
    bool allow_suboptimal = false;
};

struct VerifyArgs {
    std::filesystem::path config;
    bool allow_suboptimal = false;
    /// Exhaustive checks run only when r^k stays at or below this.
    std::size_t max_alpha = 4096;
};

struct BenchArgs {
    std::string grid;  // e.g. "k=4,8;r=2;s=2"
    std::optional<std::filesystem::path> out;
    unsigned w = 16;
    /// Rows with r^k above this are reported analytically only.
    std::size_t max_alpha = std::size_t{1} << 18;
};

struct BibdArgs {
    std::optional<std::filesystem::path> validate;
    std::optional<std::string> preset;
    std::optional<std::filesystem::path> emit;
};

struct BandwidthArgs {
    std::int64_t k = 0;
    std::int64_t r = 0;
    std::optional<std::int64_t> s;
};

int cmd_encode(const EncodeArgs& a, Io io);
int cmd_reconstruct(const ReconstructArgs& a, Io io);
int cmd_repair(const RepairArgs& a, Io io);
int cmd_verify(const VerifyArgs& a, Io io);
int cmd_bench(const BenchArgs& a, Io io);
int cmd_bibd(const BibdArgs& a, Io io);
int cmd_bandwidth(const BandwidthArgs& a, Io io);

/// Runs a command, mapping operator errors to exit code 2.
int guarded(const std::function<int()>& f, Io io);

} // namespace pgmsr::cli
