/**************************************************************************
 * engine.hpp
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
#include <memory>
#include <string>
#include <vector>

#include "config.hpp"
#include "pgmsr/bandwidth.hpp"
#include "pgmsr/base_msr.hpp"

namespace pgmsr::cli {

using Raw = std::vector<std::uint16_t>;

/// Width- and mode-erased view of one code, working on one stripe at a time.
class Engine {
public:
    virtual ~Engine() = default;

    virtual std::size_t n() const = 0;
    virtual std::size_t k() const = 0;
    /// Symbols per node per stripe.
    virtual std::size_t alpha() const = 0;
    /// Source symbols per stripe.
    virtual std::size_t source_size() const = 0;
    /// Size of one base-code cell.
    virtual std::size_t alpha_prime() const = 0;
    virtual bool verified() const = 0;

    virtual std::vector<Raw> encode(const Raw& source) const = 0;
    /// ids are 0-based; data[t] belongs to ids[t].
    virtual Raw decode(const std::vector<std::size_t>& ids, const std::vector<Raw>& data) const = 0;
    /// payloads[node] is ignored; every other entry must be present.
    virtual Raw repair(std::size_t node, const std::vector<Raw>& payloads, TransferLedger& ledger) const = 0;
    virtual std::size_t expected_repair(std::size_t node) const = 0;
    /// Every base code passes exhaustive MDS verification.
    virtual MdsReport verify_mds() const = 0;
};

struct EngineOptions {
    bool allow_suboptimal = false;
    bool verify_mds = true;
};

std::unique_ptr<Engine> make_engine(const CodeConfig& c, const EngineOptions& o);

} // namespace pgmsr::cli
