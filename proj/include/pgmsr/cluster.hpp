/**************************************************************************
 * cluster.hpp
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

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgmsr/bandwidth.hpp"
#include "pgmsr/gf.hpp"

namespace pgmsr {

class HelperUnavailable : public std::runtime_error {
public:
    explicit HelperUnavailable(std::size_t node)
        : std::runtime_error("helper node " + std::to_string(node + 1) + " is unavailable"), node_(node)
    {}
    std::size_t node() const noexcept { return node_; }

private:
    std::size_t node_;
};

/// Snapshot of node payloads. A failed node has no payload.
template <unsigned W>
class Cluster {
public:
    explicit Cluster(std::vector<Symbols<W>> payloads)
    {
        nodes_.reserve(payloads.size());
        for (auto& p : payloads) {
            nodes_.emplace_back(std::move(p));
        }
    }

    std::size_t size() const noexcept { return nodes_.size(); }
    bool available(std::size_t node) const { return node < nodes_.size() && nodes_[node].has_value(); }

    /// Drops the payload of node; returns what it held.
    Symbols<W> fail(std::size_t node)
    {
        if (!available(node)) {
            throw HelperUnavailable(node);
        }
        Symbols<W> lost = std::move(*nodes_[node]);
        nodes_[node].reset();
        return lost;
    }

    /// Puts a payload back on a failed node.
    void restore(std::size_t node, Symbols<W> payload)
    {
        if (node >= nodes_.size() || nodes_[node].has_value()) {
            throw std::invalid_argument("restore: node " + std::to_string(node + 1) + " has not failed");
        }
        nodes_[node] = std::move(payload);
    }

    std::size_t failed_count() const
    {
        std::size_t n = 0;
        for (const auto& p : nodes_) {
            n += p.has_value() ? 0 : 1;
        }
        return n;
    }

    std::span<const FieldElement<W>> payload(std::size_t node) const
    {
        if (!available(node)) {
            throw HelperUnavailable(node);
        }
        return *nodes_[node];
    }

private:
    std::vector<std::optional<Symbols<W>>> nodes_;
};

/// The only path by which repair code touches helper data. Every read is
/// recorded in the ledger against the physical helper id.
///
/// A reader can be windowed onto one constituent code of a larger layout:
/// `offset` is added to every position and `node_map` translates the
/// constituent's node ids to physical ones.
template <unsigned W>
class MeteredReader {
public:
    MeteredReader(const Cluster<W>& cluster, TransferLedger& ledger, std::size_t offset = 0,
                  std::vector<std::size_t> node_map = {})
        : cluster_(&cluster), ledger_(&ledger), offset_(offset), node_map_(std::move(node_map))
    {}

    std::size_t physical(std::size_t node) const { return node_map_.empty() ? node : node_map_.at(node); }

    Symbols<W> read(std::size_t node, std::size_t start, std::size_t len, Phase phase)
    {
        const auto id = physical(node);
        auto data = cluster_->payload(id);
        if (offset_ + start + len > data.size()) {
            throw std::out_of_range("metered read past the end of a payload");
        }
        ledger_->record(id, len, phase);
        auto src = data.subspan(offset_ + start, len);
        return Symbols<W>(src.begin(), src.end());
    }

    /// Reads data[start + rows[t]] for every t.
    Symbols<W> gather(std::size_t node, std::size_t start, std::span<const std::size_t> rows, Phase phase)
    {
        const auto id = physical(node);
        auto data = cluster_->payload(id);
        Symbols<W> out;
        out.reserve(rows.size());
        for (auto row : rows) {
            const auto pos = offset_ + start + row;
            if (pos >= data.size()) {
                throw std::out_of_range("metered read past the end of a payload");
            }
            out.push_back(data[pos]);
        }
        ledger_->record(id, rows.size(), phase);
        return out;
    }

private:
    const Cluster<W>* cluster_;
    TransferLedger* ledger_;
    std::size_t offset_;
    std::vector<std::size_t> node_map_;
};

template <unsigned W>
struct RepairResult {
    Symbols<W> payload;
    TransferLedger ledger;
};

} // namespace pgmsr
