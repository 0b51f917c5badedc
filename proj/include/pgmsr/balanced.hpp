/**************************************************************************
 * balanced.hpp
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

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "pgmsr/bibd.hpp"
#include "pgmsr/cluster.hpp"
#include "pgmsr/piggyback.hpp"

namespace pgmsr {

/// b r-piggybacked codes laid side by side. In instance t the nodes of
/// block t hold the r parity payloads and the other k nodes the systematic
/// ones, so every node is parity in exactly e instances and the per-helper
/// repair download is the same for every (failed, helper) pair.
///
/// Physical node payloads are b cells of alpha_instance symbols, cell t
/// holding that node's role in instance t.
template <unsigned W>
class BalancedCode {
public:
    static BalancedCode build(const BibdDesign& design, std::size_t k, std::uint64_t seed,
                              const BuildOptions& options = {})
    {
        const auto rep = validate_bibd(design);
        if (!rep.ok) {
            throw InvalidDesign("balanced code: design is not a BIBD", rep);
        }
        const std::size_t r = design.block_size;
        if (design.n != k + r) {
            throw std::invalid_argument("balanced code: design has " + std::to_string(design.n) +
                                        " points but k + r = " + std::to_string(k + r));
        }
        BalancedCode code;
        code.design_ = design;
        code.e_ = rep.e;
        for (std::size_t t = 0; t < design.b(); ++t) {
            BaseParams p{k, r, seed + t};
            auto base = std::make_shared<const BaseMsrCode<W>>(BaseMsrCode<W>::build(p, options));
            code.instances_.emplace_back(std::move(base), InjectionTable::main_diagonal(r, r));

            // sorted block members take parity roles 0..r-1, the sorted
            // complement takes systematic roles 0..k-1
            std::vector<std::size_t> to_physical(k + r);
            std::vector<bool> in_block(design.n, false);
            for (auto x : design.blocks[t]) {
                in_block[x] = true;
            }
            std::size_t sys = 0;
            std::size_t par = 0;
            for (std::size_t x = 0; x < design.n; ++x) {
                if (in_block[x]) {
                    to_physical[k + par++] = x;
                } else {
                    to_physical[sys++] = x;
                }
            }
            std::vector<std::size_t> to_local(design.n);
            for (std::size_t l = 0; l < k + r; ++l) {
                to_local[to_physical[l]] = l;
            }
            code.to_physical_.push_back(std::move(to_physical));
            code.to_local_.push_back(std::move(to_local));
        }
        return code;
    }

    const BibdDesign& design() const noexcept { return design_; }
    std::size_t b() const noexcept { return instances_.size(); }
    std::size_t e() const noexcept { return e_; }
    std::size_t k() const noexcept { return instances_.front().k(); }
    std::size_t r() const noexcept { return instances_.front().r(); }
    std::size_t n() const noexcept { return design_.n; }
    std::size_t lambda() const noexcept { return design_.lambda; }
    const PiggybackedCode<W>& instance(std::size_t t) const { return instances_.at(t); }

    /// Node size of one r-piggybacked instance.
    std::size_t alpha_instance() const noexcept { return instances_.front().alpha(); }
    std::size_t alpha() const noexcept { return b() * alpha_instance(); }
    std::size_t source_size() const noexcept { return b() * k() * alpha_instance(); }

    /// Local role index of physical node x in instance t: < k systematic.
    std::size_t local_role(std::size_t t, std::size_t x) const { return to_local_.at(t).at(x); }
    bool is_parity_in(std::size_t t, std::size_t x) const { return local_role(t, x) >= k(); }
    const std::vector<std::size_t>& node_map(std::size_t t) const { return to_physical_.at(t); }

    /// source: instance-major, then systematic role, alpha_instance each.
    std::vector<Symbols<W>> encode(std::span<const FieldElement<W>> source) const
    {
        if (source.size() != source_size()) {
            throw std::invalid_argument("balanced encode: source has wrong length");
        }
        const std::size_t ai = alpha_instance();
        std::vector<Symbols<W>> out(n(), Symbols<W>(alpha()));
        for (std::size_t t = 0; t < b(); ++t) {
            std::vector<Symbols<W>> sys(k());
            for (std::size_t i = 0; i < k(); ++i) {
                auto part = source.subspan((t * k() + i) * ai, ai);
                sys[i].assign(part.begin(), part.end());
            }
            auto payloads = instances_[t].encode(sys);
            for (std::size_t l = 0; l < n(); ++l) {
                std::copy(payloads[l].begin(), payloads[l].end(), out[to_physical_[t][l]].begin() + t * ai);
            }
        }
        return out;
    }

    /// Instance by instance with the piggyback strategies; one ledger keyed
    /// by physical helper ids.
    RepairResult<W> repair(std::size_t node, const Cluster<W>& cluster) const
    {
        if (node >= n()) {
            throw std::out_of_range("balanced repair: node out of range");
        }
        RepairResult<W> res{Symbols<W>(alpha()), TransferLedger(node)};
        const std::size_t ai = alpha_instance();
        for (std::size_t t = 0; t < b(); ++t) {
            MeteredReader<W> reader(cluster, res.ledger, t * ai, to_physical_[t]);
            const auto role = local_role(t, node);
            const auto cell = role < k() ? instances_[t].repair_systematic(role, reader)
                                         : instances_[t].repair_parity(role - k(), reader);
            std::copy(cell.begin(), cell.end(), res.payload.begin() + t * ai);
        }
        return res;
    }

    /// lambda alpha_instance + (b - lambda) alpha_instance / r
    std::size_t expected_per_helper_symbols() const noexcept
    {
        return lambda() * alpha_instance() + (b() - lambda()) * alpha_instance() / r();
    }

private:
    BalancedCode() = default;

    BibdDesign design_;
    std::size_t e_ = 0;
    std::vector<PiggybackedCode<W>> instances_;
    std::vector<std::vector<std::size_t>> to_physical_;
    std::vector<std::vector<std::size_t>> to_local_;
};

/// Decoder for a fixed set of k physical nodes.
template <unsigned W>
class BalancedDecoder {
public:
    BalancedDecoder(const BalancedCode<W>& code, std::vector<std::size_t> nodes) : code_(&code), nodes_(std::move(nodes))
    {
        for (std::size_t t = 0; t < code.b(); ++t) {
            std::vector<std::size_t> local;
            for (auto x : nodes_) {
                if (x >= code.n()) {
                    throw std::invalid_argument("balanced decode: node out of range");
                }
                local.push_back(code.local_role(t, x));
            }
            decoders_.emplace_back(code.instance(t), std::move(local));
        }
    }

    /// data[t] is the payload of nodes()[t]; returns the flat source.
    Symbols<W> decode(std::span<const std::span<const FieldElement<W>>> data) const
    {
        const auto& code = *code_;
        const std::size_t ai = code.alpha_instance();
        if (data.size() != nodes_.size()) {
            throw std::invalid_argument("balanced decode: one payload per selected node expected");
        }
        Symbols<W> source(code.source_size());
        std::vector<std::span<const FieldElement<W>>> cells(data.size());
        for (std::size_t t = 0; t < code.b(); ++t) {
            for (std::size_t x = 0; x < data.size(); ++x) {
                if (data[x].size() != code.alpha()) {
                    throw std::invalid_argument("balanced decode: payload has wrong length");
                }
                cells[x] = data[x].subspan(t * ai, ai);
            }
            auto sys = decoders_[t].decode(cells);
            for (std::size_t i = 0; i < code.k(); ++i) {
                std::copy(sys[i].begin(), sys[i].end(), source.begin() + (t * code.k() + i) * ai);
            }
        }
        return source;
    }

    const std::vector<std::size_t>& nodes() const noexcept { return nodes_; }

private:
    const BalancedCode<W>* code_;
    std::vector<std::size_t> nodes_;
    std::vector<PiggybackDecoder<W>> decoders_;
};

} // namespace pgmsr
