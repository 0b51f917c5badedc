/**************************************************************************
 * piggyback.hpp
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
#include <map>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "pgmsr/bandwidth.hpp"
#include "pgmsr/base_msr.hpp"
#include "pgmsr/cluster.hpp"
#include "pgmsr/gf.hpp"
#include "pgmsr/injection.hpp"

namespace pgmsr {

struct PiggybackOptions {
    /// Accept valid tables whose supports are uneven. Such codes decode and
    /// repair correctly but do not minimize parity repair bandwidth.
    bool allow_suboptimal = false;
};

/// s instances of a base code where the last instance's parity cell i also
/// carries P_i, the sum of the earlier-instance parity cells in support S_i.
///
/// Node payloads are s cells of alpha' symbols, cell j holding instance j.
template <unsigned W>
class PiggybackedCode {
public:
    PiggybackedCode(std::shared_ptr<const BaseMsrCode<W>> base, InjectionTable table,
                    const PiggybackOptions& options = {})
        : base_(std::move(base)), table_(std::move(table))
    {
        if (!base_) {
            throw std::invalid_argument("piggyback: base code required");
        }
        if (table_.r() != base_->r()) {
            throw std::invalid_argument("piggyback: injection table has " + std::to_string(table_.r()) +
                                        " rows, base code has r = " + std::to_string(base_->r()));
        }
        const auto report = validate_injection(table_);
        if (!report.valid()) {
            throw std::invalid_argument("piggyback: injection table is not valid");
        }
        if (!report.optimal() && !options.allow_suboptimal) {
            throw std::invalid_argument("piggyback: injection table is not optimal");
        }
        optimal_ = report.optimal();
        supports_ = piggyback_supports(table_);
    }

    static PiggybackedCode build(const BaseParams& params, std::size_t s, const BuildOptions& build = {})
    {
        auto base = std::make_shared<const BaseMsrCode<W>>(BaseMsrCode<W>::build(params, build));
        return PiggybackedCode(std::move(base), InjectionTable::main_diagonal(params.r, s));
    }

    const BaseMsrCode<W>& base() const noexcept { return *base_; }
    std::shared_ptr<const BaseMsrCode<W>> base_ptr() const noexcept { return base_; }
    const InjectionTable& table() const noexcept { return table_; }
    const std::vector<PiggybackSupport>& supports() const noexcept { return supports_; }
    bool optimal() const noexcept { return optimal_; }

    std::size_t k() const noexcept { return base_->k(); }
    std::size_t r() const noexcept { return base_->r(); }
    std::size_t n() const noexcept { return base_->n(); }
    std::size_t s() const noexcept { return table_.s(); }
    std::size_t alpha_prime() const noexcept { return base_->alpha_prime(); }
    std::size_t alpha() const noexcept { return s() * alpha_prime(); }
    /// Source symbols per codeword, k * alpha.
    std::size_t source_size() const noexcept { return k() * alpha(); }

    /// source[i] is the payload of systematic node i (alpha symbols).
    /// Returns all n payloads.
    std::vector<Symbols<W>> encode(std::span<const Symbols<W>> source) const
    {
        if (source.size() != k()) {
            throw std::invalid_argument("piggyback encode: expected k source payloads");
        }
        for (const auto& f : source) {
            if (f.size() != alpha()) {
                throw std::invalid_argument("piggyback encode: source payload has wrong length");
            }
        }
        const std::size_t a = alpha_prime();
        std::vector<Symbols<W>> out(source.begin(), source.end());
        out.resize(n(), Symbols<W>(alpha()));
        // parities[j][l]: plain parity l of instance j
        std::vector<std::vector<Symbols<W>>> parities(s());
        for (std::size_t j = 0; j < s(); ++j) {
            parities[j] = base_->encode_views(instance_views(source, j));
        }
        for (std::size_t l = 0; l < r(); ++l) {
            auto& node = out[k() + l];
            for (std::size_t j = 0; j < s(); ++j) {
                std::copy(parities[j][l].begin(), parities[j][l].end(), node.begin() + j * a);
            }
            auto last = std::span(node).subspan((s() - 1) * a, a);
            for (auto [i, j] : supports_[l].members) {
                add_into<W>(last, parities[j][i]);
            }
        }
        return out;
    }

    /// Strategy for a systematic failure: S_i rows of every cell of every
    /// helper, piggybacks cancelled from the last instance, then base repair
    /// per instance.
    Symbols<W> repair_systematic(std::size_t i, MeteredReader<W>& reader) const
    {
        if (i >= k()) {
            throw std::out_of_range("piggyback repair: node is not systematic");
        }
        const std::size_t a = alpha_prime();
        const auto sel = base_->repair_selector(i);
        // slices[j][node]
        std::vector<std::vector<Symbols<W>>> slices(s(), std::vector<Symbols<W>>(n()));
        for (std::size_t node = 0; node < n(); ++node) {
            if (node == i) {
                continue;
            }
            for (std::size_t j = 0; j < s(); ++j) {
                slices[j][node] = reader.gather(node, j * a, sel.rows, Phase::SelectorRows);
            }
        }
        auto& last = slices[s() - 1];
        for (std::size_t l = 0; l < r(); ++l) {
            for (auto [pi, pj] : supports_[l].members) {
                add_into<W>(last[k() + l], slices[pj][k() + pi]);
            }
        }
        Symbols<W> out(alpha());
        for (std::size_t j = 0; j < s(); ++j) {
            auto cell = base_->repair_systematic(i, slices[j]);
            std::copy(cell.begin(), cell.end(), out.begin() + j * a);
        }
        return out;
    }

    /// Strategy for a failure of parity node k+i (i in [0, r)).
    Symbols<W> repair_parity(std::size_t i, MeteredReader<W>& reader) const
    {
        if (i >= r()) {
            throw std::out_of_range("piggyback repair: parity index out of range");
        }
        const std::size_t a = alpha_prime();
        const std::size_t last = s() - 1;
        // Step 1: last-instance systematic cells give every plain last-instance parity.
        std::vector<Symbols<W>> sys(k());
        for (std::size_t l = 0; l < k(); ++l) {
            sys[l] = reader.read(l, last * a, a, Phase::InstanceSystematic);
        }
        const auto plain = base_->encode(sys);

        Symbols<W> out(alpha());
        // Step 2: cell (i, j) sits in piggyback p_i(j) with its other support members.
        for (std::size_t j = 0; j < last; ++j) {
            const std::size_t l = table_.at(i, j);
            auto cell = reader.read(k() + l, last * a, a, Phase::PiggybackedCell);
            add_into<W>(cell, plain[l]);
            for (auto [mi, mj] : supports_[l].members) {
                if (mi == i && mj == j) {
                    continue;
                }
                add_into<W>(cell, reader.read(k() + mi, mj * a, a, Phase::SupportMember));
            }
            std::copy(cell.begin(), cell.end(), out.begin() + j * a);
        }
        // Step 3: own last cell is plain parity plus its piggyback.
        Symbols<W> cell = plain[i];
        for (auto [mi, mj] : supports_[i].members) {
            add_into<W>(cell, reader.read(k() + mi, mj * a, a, Phase::SupportMember));
        }
        std::copy(cell.begin(), cell.end(), out.begin() + last * a);
        return out;
    }

    /// Repairs `node` (0-based over all n nodes) from a cluster snapshot.
    RepairResult<W> repair(std::size_t node, const Cluster<W>& cluster) const
    {
        if (node >= n()) {
            throw std::out_of_range("piggyback repair: node out of range");
        }
        RepairResult<W> res{{}, TransferLedger(node)};
        MeteredReader<W> reader(cluster, res.ledger);
        res.payload = node < k() ? repair_systematic(node, reader) : repair_parity(node - k(), reader);
        return res;
    }

    /// Expected repair download of `node` in symbols.
    std::size_t expected_repair_symbols(std::size_t node) const
    {
        if (node < k()) {
            return (n() - 1) * s() * base_->selector_size();
        }
        std::size_t cells = k();
        const std::size_t i = node - k();
        for (std::size_t j = 0; j < s(); ++j) {
            cells += supports_[table_.at(i, j)].members.size();
        }
        return cells * alpha_prime();
    }

private:
    std::vector<std::span<const FieldElement<W>>> instance_views(std::span<const Symbols<W>> payloads,
                                                                 std::size_t j) const
    {
        std::vector<std::span<const FieldElement<W>>> v;
        v.reserve(payloads.size());
        for (const auto& p : payloads) {
            v.push_back(std::span<const FieldElement<W>>(p).subspan(j * alpha_prime(), alpha_prime()));
        }
        return v;
    }

    std::shared_ptr<const BaseMsrCode<W>> base_;
    InjectionTable table_;
    std::vector<PiggybackSupport> supports_;
    bool optimal_ = false;
};

/// Decoder for a fixed set of k nodes: earlier instances first, their
/// parities recomputed, piggybacks stripped, then the last instance.
template <unsigned W>
class PiggybackDecoder {
public:
    PiggybackDecoder(const PiggybackedCode<W>& code, std::vector<std::size_t> nodes)
        : code_(&code), base_(code.base(), std::move(nodes))
    {}

    const std::vector<std::size_t>& nodes() const noexcept { return base_.nodes(); }

    /// data[t] is the payload of nodes()[t]; returns the k systematic payloads.
    std::vector<Symbols<W>> decode(std::span<const std::span<const FieldElement<W>>> data) const
    {
        const auto& code = *code_;
        const std::size_t a = code.alpha_prime();
        const std::size_t s = code.s();
        const std::size_t k = code.k();
        const auto& ids = nodes();
        if (data.size() != ids.size()) {
            throw std::invalid_argument("piggyback decode: one payload per selected node expected");
        }
        for (const auto& d : data) {
            if (d.size() != code.alpha()) {
                throw std::invalid_argument("piggyback decode: payload has wrong length");
            }
        }
        std::vector<Symbols<W>> out(k, Symbols<W>(code.alpha()));
        std::vector<std::vector<Symbols<W>>> parities(s);
        std::vector<std::span<const FieldElement<W>>> cells(ids.size());
        for (std::size_t j = 0; j + 1 < s; ++j) {
            for (std::size_t t = 0; t < ids.size(); ++t) {
                cells[t] = data[t].subspan(j * a, a);
            }
            auto src = base_.decode(cells);
            parities[j] = code.base().encode(src);
            store(out, src, j);
        }
        std::vector<Symbols<W>> stripped;
        stripped.reserve(ids.size());
        for (std::size_t t = 0; t < ids.size(); ++t) {
            auto cell = data[t].subspan((s - 1) * a, a);
            stripped.emplace_back(cell.begin(), cell.end());
            if (ids[t] >= k) {
                for (auto [mi, mj] : code.supports()[ids[t] - k].members) {
                    add_into<W>(stripped.back(), parities[mj][mi]);
                }
            }
            cells[t] = stripped.back();
        }
        store(out, base_.decode(cells), s - 1);
        return out;
    }

private:
    void store(std::vector<Symbols<W>>& out, const std::vector<Symbols<W>>& src, std::size_t j) const
    {
        const std::size_t a = code_->alpha_prime();
        for (std::size_t i = 0; i < src.size(); ++i) {
            std::copy(src[i].begin(), src[i].end(), out[i].begin() + j * a);
        }
    }

    const PiggybackedCode<W>* code_;
    BaseDecoder<W> base_;
};

template <unsigned W>
std::vector<Symbols<W>> pb_reconstruct(const PiggybackedCode<W>& code, std::span<const NodeView<W>> nodes)
{
    std::vector<std::size_t> ids;
    std::vector<std::span<const FieldElement<W>>> data;
    for (const auto& nv : nodes) {
        ids.push_back(nv.node);
        data.push_back(nv.data);
    }
    return PiggybackDecoder<W>(code, std::move(ids)).decode(data);
}

/// Per-helper download when parity node k+i of an s = r code is repaired.
///
/// With s = r every p_i is a bijection, so each surviving parity sends its
/// last cell once and all r-1 earlier cells once: r cells. Each systematic
/// helper sends one cell. Throws if the measured split differs.
template <unsigned W>
std::map<std::size_t, std::size_t> per_parity_helper_profile(const PiggybackedCode<W>& code, std::size_t i)
{
    if (code.s() != code.r() || !code.optimal()) {
        throw std::invalid_argument("helper profile: defined for optimal tables with s = r");
    }
    if (i >= code.r()) {
        throw std::out_of_range("helper profile: parity index out of range");
    }
    std::vector<Symbols<W>> zeros(code.n(), Symbols<W>(code.alpha()));
    Cluster<W> cluster(std::move(zeros));
    cluster.fail(code.k() + i);
    auto profile = code.repair(code.k() + i, cluster).ledger.per_helper();
    for (const auto& [helper, symbols] : profile) {
        const std::size_t want = helper < code.k() ? code.alpha_prime() : code.r() * code.alpha_prime();
        if (symbols != want) {
            throw std::logic_error("helper profile: helper " + std::to_string(helper + 1) + " sent " +
                                   std::to_string(symbols) + " symbols, expected " + std::to_string(want));
        }
    }
    return profile;
}

} // namespace pgmsr
