/**************************************************************************
 * engine.cpp
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

#include "engine.hpp"

#include "pgmsr/balanced.hpp"
#include "pgmsr/piggyback.hpp"
#include "shard.hpp"

namespace pgmsr::cli {

namespace {

template <unsigned W>
std::vector<Symbols<W>> lift(const std::vector<Raw>& v)
{
    std::vector<Symbols<W>> out;
    out.reserve(v.size());
    for (const auto& x : v) {
        out.push_back(from_raw<W>(x));
    }
    return out;
}

template <unsigned W>
Cluster<W> cluster_without(std::size_t node, const std::vector<Raw>& payloads)
{
    std::vector<Symbols<W>> nodes;
    for (std::size_t l = 0; l < payloads.size(); ++l) {
        nodes.push_back(l == node ? Symbols<W>{} : from_raw<W>(payloads[l]));
    }
    Cluster<W> c(std::move(nodes));
    c.fail(node);
    return c;
}

template <unsigned W>
class PiggybackEngine final : public Engine {
public:
    PiggybackEngine(const CodeConfig& c, const EngineOptions& o)
        : code_(std::make_shared<const BaseMsrCode<W>>(
                    BaseMsrCode<W>::build({c.k, c.r, c.seed}, {.verify_mds = o.verify_mds})),
                c.injection, {.allow_suboptimal = o.allow_suboptimal})
    {}

    std::size_t n() const override { return code_.n(); }
    std::size_t k() const override { return code_.k(); }
    std::size_t alpha() const override { return code_.alpha(); }
    std::size_t source_size() const override { return code_.source_size(); }
    std::size_t alpha_prime() const override { return code_.alpha_prime(); }
    bool verified() const override { return code_.base().verified_mds(); }

    std::vector<Raw> encode(const Raw& source) const override
    {
        const auto flat = from_raw<W>(source);
        std::vector<Symbols<W>> sys;
        for (std::size_t i = 0; i < k(); ++i) {
            sys.emplace_back(flat.begin() + i * alpha(), flat.begin() + (i + 1) * alpha());
        }
        std::vector<Raw> out;
        for (const auto& p : code_.encode(sys)) {
            out.push_back(to_raw<W>(p));
        }
        return out;
    }

    Raw decode(const std::vector<std::size_t>& ids, const std::vector<Raw>& data) const override
    {
        const auto lifted = lift<W>(data);
        std::vector<std::span<const FieldElement<W>>> views(lifted.begin(), lifted.end());
        Raw out;
        for (const auto& f : PiggybackDecoder<W>(code_, ids).decode(views)) {
            auto r = to_raw<W>(f);
            out.insert(out.end(), r.begin(), r.end());
        }
        return out;
    }

    Raw repair(std::size_t node, const std::vector<Raw>& payloads, TransferLedger& ledger) const override
    {
        auto res = code_.repair(node, cluster_without<W>(node, payloads));
        ledger.merge(res.ledger);
        return to_raw<W>(res.payload);
    }

    std::size_t expected_repair(std::size_t node) const override { return code_.expected_repair_symbols(node); }

    MdsReport verify_mds() const override { return code_.base().verify_mds(); }

private:
    PiggybackedCode<W> code_;
};

template <unsigned W>
class BalancedEngine final : public Engine {
public:
    BalancedEngine(const CodeConfig& c, const EngineOptions& o)
        : code_(BalancedCode<W>::build(c.bibd, c.k, c.seed, {.verify_mds = o.verify_mds}))
    {}

    std::size_t n() const override { return code_.n(); }
    std::size_t k() const override { return code_.k(); }
    std::size_t alpha() const override { return code_.alpha(); }
    std::size_t source_size() const override { return code_.source_size(); }
    std::size_t alpha_prime() const override { return code_.instance(0).alpha_prime(); }
    bool verified() const override
    {
        for (std::size_t t = 0; t < code_.b(); ++t) {
            if (!code_.instance(t).base().verified_mds()) {
                return false;
            }
        }
        return true;
    }

    std::vector<Raw> encode(const Raw& source) const override
    {
        const auto flat = from_raw<W>(source);
        std::vector<Raw> out;
        for (const auto& p : code_.encode(flat)) {
            out.push_back(to_raw<W>(p));
        }
        return out;
    }

    Raw decode(const std::vector<std::size_t>& ids, const std::vector<Raw>& data) const override
    {
        const auto lifted = lift<W>(data);
        std::vector<std::span<const FieldElement<W>>> views(lifted.begin(), lifted.end());
        return to_raw<W>(BalancedDecoder<W>(code_, ids).decode(views));
    }

    Raw repair(std::size_t node, const std::vector<Raw>& payloads, TransferLedger& ledger) const override
    {
        auto res = code_.repair(node, cluster_without<W>(node, payloads));
        ledger.merge(res.ledger);
        return to_raw<W>(res.payload);
    }

    std::size_t expected_repair(std::size_t) const override
    {
        return (code_.n() - 1) * code_.expected_per_helper_symbols();
    }

    MdsReport verify_mds() const override
    {
        MdsReport all;
        for (std::size_t t = 0; t < code_.b(); ++t) {
            auto rep = code_.instance(t).base().verify_mds();
            all.subsets_checked += rep.subsets_checked;
            all.all_invertible = all.all_invertible && rep.all_invertible;
            all.failures.insert(all.failures.end(), rep.failures.begin(), rep.failures.end());
        }
        return all;
    }

private:
    BalancedCode<W> code_;
};

} // namespace

std::unique_ptr<Engine> make_engine(const CodeConfig& c, const EngineOptions& o)
{
    try {
        if (c.mode == Mode::Piggyback) {
            if (c.w == 8) {
                return std::make_unique<PiggybackEngine<8>>(c, o);
            }
            return std::make_unique<PiggybackEngine<16>>(c, o);
        }
        if (c.w == 8) {
            return std::make_unique<BalancedEngine<8>>(c, o);
        }
        return std::make_unique<BalancedEngine<16>>(c, o);
    } catch (const MdsConstructionError& e) {
        throw UsageError(std::string(e.what()) + "; try w = 16 or another seed");
    } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
    }
}

} // namespace pgmsr::cli
