// Copyright 2026 The pgmsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <map>
#include <memory>
#include <random>
#include <vector>

#include <gtest/gtest.h>

#include "pgmsr/piggyback.hpp"
#include "test_support.hpp"

namespace {

using pgmsr::BaseMsrCode;
using pgmsr::Cluster;
using pgmsr::FieldElement;
using pgmsr::InjectionTable;
using pgmsr::PiggybackedCode;
using pgmsr::Rational;
using pgmsr::Symbols;
using pgmsr::testing::for_each_subset;
using pgmsr::testing::random_payloads;

template <unsigned W>
std::vector<Symbols<W>> decode_subset(const PiggybackedCode<W>& code, const std::vector<Symbols<W>>& nodes,
                                      const std::vector<std::size_t>& subset)
{
    std::vector<pgmsr::NodeView<W>> views;
    for (auto l : subset) {
        views.push_back({l, nodes[l]});
    }
    return pgmsr::pb_reconstruct(code, std::span<const pgmsr::NodeView<W>>(views));
}

// Piggyback P_l recomputed from the plain base parities, independent of
// the library's support bookkeeping.
template <unsigned W>
Symbols<W> oracle_piggyback(const PiggybackedCode<W>& code, const std::vector<Symbols<W>>& src, std::size_t l)
{
    const std::size_t a = code.alpha_prime();
    Symbols<W> p(a);
    for (std::size_t i = 0; i < code.r(); ++i) {
        for (std::size_t j = 0; j + 1 < code.s(); ++j) {
            if (code.table().at(i, j) != l) {
                continue;
            }
            std::vector<Symbols<W>> cell;
            for (const auto& f : src) {
                cell.emplace_back(f.begin() + j * a, f.begin() + (j + 1) * a);
            }
            auto par = code.base().encode(cell);
            for (std::size_t v = 0; v < a; ++v) {
                p[v] += par[i][v];
            }
        }
    }
    return p;
}

TEST(PiggybackEncode, ZeroSourceGivesZeroPayloads)
{
    auto code = PiggybackedCode<8>::build({3, 3, 1}, 3);
    std::vector<Symbols<8>> src(3, Symbols<8>(code.alpha()));
    for (const auto& p : code.encode(src)) {
        EXPECT_EQ(p, Symbols<8>(code.alpha()));
    }
}

TEST(PiggybackEncode, LayoutMatchesPlainInstancesPlusPiggyback)
{
    std::mt19937_64 rng(31);
    auto code = PiggybackedCode<16>::build({4, 3, 2}, 3);
    const std::size_t a = code.alpha_prime();
    auto src = random_payloads<16>(rng, 4, code.alpha());
    auto nodes = code.encode(src);
    for (std::size_t i = 0; i < 4; ++i) {
        EXPECT_EQ(nodes[i], src[i]);
    }
    for (std::size_t j = 0; j < code.s(); ++j) {
        std::vector<Symbols<16>> cell;
        for (const auto& f : src) {
            cell.emplace_back(f.begin() + j * a, f.begin() + (j + 1) * a);
        }
        auto plain = code.base().encode(cell);
        for (std::size_t l = 0; l < code.r(); ++l) {
            Symbols<16> got(nodes[4 + l].begin() + j * a, nodes[4 + l].begin() + (j + 1) * a);
            if (j + 1 == code.s()) {
                auto p = oracle_piggyback(code, src, l);
                for (std::size_t v = 0; v < a; ++v) {
                    plain[l][v] += p[v];
                }
            }
            ASSERT_EQ(got, plain[l]) << "parity " << l << " instance " << j;
        }
    }
}

TEST(PiggybackEncode, SingleParitySymbolLandsInOnePiggyback)
{
    // s = r = 2: the single nonzero symbol of f_1 reaches both first-instance
    // parities; each of those is added to exactly one second-instance cell.
    auto code = PiggybackedCode<8>::build({2, 2, 1}, 2);
    const std::size_t a = code.alpha_prime();
    std::vector<Symbols<8>> src(2, Symbols<8>(code.alpha()));
    src[0][0] = FieldElement<8>(7);
    auto nodes = code.encode(src);
    for (std::size_t l = 0; l < 2; ++l) {
        std::size_t nonzero = 0;
        for (std::size_t v = a; v < 2 * a; ++v) {
            nonzero += nodes[2 + l][v] == FieldElement<8>() ? 0 : 1;
        }
        EXPECT_EQ(nonzero, 1u);
    }
}

TEST(PiggybackEncode, RejectsBadShapesAndTables)
{
    auto code = PiggybackedCode<8>::build({3, 2, 1}, 2);
    std::vector<Symbols<8>> src(3, Symbols<8>(code.alpha() - 1));
    EXPECT_THROW(code.encode(src), std::invalid_argument);
    auto base = code.base_ptr();
    auto explicit_table = InjectionTable::from_one_based({{2, 1}, {1, 2}});
    EXPECT_NO_THROW(PiggybackedCode<8>(base, explicit_table));
    auto bad = InjectionTable::from_one_based({{1, 1}, {1, 2}});
    EXPECT_THROW(PiggybackedCode<8>(base, bad), std::invalid_argument);
    EXPECT_THROW(PiggybackedCode<8>(base, InjectionTable::main_diagonal(3, 2)), std::invalid_argument);
}

TEST(PiggybackEncode, SuboptimalTableNeedsFlag)
{
    auto base = std::make_shared<const BaseMsrCode<8>>(BaseMsrCode<8>::build({3, 3, 1}));
    auto uneven = InjectionTable::from_one_based({{2, 1}, {1, 2}, {1, 3}});
    EXPECT_THROW(PiggybackedCode<8>(base, uneven), std::invalid_argument);
    PiggybackedCode<8> code(base, uneven, {.allow_suboptimal = true});
    EXPECT_FALSE(code.optimal());
}

TEST(PiggybackReconstruct, SystematicSubsetIsVerbatim)
{
    std::mt19937_64 rng(32);
    auto code = PiggybackedCode<8>::build({3, 2, 1}, 2);
    auto src = random_payloads<8>(rng, 3, code.alpha());
    auto nodes = code.encode(src);
    EXPECT_EQ(decode_subset(code, nodes, {0, 1, 2}), src);
}

TEST(PiggybackReconstruct, AllParitiesPlusOneSystematic)
{
    std::mt19937_64 rng(33);
    auto code = PiggybackedCode<16>::build({4, 3, 3}, 3);
    auto src = random_payloads<16>(rng, 4, code.alpha());
    auto nodes = code.encode(src);
    EXPECT_EQ(decode_subset(code, nodes, {2, 4, 5, 6}), src);
}

TEST(PiggybackReconstruct, EveryKSubset)
{
    std::mt19937_64 rng(34);
    for (std::size_t s : {2u, 3u}) {
        auto code = PiggybackedCode<16>::build({4, 3, 3}, s);
        auto src = random_payloads<16>(rng, 4, code.alpha());
        auto nodes = code.encode(src);
        std::size_t subsets = 0;
        for_each_subset(7, 4, [&](const std::vector<std::size_t>& c) {
            ++subsets;
            ASSERT_EQ(decode_subset(code, nodes, c), src);
        });
        EXPECT_EQ(subsets, 35u);
    }
}

TEST(PiggybackReconstruct, DecoderIsReusable)
{
    std::mt19937_64 rng(35);
    auto code = PiggybackedCode<16>::build({3, 3, 3}, 3);
    pgmsr::PiggybackDecoder<16> dec(code, {3, 4, 5});
    for (int t = 0; t < 5; ++t) {
        auto src = random_payloads<16>(rng, 3, code.alpha());
        auto nodes = code.encode(src);
        std::vector<std::span<const FieldElement<16>>> data{nodes[3], nodes[4], nodes[5]};
        ASSERT_EQ(dec.decode(data), src);
    }
}

class RepairMatrix : public ::testing::TestWithParam<std::tuple<std::size_t, std::size_t, std::size_t>> {};

TEST_P(RepairMatrix, EveryNodeBitExactWithFormulaBandwidth)
{
    const auto [k, r, s] = GetParam();
    std::mt19937_64 rng(36 + k * 100 + r * 10 + s);
    auto code = PiggybackedCode<16>::build({k, r, 11}, s);
    const std::size_t a = code.alpha_prime();
    for (int trial = 0; trial < 3; ++trial) {
        auto src = random_payloads<16>(rng, k, code.alpha());
        auto nodes = code.encode(src);
        for (std::size_t node = 0; node < code.n(); ++node) {
            Cluster<16> cluster(nodes);
            cluster.fail(node);
            auto res = code.repair(node, cluster);
            ASSERT_EQ(res.payload, nodes[node]) << "node " << node;
            const std::size_t want = node < k ? (k + r - 1) * s * a / r : (k + s * (s - 1)) * a;
            ASSERT_EQ(res.ledger.total(), want) << "node " << node;
            ASSERT_EQ(code.expected_repair_symbols(node), want);
            if (node < k) {
                for (const auto& [helper, symbols] : res.ledger.per_helper()) {
                    ASSERT_EQ(symbols, s * a / r);
                }
                ASSERT_EQ(res.ledger.per_helper().size(), code.n() - 1);
            }
        }
    }
}

INSTANTIATE_TEST_SUITE_P(Desk, RepairMatrix,
                         ::testing::Values(std::make_tuple(2, 2, 2), std::make_tuple(4, 2, 2),
                                           std::make_tuple(4, 3, 2), std::make_tuple(4, 3, 3),
                                           std::make_tuple(3, 3, 3), std::make_tuple(4, 4, 3),
                                           std::make_tuple(4, 4, 4)));

TEST(PiggybackRepair, FourByFourSystematicTotal)
{
    auto code = PiggybackedCode<16>::build({4, 4, 3}, 4);
    std::vector<Symbols<16>> zeros(code.n(), Symbols<16>(code.alpha()));
    Cluster<16> cluster(zeros);
    cluster.fail(0);
    auto res = code.repair(0, cluster);
    // 7 alpha / 4 with alpha = 4 alpha'
    EXPECT_EQ(Rational(static_cast<std::int64_t>(res.ledger.total()), static_cast<std::int64_t>(code.alpha())),
              Rational(7, 4));
}

TEST(PiggybackRepair, ParityTotalsForFourParities)
{
    for (std::size_t k : {4u, 8u}) {
        for (std::size_t s : {3u, 4u}) {
            auto code = PiggybackedCode<16>::build({k, 4, 3}, s, {.verify_mds = false});
            const auto alpha = static_cast<std::int64_t>(code.alpha());
            const auto ki = static_cast<std::int64_t>(k);
            const Rational want = s == 3 ? Rational(ki + 6, 3) : Rational(ki + 12, 4);
            for (std::size_t i = 0; i < 4; ++i) {
                const auto got = static_cast<std::int64_t>(code.expected_repair_symbols(k + i));
                EXPECT_EQ(Rational(got, alpha), want) << "k=" << k << " s=" << s;
            }
        }
    }
}

TEST(PiggybackRepair, UnevenTableStillRepairsWithLargerDownload)
{
    std::mt19937_64 rng(37);
    auto base = std::make_shared<const BaseMsrCode<8>>(BaseMsrCode<8>::build({3, 3, 1}));
    auto uneven = InjectionTable::from_one_based({{2, 1}, {1, 2}, {1, 3}});
    PiggybackedCode<8> code(base, uneven, {.allow_suboptimal = true});
    auto src = random_payloads<8>(rng, 3, code.alpha());
    auto nodes = code.encode(src);
    std::size_t sum = 0;
    for (std::size_t i = 0; i < 3; ++i) {
        Cluster<8> cluster(nodes);
        cluster.fail(3 + i);
        auto res = code.repair(3 + i, cluster);
        ASSERT_EQ(res.payload, nodes[3 + i]);
        ASSERT_EQ(res.ledger.total(), code.expected_repair_symbols(3 + i));
        sum += res.ledger.total();
    }
    // optimal average is (k + s(s-1)) alpha'
    EXPECT_GT(sum, 3 * (3 + 2) * code.alpha_prime());
}

TEST(PiggybackRepair, MissingHelperIsReported)
{
    auto code = PiggybackedCode<8>::build({3, 2, 1}, 2);
    std::vector<Symbols<8>> zeros(code.n(), Symbols<8>(code.alpha()));
    Cluster<8> cluster(zeros);
    cluster.fail(0);
    cluster.fail(4);
    EXPECT_THROW(code.repair(0, cluster), pgmsr::HelperUnavailable);
    EXPECT_THROW(code.repair(5, cluster), std::out_of_range);
}

TEST(HelperProfile, ThreeParitiesMainDiagonal)
{
    auto code = PiggybackedCode<16>::build({3, 3, 1}, 3);
    const auto a = code.alpha_prime();
    auto profile = pgmsr::per_parity_helper_profile(code, 0);
    ASSERT_EQ(profile.size(), 5u);
    for (std::size_t l = 0; l < 3; ++l) {
        EXPECT_EQ(profile.at(l), a);  // one cell
    }
    EXPECT_EQ(profile.at(4), 3 * a);
    EXPECT_EQ(profile.at(5), 3 * a);
}

TEST(HelperProfile, FourParitiesAntiDiagonal)
{
    auto base = std::make_shared<const BaseMsrCode<8>>(BaseMsrCode<8>::build({4, 4, 1}, {.verify_mds = false}));
    PiggybackedCode<8> code(base, InjectionTable::anti_diagonal(4, 4));
    for (std::size_t i = 0; i < 4; ++i) {
        auto profile = pgmsr::per_parity_helper_profile(code, i);
        for (std::size_t l = 4; l < 8; ++l) {
            if (l != 4 + i) {
                EXPECT_EQ(profile.at(l), 4 * code.alpha_prime());
            }
        }
    }
}

TEST(HelperProfile, EveryOptimalFullTableIsBalanced)
{
    // all valid (3,3) tables; the optimal ones must give the even split
    auto base = std::make_shared<const BaseMsrCode<8>>(BaseMsrCode<8>::build({3, 3, 1}));
    std::size_t optimal = 0;
    pgmsr::for_each_valid_table(3, 3, [&](const InjectionTable& t) {
        if (!pgmsr::validate_injection(t).optimal()) {
            return;
        }
        ++optimal;
        PiggybackedCode<8> code(base, t);
        for (std::size_t i = 0; i < 3; ++i) {
            EXPECT_NO_THROW(pgmsr::per_parity_helper_profile(code, i));
        }
    });
    EXPECT_EQ(optimal, 8u);
}

TEST(HelperProfile, EveryFourParityTableIsBalanced)
{
    // with s = r each row uses all other parities, so all 6^4 tables are optimal
    auto base = std::make_shared<const BaseMsrCode<8>>(BaseMsrCode<8>::build({4, 4, 1}, {.verify_mds = false}));
    std::size_t tables = 0;
    pgmsr::for_each_valid_table(4, 4, [&](const InjectionTable& t) {
        ++tables;
        ASSERT_TRUE(pgmsr::validate_injection(t).optimal());
        PiggybackedCode<8> code(base, t);
        for (std::size_t i = 0; i < 4; ++i) {
            ASSERT_NO_THROW(pgmsr::per_parity_helper_profile(code, i));
        }
    });
    EXPECT_EQ(tables, 1296u);
}

TEST(HelperProfile, RefusesPartialInstanceCounts)
{
    auto code = PiggybackedCode<8>::build({3, 3, 1}, 2);
    EXPECT_THROW(pgmsr::per_parity_helper_profile(code, 0), std::invalid_argument);
}

} // namespace
