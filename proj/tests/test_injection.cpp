// Copyright 2026 The pgmsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <set>
#include <utility>
#include <vector>

#include <gtest/gtest.h>

#include "pgmsr/injection.hpp"

namespace {

using pgmsr::InjectionTable;
using pgmsr::InjectionViolation;
using Members = std::vector<std::pair<std::size_t, std::size_t>>;

// Supports written with 1-based (parity, instance) pairs, the way they are
// printed in the literature; converted to the library's 0-based form.
std::vector<Members> one_based(std::vector<Members> sets)
{
    for (auto& s : sets) {
        for (auto& [i, j] : s) {
            --i;
            --j;
        }
        std::sort(s.begin(), s.end());
    }
    return sets;
}

std::vector<Members> members_of(const InjectionTable& t)
{
    std::vector<Members> out;
    for (const auto& sup : pgmsr::piggyback_supports(t)) {
        out.push_back(sup.members);
    }
    return out;
}

// Table with the given supports: p_i(j) = l for (i, j) in S_l, p_i(s) = i.
InjectionTable table_from_supports(std::size_t r, std::size_t s, const std::vector<Members>& sets)
{
    std::vector<std::size_t> entries(r * s);
    for (std::size_t i = 0; i < r; ++i) {
        entries[i * s + s - 1] = i;
    }
    for (std::size_t l = 0; l < sets.size(); ++l) {
        for (auto [i, j] : sets[l]) {
            entries[i * s + j] = l;
        }
    }
    return InjectionTable(r, s, entries);
}

TEST(Injection, MainDiagonalFirstEntry)
{
    auto t = InjectionTable::main_diagonal(4, 3);
    EXPECT_EQ(t.at(0, 0), 2u);  // p_1(1) = 3
}

TEST(Injection, LastInstanceMapsToItself)
{
    for (std::size_t r = 2; r <= 6; ++r) {
        for (std::size_t s = 2; s <= r; ++s) {
            auto m = InjectionTable::main_diagonal(r, s);
            auto a = InjectionTable::anti_diagonal(r, s);
            for (std::size_t i = 0; i < r; ++i) {
                ASSERT_EQ(m.at(i, s - 1), i);
                ASSERT_EQ(a.at(i, s - 1), i);
            }
        }
    }
}

TEST(Injection, DiagonalTablesAreOptimal)
{
    for (std::size_t r = 2; r <= 6; ++r) {
        for (std::size_t s = 2; s <= r; ++s) {
            for (const auto& t : {InjectionTable::main_diagonal(r, s), InjectionTable::anti_diagonal(r, s)}) {
                const auto rep = pgmsr::validate_injection(t);
                ASSERT_TRUE(rep.optimal()) << "r=" << r << " s=" << s;
                for (auto sz : rep.support_sizes) {
                    ASSERT_EQ(sz, s - 1);
                }
            }
        }
    }
}

TEST(Injection, RangeChecks)
{
    EXPECT_THROW(InjectionTable::main_diagonal(3, 1), std::invalid_argument);
    EXPECT_THROW(InjectionTable::main_diagonal(3, 4), std::invalid_argument);
    EXPECT_THROW(InjectionTable(3, 2, {0, 1, 2}), std::invalid_argument);
    EXPECT_THROW(InjectionTable(2, 2, {0, 5, 1, 1}), std::invalid_argument);
    EXPECT_THROW(InjectionTable::from_one_based({{1, 0}, {1, 2}}), std::invalid_argument);
}

TEST(Injection, OneBasedRoundTrip)
{
    auto t = InjectionTable::anti_diagonal(4, 3);
    EXPECT_EQ(InjectionTable::from_one_based(t.to_one_based()), t);
}

TEST(Injection, SelfColumnNonzeroDetected)
{
    // p_1(1) = 1 in a (3,2) table
    auto t = InjectionTable::from_one_based({{1, 1}, {1, 2}, {2, 3}});
    const auto rep = pgmsr::validate_injection(t);
    EXPECT_TRUE(rep.has(InjectionViolation::SelfColumnNonzero));
    EXPECT_TRUE(rep.has(InjectionViolation::NotInjective));
    EXPECT_FALSE(rep.valid());
    EXPECT_THROW(pgmsr::piggyback_supports(t), std::invalid_argument);
}

TEST(Injection, LastNotSelfDetected)
{
    auto t = InjectionTable::from_one_based({{2, 3}, {3, 2}, {1, 3}});
    const auto rep = pgmsr::validate_injection(t);
    EXPECT_TRUE(rep.has(InjectionViolation::LastNotSelf));
    EXPECT_FALSE(rep.valid());
}

TEST(Injection, UnbalancedSupportIsValidButNotOptimal)
{
    // parities 2 and 3 both piggyback onto P_1
    auto t = InjectionTable::from_one_based({{2, 1}, {1, 2}, {1, 3}});
    const auto rep = pgmsr::validate_injection(t);
    EXPECT_TRUE(rep.valid());
    EXPECT_FALSE(rep.optimal());
    EXPECT_EQ(rep.support_sizes, (std::vector<std::size_t>{2, 1, 0}));
    EXPECT_EQ(pgmsr::violation_name(InjectionViolation::UnbalancedSupport), "unbalanced support");
}

TEST(Supports, SingletonsForTwoInstances)
{
    for (const auto& m : members_of(InjectionTable::main_diagonal(4, 2))) {
        EXPECT_EQ(m.size(), 1u);
    }
}

TEST(Supports, MainDiagonalThreeByThree)
{
    const auto want = one_based({{{2, 1}, {3, 2}}, {{1, 2}, {3, 1}}, {{1, 1}, {2, 2}}});
    EXPECT_EQ(members_of(InjectionTable::main_diagonal(3, 3)), want);
}

TEST(Supports, ThreeInstanceSetsForFourParities)
{
    const auto main_set = one_based({{{3, 1}, {4, 2}}, {{4, 1}, {1, 2}}, {{1, 1}, {2, 2}}, {{2, 1}, {3, 2}}});
    const auto anti_set = one_based({{{3, 1}, {2, 2}}, {{4, 1}, {3, 2}}, {{1, 1}, {4, 2}}, {{2, 1}, {1, 2}}});
    EXPECT_EQ(members_of(InjectionTable::main_diagonal(4, 3)), main_set);
    EXPECT_EQ(members_of(InjectionTable::anti_diagonal(4, 3)), anti_set);
}

TEST(Supports, FourInstanceSetsForFourParities)
{
    const auto main_set = one_based({{{2, 1}, {3, 2}, {4, 3}},
                                     {{3, 1}, {4, 2}, {1, 3}},
                                     {{4, 1}, {1, 2}, {2, 3}},
                                     {{1, 1}, {2, 2}, {3, 3}}});
    const auto anti_set = one_based({{{4, 1}, {3, 2}, {2, 3}},
                                     {{1, 1}, {4, 2}, {3, 3}},
                                     {{2, 1}, {1, 2}, {4, 3}},
                                     {{3, 1}, {2, 2}, {1, 3}}});
    EXPECT_EQ(members_of(InjectionTable::main_diagonal(4, 4)), main_set);
    EXPECT_EQ(members_of(InjectionTable::anti_diagonal(4, 4)), anti_set);
}

TEST(Supports, GroupedFourInstanceSetIsOptimal)
{
    const auto grouped = one_based({{{2, 1}, {3, 1}, {4, 1}},
                                    {{1, 1}, {3, 2}, {4, 2}},
                                    {{1, 2}, {2, 2}, {4, 3}},
                                    {{1, 3}, {2, 3}, {3, 3}}});
    auto t = table_from_supports(4, 4, grouped);
    EXPECT_TRUE(pgmsr::validate_injection(t).optimal());
    EXPECT_EQ(members_of(t), grouped);
}

TEST(Supports, PartitionTheEarlierCells)
{
    std::size_t tables = 0;
    for (auto [r, s] : {std::pair<std::size_t, std::size_t>{2, 2}, {3, 2}, {3, 3}, {4, 2}, {4, 3}}) {
        pgmsr::for_each_valid_table(r, s, [&, r = r, s = s](const InjectionTable& t) {
            ++tables;
            std::set<std::pair<std::size_t, std::size_t>> seen;
            std::size_t count = 0;
            for (const auto& m : members_of(t)) {
                for (const auto& p : m) {
                    seen.insert(p);
                    ++count;
                }
            }
            ASSERT_EQ(count, r * (s - 1));
            ASSERT_EQ(seen.size(), r * (s - 1));
        });
    }
    // ((r-1)!/(r-s)!)^r summed over the listed (r, s)
    EXPECT_EQ(tables, 1u + 8u + 8u + 81u + 1296u);
}

} // namespace
