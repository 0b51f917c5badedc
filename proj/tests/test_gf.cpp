// Copyright 2026 The pgmsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <cstdint>
#include <random>

#include <gtest/gtest.h>

#include "pgmsr/gf.hpp"

namespace {

using pgmsr::FieldElement;
using pgmsr::FieldTraits;

// Schoolbook carry-less product reduced bit by bit; independent of the tables.
template <unsigned W>
std::uint32_t clmul_reduce(std::uint32_t a, std::uint32_t b)
{
    std::uint64_t prod = 0;
    for (unsigned bit = 0; bit < W; ++bit) {
        if (b & (1u << bit)) {
            prod ^= static_cast<std::uint64_t>(a) << bit;
        }
    }
    const std::uint64_t poly = FieldTraits<W>::reduction_polynomial;
    for (int deg = 2 * W - 2; deg >= static_cast<int>(W); --deg) {
        if (prod & (std::uint64_t{1} << deg)) {
            prod ^= poly << (deg - W);
        }
    }
    return static_cast<std::uint32_t>(prod);
}

template <unsigned W>
FieldElement<W> el(std::uint32_t v)
{
    return FieldElement<W>::from_uint(v);
}

TEST(Gf8, DocumentedProducts)
{
    EXPECT_EQ(el<8>(0x53) * el<8>(1), el<8>(0x53));
    EXPECT_EQ(el<8>(0) * el<8>(0xC7), el<8>(0));
    // x^7 * x = x^8 = x^4 + x^3 + x^2 + 1
    EXPECT_EQ(el<8>(0x80) * el<8>(0x02), el<8>(0x1D));
    EXPECT_EQ(clmul_reduce<8>(0x80, 0x02), 0x1Du);
}

TEST(Gf8, TablesMatchPolynomialDefinitionExhaustively)
{
    for (std::uint32_t a = 0; a < 256; ++a) {
        for (std::uint32_t b = 0; b < 256; ++b) {
            ASSERT_EQ((el<8>(a) * el<8>(b)).value(), clmul_reduce<8>(a, b)) << a << " * " << b;
        }
    }
}

TEST(Gf8, EveryNonzeroElementHasAnInverse)
{
    for (std::uint32_t a = 1; a < 256; ++a) {
        ASSERT_EQ(el<8>(a) * el<8>(a).inverse(), el<8>(1)) << a;
    }
    EXPECT_THROW(el<8>(0).inverse(), std::domain_error);
}

TEST(Gf16, TablesMatchPolynomialDefinitionOnSamples)
{
    std::mt19937_64 rng(11);
    for (int t = 0; t < 100000; ++t) {
        const std::uint32_t a = rng() & 0xFFFF;
        const std::uint32_t b = rng() & 0xFFFF;
        ASSERT_EQ((el<16>(a) * el<16>(b)).value(), clmul_reduce<16>(a, b));
    }
    EXPECT_EQ((el<16>(0x8000) * el<16>(2)).value(), 0x100Bu);
}

TEST(Gf16, InverseOnRandomSamples)
{
    std::mt19937_64 rng(12);
    for (int t = 0; t < 10000; ++t) {
        const std::uint32_t a = 1 + rng() % 0xFFFF;
        ASSERT_EQ(el<16>(a) * el<16>(a).inverse(), el<16>(1)) << a;
    }
}

TEST(Gf16, FieldAxiomsOnRandomTriples)
{
    std::mt19937_64 rng(13);
    for (int t = 0; t < 10000; ++t) {
        const auto a = el<16>(rng() & 0xFFFF);
        const auto b = el<16>(rng() & 0xFFFF);
        const auto c = el<16>(rng() & 0xFFFF);
        ASSERT_EQ((a + b) * c, a * c + b * c);
        ASSERT_EQ(a * b, b * a);
        ASSERT_EQ((a * b) * c, a * (b * c));
    }
}

TEST(Gf, ValueMustFitWidth)
{
    EXPECT_THROW(el<8>(256), std::out_of_range);
    EXPECT_NO_THROW(el<16>(0xFFFF));
    EXPECT_THROW(el<16>(0x10000), std::out_of_range);
}

TEST(Gf, RowKernels)
{
    std::mt19937_64 rng(14);
    pgmsr::Symbols<16> dst(64), src(64);
    for (auto& x : src) {
        x = el<16>(rng() & 0xFFFF);
    }
    const auto c = el<16>(0x1234);
    auto expect = dst;
    for (std::size_t i = 0; i < dst.size(); ++i) {
        expect[i] += c * src[i];
    }
    pgmsr::mul_add<16>(dst, src, c);
    EXPECT_EQ(dst, expect);
    pgmsr::Symbols<16> shorter(3);
    EXPECT_THROW(pgmsr::mul_add<16>(shorter, src, c), std::invalid_argument);
}

} // namespace
