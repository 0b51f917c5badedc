// Copyright 2026 The pgmsr Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <numeric>
#include <random>

#include <gtest/gtest.h>

#include "pgmsr/matrix.hpp"

namespace {

using pgmsr::FieldElement;
using pgmsr::Matrix;
using pgmsr::PermDiagMatrix;

template <unsigned W>
Matrix<W> random_matrix(std::mt19937_64& rng, std::size_t rows, std::size_t cols)
{
    Matrix<W> m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        for (std::size_t j = 0; j < cols; ++j) {
            m(i, j) = FieldElement<W>::from_uint(rng() % (1u << W));
        }
    }
    return m;
}

template <unsigned W>
Matrix<W> random_invertible(std::mt19937_64& rng, std::size_t n)
{
    for (;;) {
        auto m = random_matrix<W>(rng, n, n);
        if (pgmsr::LuDecomposition<W>(m).invertible()) {
            return m;
        }
    }
}

template <unsigned W>
PermDiagMatrix<W> random_pd(std::mt19937_64& rng, std::size_t dim)
{
    std::vector<std::uint32_t> perm(dim);
    std::iota(perm.begin(), perm.end(), 0u);
    std::shuffle(perm.begin(), perm.end(), rng);
    pgmsr::Symbols<W> scale(dim);
    for (auto& s : scale) {
        s = FieldElement<W>::from_uint(1 + rng() % ((1u << W) - 1));
    }
    return PermDiagMatrix<W>(std::move(perm), std::move(scale));
}

TEST(MatMul, IdentityAndZero)
{
    std::mt19937_64 rng(1);
    auto b = random_matrix<8>(rng, 5, 3);
    EXPECT_EQ(Matrix<8>::identity(5) * b, b);
    EXPECT_TRUE((b * Matrix<8>(3, 4)).is_zero());
    EXPECT_THROW(b * b, std::invalid_argument);
}

TEST(MatMul, InverseMultipliesBackToIdentity)
{
    std::mt19937_64 rng(2);
    for (int t = 0; t < 20; ++t) {
        auto a = random_invertible<8>(rng, 1 + rng() % 12);
        auto inv = pgmsr::inverse(a);
        EXPECT_EQ(a * inv, Matrix<8>::identity(a.rows()));
        EXPECT_EQ(inv * a, Matrix<8>::identity(a.rows()));
    }
}

TEST(MatSolve, IdentitySystemReturnsRhs)
{
    std::mt19937_64 rng(3);
    auto b = random_matrix<16>(rng, 7, 2);
    EXPECT_EQ(pgmsr::mat_solve(Matrix<16>::identity(7), b), b);
}

TEST(MatSolve, RoundTripsRandomInvertibleSystems)
{
    std::mt19937_64 rng(4);
    for (int t = 0; t < 100; ++t) {
        const std::size_t n = 1 + rng() % 24;
        auto a = random_invertible<16>(rng, n);
        auto x = random_matrix<16>(rng, n, 1 + rng() % 3);
        auto b = a * x;
        auto solved = pgmsr::mat_solve(a, b);
        ASSERT_EQ(solved, x);
        ASSERT_EQ(a * solved, b);

        pgmsr::Symbols<16> v(b.data().begin(), b.data().begin() + static_cast<std::ptrdiff_t>(n));
        if (b.cols() == 1) {
            pgmsr::LuDecomposition<16>(a).solve_in_place(v);
            ASSERT_EQ(Matrix<16>::column(v), x);
        }
    }
}

TEST(MatSolve, EqualRowsAreSingularWithRank)
{
    std::mt19937_64 rng(5);
    auto a = random_invertible<8>(rng, 6);
    auto src = a.row(1);
    std::copy(src.begin(), src.end(), a.row(4).begin());
    try {
        pgmsr::mat_solve(a, Matrix<8>(6, 1));
        FAIL() << "expected SingularMatrixError";
    } catch (const pgmsr::SingularMatrixError& e) {
        EXPECT_EQ(e.rank(), 5u);
        EXPECT_EQ(e.dim(), 6u);
    }
    EXPECT_EQ(pgmsr::rank(a), 5u);
    EXPECT_EQ(pgmsr::rank(Matrix<8>(3, 5)), 0u);
}

TEST(PermDiag, IdentityPermutationWithUnitScaleIsIdentity)
{
    std::vector<std::uint32_t> perm{0, 1, 2, 3};
    PermDiagMatrix<8> m(perm, pgmsr::Symbols<8>(4, FieldElement<8>(1)));
    pgmsr::Symbols<8> v{FieldElement<8>(9), FieldElement<8>(0), FieldElement<8>(200), FieldElement<8>(3)};
    EXPECT_EQ(m.apply(v), v);
}

TEST(PermDiag, ZeroVectorMapsToZero)
{
    std::mt19937_64 rng(6);
    auto m = random_pd<16>(rng, 33);
    EXPECT_EQ(m.apply(pgmsr::Symbols<16>(33)), pgmsr::Symbols<16>(33));
}

TEST(PermDiag, MatchesDenseExpansion)
{
    std::mt19937_64 rng(7);
    for (int t = 0; t < 100; ++t) {
        const std::size_t dim = 1 + rng() % 256;
        auto m = random_pd<16>(rng, dim);
        auto v = random_matrix<16>(rng, dim, 1);
        auto dense = m.to_dense();
        std::size_t nonzeros = 0;
        for (auto x : dense.data()) {
            nonzeros += x.is_zero() ? 0 : 1;
        }
        ASSERT_EQ(nonzeros, dim);
        ASSERT_EQ(Matrix<16>::column(pgmsr::pd_apply(m, v.data())), dense * v);
    }
}

TEST(PermDiag, RejectsBadStructure)
{
    using P = PermDiagMatrix<8>;
    pgmsr::Symbols<8> ones(3, FieldElement<8>(1));
    EXPECT_THROW(P({0, 0, 1}, ones), std::invalid_argument);
    EXPECT_THROW(P({0, 1, 3}, ones), std::invalid_argument);
    EXPECT_THROW(P({0, 1, 2}, pgmsr::Symbols<8>{FieldElement<8>(1), FieldElement<8>(0), FieldElement<8>(1)}),
                 std::invalid_argument);
    P ok({2, 0, 1}, ones);
    EXPECT_THROW(ok.apply(pgmsr::Symbols<8>(2)), std::invalid_argument);
}

} // namespace
