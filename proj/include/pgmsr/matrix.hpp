/**************************************************************************
 * matrix.hpp
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
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <type_traits>
#include <vector>

#include "pgmsr/gf.hpp"

namespace pgmsr {

class SingularMatrixError : public std::runtime_error {
public:
    SingularMatrixError(std::size_t rank, std::size_t dim)
        : std::runtime_error("singular matrix: rank " + std::to_string(rank) + " of " + std::to_string(dim)),
          rank_(rank), dim_(dim)
    {}

    std::size_t rank() const noexcept { return rank_; }
    std::size_t dim() const noexcept { return dim_; }

private:
    std::size_t rank_;
    std::size_t dim_;
};

/// Dense row-major matrix over GF(2^W).
template <unsigned W>
class Matrix {
public:
    using value_type = FieldElement<W>;

    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
    Matrix(std::size_t rows, std::size_t cols, std::vector<value_type> data)
        : rows_(rows), cols_(cols), data_(std::move(data))
    {
        if (data_.size() != rows_ * cols_) {
            throw std::invalid_argument("matrix: entry count does not match shape");
        }
    }

    static Matrix identity(std::size_t n)
    {
        Matrix m(n, n);
        for (std::size_t i = 0; i < n; ++i) {
            m(i, i) = value_type(1);
        }
        return m;
    }

    /// Column vector view of v.
    static Matrix column(std::span<const value_type> v)
    {
        return Matrix(v.size(), 1, std::vector<value_type>(v.begin(), v.end()));
    }

    std::size_t rows() const noexcept { return rows_; }
    std::size_t cols() const noexcept { return cols_; }

    value_type& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    value_type operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    std::span<value_type> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
    std::span<const value_type> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

    const std::vector<value_type>& data() const noexcept { return data_; }

    bool is_zero() const
    {
        for (auto x : data_) {
            if (!x.is_zero()) {
                return false;
            }
        }
        return true;
    }

    friend bool operator==(const Matrix&, const Matrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<value_type> data_;
};

template <unsigned W>
Matrix<W> operator*(const Matrix<W>& a, const Matrix<W>& b)
{
    if (a.cols() != b.rows()) {
        throw std::invalid_argument("mat_mul: shape mismatch");
    }
    Matrix<W> out(a.rows(), b.cols());
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto dst = out.row(i);
        for (std::size_t l = 0; l < a.cols(); ++l) {
            mul_add<W>(dst, b.row(l), a(i, l));
        }
    }
    return out;
}

template <unsigned W>
Matrix<W> mat_mul(const Matrix<W>& a, const Matrix<W>& b)
{
    return a * b;
}

/// Row-permuted LU factorization by Gaussian elimination.
///
/// Pivoting takes the first row with a nonzero entry in the current column.
/// Elimination runs to completion even for singular input so that rank() is
/// exact; solve() refuses unless the matrix has full rank.
template <unsigned W>
class LuDecomposition {
public:
    explicit LuDecomposition(Matrix<W> a) : lu_(std::move(a))
    {
        if (lu_.rows() != lu_.cols()) {
            throw std::invalid_argument("lu: matrix must be square");
        }
        const std::size_t n = lu_.rows();
        perm_.resize(n);
        for (std::size_t i = 0; i < n; ++i) {
            perm_[i] = i;
        }
        for (std::size_t c = 0; c < n; ++c) {
            std::size_t p = rank_;
            while (p < n && lu_(p, c).is_zero()) {
                ++p;
            }
            if (p == n) {
                continue;
            }
            if (p != rank_) {
                swap_rows(p, rank_);
            }
            const auto pivot_inv = lu_(rank_, c).inverse();
            auto pivot_tail = lu_.row(rank_).subspan(c + 1);
            for (std::size_t i = rank_ + 1; i < n; ++i) {
                if (lu_(i, c).is_zero()) {
                    continue;
                }
                const auto f = lu_(i, c) * pivot_inv;
                lu_(i, c) = f;
                mul_add<W>(lu_.row(i).subspan(c + 1), pivot_tail, f);
            }
            ++rank_;
        }
    }

    std::size_t dim() const noexcept { return lu_.rows(); }
    std::size_t rank() const noexcept { return rank_; }
    bool invertible() const noexcept { return rank_ == lu_.rows(); }

    /// Solves A x = b for every column of b.
    Matrix<W> solve(const Matrix<W>& b) const
    {
        require_invertible();
        const std::size_t n = dim();
        if (b.rows() != n) {
            throw std::invalid_argument("mat_solve: right-hand side has wrong row count");
        }
        Matrix<W> x(n, b.cols());
        for (std::size_t i = 0; i < n; ++i) {
            auto src = b.row(perm_[i]);
            std::copy(src.begin(), src.end(), x.row(i).begin());
        }
        for (std::size_t j = 0; j < n; ++j) {
            for (std::size_t i = j + 1; i < n; ++i) {
                mul_add<W>(x.row(i), x.row(j), lu_(i, j));
            }
        }
        for (std::size_t i = n; i-- > 0;) {
            auto xi = x.row(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                mul_add<W>(xi, x.row(j), lu_(i, j));
            }
            scale_in_place<W>(xi, lu_(i, i).inverse());
        }
        return x;
    }

    /// Single right-hand side, solved in place.
    void solve_in_place(std::span<FieldElement<W>> b) const
    {
        require_invertible();
        const std::size_t n = dim();
        if (b.size() != n) {
            throw std::invalid_argument("mat_solve: right-hand side has wrong length");
        }
        std::vector<FieldElement<W>> scratch(n);
        for (std::size_t i = 0; i < n; ++i) {
            scratch[i] = b[perm_[i]];
        }
        for (std::size_t i = 0; i < n; ++i) {
            auto acc = scratch[i];
            auto row = lu_.row(i);
            for (std::size_t j = 0; j < i; ++j) {
                acc += row[j] * scratch[j];
            }
            scratch[i] = acc;
        }
        for (std::size_t i = n; i-- > 0;) {
            auto acc = scratch[i];
            auto row = lu_.row(i);
            for (std::size_t j = i + 1; j < n; ++j) {
                acc += row[j] * scratch[j];
            }
            scratch[i] = acc / row[i];
        }
        std::copy(scratch.begin(), scratch.end(), b.begin());
    }

private:
    void require_invertible() const
    {
        if (!invertible()) {
            throw SingularMatrixError(rank_, dim());
        }
    }

    void swap_rows(std::size_t a, std::size_t b)
    {
        auto ra = lu_.row(a);
        auto rb = lu_.row(b);
        std::swap_ranges(ra.begin(), ra.end(), rb.begin());
        std::swap(perm_[a], perm_[b]);
    }

    Matrix<W> lu_;
    std::vector<std::size_t> perm_;
    std::size_t rank_ = 0;
};

/// Returns x with a * x == b. Throws SingularMatrixError carrying the rank found.
template <unsigned W>
Matrix<W> mat_solve(const Matrix<W>& a, const Matrix<W>& b)
{
    return LuDecomposition<W>(a).solve(b);
}

template <unsigned W>
Matrix<W> inverse(const Matrix<W>& a)
{
    return mat_solve(a, Matrix<W>::identity(a.rows()));
}

template <unsigned W>
std::size_t rank(const Matrix<W>& a)
{
    if (a.rows() == a.cols()) {
        return LuDecomposition<W>(a).rank();
    }
    // pad to square; zero rows and columns do not change the rank
    const std::size_t n = std::max(a.rows(), a.cols());
    Matrix<W> sq(n, n);
    for (std::size_t i = 0; i < a.rows(); ++i) {
        auto src = a.row(i);
        std::copy(src.begin(), src.end(), sq.row(i).begin());
    }
    return LuDecomposition<W>(std::move(sq)).rank();
}

/// Generalized permutation matrix: out[perm[i]] = scale[i] * v[i].
template <unsigned W>
class PermDiagMatrix {
public:
    PermDiagMatrix() = default;

    PermDiagMatrix(std::vector<std::uint32_t> perm, std::vector<FieldElement<W>> scale)
        : perm_(std::move(perm)), scale_(std::move(scale))
    {
        if (perm_.empty() || perm_.size() != scale_.size()) {
            throw std::invalid_argument("perm-diag: permutation and scale lengths differ");
        }
        std::vector<bool> seen(perm_.size(), false);
        for (auto p : perm_) {
            if (p >= perm_.size() || seen[p]) {
                throw std::invalid_argument("perm-diag: permutation is not a bijection");
            }
            seen[p] = true;
        }
        for (auto s : scale_) {
            if (s.is_zero()) {
                throw std::invalid_argument("perm-diag: zero scale makes the matrix singular");
            }
        }
    }

    std::size_t dim() const noexcept { return perm_.size(); }
    std::span<const std::uint32_t> perm() const noexcept { return perm_; }
    std::span<const FieldElement<W>> scale() const noexcept { return scale_; }

    Symbols<W> apply(std::span<const FieldElement<W>> v) const
    {
        Symbols<W> out(dim());
        apply_add(v, out);
        return out;
    }

    /// out += M v
    void apply_add(std::span<const FieldElement<W>> v, std::span<FieldElement<W>> out) const
    {
        if (v.size() != dim() || out.size() != dim()) {
            throw std::invalid_argument("pd_apply: length mismatch");
        }
        for (std::size_t i = 0; i < perm_.size(); ++i) {
            out[perm_[i]] += scale_[i] * v[i];
        }
    }

    Matrix<W> to_dense() const
    {
        Matrix<W> m(dim(), dim());
        for (std::size_t i = 0; i < dim(); ++i) {
            m(perm_[i], i) = scale_[i];
        }
        return m;
    }

private:
    std::vector<std::uint32_t> perm_;
    std::vector<FieldElement<W>> scale_;
};

template <unsigned W>
Symbols<W> pd_apply(const PermDiagMatrix<W>& m, std::type_identity_t<std::span<const FieldElement<W>>> v)
{
    return m.apply(v);
}

} // namespace pgmsr
