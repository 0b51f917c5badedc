/**************************************************************************
 * gf.hpp
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
#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

namespace pgmsr {

/// Binary extension fields GF(2^W). Only W = 8 and W = 16 are provided.
template <unsigned W>
struct FieldTraits;

template <>
struct FieldTraits<8> {
    using storage_type = std::uint8_t;
    /// x^8 + x^4 + x^3 + x^2 + 1
    static constexpr std::uint32_t reduction_polynomial = 0x11D;
};

template <>
struct FieldTraits<16> {
    using storage_type = std::uint16_t;
    /// x^16 + x^12 + x^3 + x + 1
    static constexpr std::uint32_t reduction_polynomial = 0x1100B;
};

/// Log/antilog tables for GF(2^W), built once on first use.
///
/// The generator is x (0x02); both reduction polynomials are primitive, so
/// the antilog table walks every nonzero element exactly once. The antilog
/// table is doubled so that exp[log a + log b] needs no modular reduction.
template <unsigned W>
class GaloisTables {
public:
    using storage_type = typename FieldTraits<W>::storage_type;
    static constexpr std::uint32_t order = 1u << W;
    static constexpr std::uint32_t group_order = order - 1;

    static const GaloisTables& get()
    {
        static const GaloisTables tables;
        return tables;
    }

    storage_type mul(storage_type a, storage_type b) const noexcept
    {
        if (a == 0 || b == 0) {
            return 0;
        }
        return exp_[log_[a] + log_[b]];
    }

    storage_type inv(storage_type a) const
    {
        if (a == 0) {
            throw std::domain_error("gf: inverse of zero");
        }
        return exp_[group_order - log_[a]];
    }

    std::uint32_t log(storage_type a) const noexcept { return log_[a]; }
    storage_type exp(std::uint32_t e) const noexcept { return exp_[e]; }

private:
    GaloisTables() : log_(order, 0), exp_(2 * group_order + 1, 0)
    {
        std::uint32_t x = 1;
        for (std::uint32_t e = 0; e < group_order; ++e) {
            exp_[e] = static_cast<storage_type>(x);
            exp_[e + group_order] = static_cast<storage_type>(x);
            log_[x] = e;
            x <<= 1;
            if (x & order) {
                x ^= FieldTraits<W>::reduction_polynomial;
            }
        }
        exp_[2 * group_order] = exp_[0];
    }

    std::vector<std::uint32_t> log_;
    std::vector<storage_type> exp_;
};

/// A scalar in GF(2^W). Addition and subtraction are both XOR.
template <unsigned W>
class FieldElement {
public:
    using storage_type = typename FieldTraits<W>::storage_type;
    static constexpr unsigned width = W;

    constexpr FieldElement() noexcept = default;
    constexpr explicit FieldElement(storage_type value) noexcept : value_(value) {}

    static FieldElement from_uint(std::uint64_t v)
    {
        if (v >= GaloisTables<W>::order) {
            throw std::out_of_range("gf: value does not fit the field width");
        }
        return FieldElement(static_cast<storage_type>(v));
    }

    constexpr storage_type value() const noexcept { return value_; }
    constexpr bool is_zero() const noexcept { return value_ == 0; }

    FieldElement inverse() const { return FieldElement(GaloisTables<W>::get().inv(value_)); }

    friend constexpr FieldElement operator+(FieldElement a, FieldElement b) noexcept
    {
        return FieldElement(static_cast<storage_type>(a.value_ ^ b.value_));
    }
    friend constexpr FieldElement operator-(FieldElement a, FieldElement b) noexcept { return a + b; }
    friend FieldElement operator*(FieldElement a, FieldElement b) noexcept
    {
        return FieldElement(GaloisTables<W>::get().mul(a.value_, b.value_));
    }
    friend FieldElement operator/(FieldElement a, FieldElement b) { return a * b.inverse(); }

    FieldElement& operator+=(FieldElement o) noexcept { return *this = *this + o; }
    FieldElement& operator-=(FieldElement o) noexcept { return *this = *this + o; }
    FieldElement& operator*=(FieldElement o) noexcept { return *this = *this * o; }

    friend constexpr bool operator==(FieldElement, FieldElement) noexcept = default;

private:
    storage_type value_ = 0;
};

using Gf8 = FieldElement<8>;
using Gf16 = FieldElement<16>;

/// Owned run of field symbols; the unit every payload, cell and slice uses.
template <unsigned W>
using Symbols = std::vector<FieldElement<W>>;

/// dst[i] += c * src[i]
template <unsigned W>
void mul_add(std::span<FieldElement<W>> dst, std::span<const FieldElement<W>> src, FieldElement<W> c)
{
    if (dst.size() != src.size()) {
        throw std::invalid_argument("mul_add: length mismatch");
    }
    if (c.is_zero()) {
        return;
    }
    const auto& t = GaloisTables<W>::get();
    const std::uint32_t lc = t.log(c.value());
    for (std::size_t i = 0; i < dst.size(); ++i) {
        const auto s = src[i].value();
        if (s != 0) {
            dst[i] = dst[i] + FieldElement<W>(t.exp(t.log(s) + lc));
        }
    }
}

/// dst[i] += src[i]
template <unsigned W>
void add_into(std::span<FieldElement<W>> dst, std::span<const FieldElement<W>> src)
{
    if (dst.size() != src.size()) {
        throw std::invalid_argument("add_into: length mismatch");
    }
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] += src[i];
    }
}

template <unsigned W>
void scale_in_place(std::span<FieldElement<W>> v, FieldElement<W> c)
{
    for (auto& x : v) {
        x *= c;
    }
}

} // namespace pgmsr
