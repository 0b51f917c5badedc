// Copyright 2026 The pgmsr Authors
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "pgmsr/gf.hpp"

namespace pgmsr::testing {

template <unsigned W>
Symbols<W> random_symbols(std::mt19937_64& rng, std::size_t len)
{
    Symbols<W> v(len);
    for (auto& x : v) {
        x = FieldElement<W>::from_uint(static_cast<std::uint32_t>(rng() % (std::uint64_t{1} << W)));
    }
    return v;
}

template <unsigned W>
std::vector<Symbols<W>> random_payloads(std::mt19937_64& rng, std::size_t count, std::size_t len)
{
    std::vector<Symbols<W>> out;
    for (std::size_t i = 0; i < count; ++i) {
        out.push_back(random_symbols<W>(rng, len));
    }
    return out;
}

/// Calls f on every sorted m-subset of {0..n-1}.
template <typename F>
void for_each_subset(std::size_t n, std::size_t m, F f)
{
    std::vector<std::size_t> c(m);
    for (std::size_t i = 0; i < m; ++i) {
        c[i] = i;
    }
    for (;;) {
        f(c);
        std::size_t i = m;
        while (i > 0 && c[i - 1] == n - m + i - 1) {
            --i;
        }
        if (i == 0) {
            return;
        }
        ++c[i - 1];
        for (std::size_t j = i; j < m; ++j) {
            c[j] = c[j - 1] + 1;
        }
    }
}

} // namespace pgmsr::testing
